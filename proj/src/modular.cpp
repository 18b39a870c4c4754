#include "germain/modular.hpp"

#include <algorithm>
#include <numeric>

#include "germain/errors.hpp"

namespace germain {

using u128 = unsigned __int128;

u64 mul_mod(u64 a, u64 b, u64 m)
{
	return u64((u128(a) * b) % m);
}

u64 mod_pow(u64 base, u64 exp, u64 modulus)
{
	if (modulus < 2) throw UsageError("mod_pow: modulus must be >= 2");
	u64 result = 1, b = base % modulus;
	while (exp != 0)
	{
		if (exp & 1) result = mul_mod(result, b, modulus);
		b = mul_mod(b, b, modulus);
		exp >>= 1;
	}
	return result;
}

u64 inv_mod(u64 a, u64 m)
{
	// extended Euclid on signed 128-bit to dodge overflow near 2^64
	__int128 t = 0, new_t = 1, r = m, new_r = a % m;
	while (new_r != 0)
	{
		const __int128 q = r / new_r;
		t -= q * new_t; std::swap(t, new_t);
		r -= q * new_r; std::swap(r, new_r);
	}
	if (r != 1) throw DomainError("inv_mod: value not invertible");
	if (t < 0) t += m;
	return u64(t);
}

namespace {

bool miller_rabin_round(u64 n, u64 a, u64 d, unsigned s)
{
	u64 x = mod_pow(a, d, n);
	if (x == 1 || x == n - 1) return true;
	for (unsigned i = 1; i < s; ++i)
	{
		x = mul_mod(x, x, n);
		if (x == n - 1) return true;
	}
	return false;
}

u64 gcd_u64(u64 a, u64 b) { return std::gcd(a, b); }

// Brent's cycle variant of rho; returns a nontrivial factor of composite odd n.
u64 rho_u64(u64 n)
{
	for (u64 c = 1;; ++c)
	{
		u64 y = 2, x = 2, g = 1, q = 1, ys = 2;
		const u64 m = 128;
		u64 r = 1;
		auto f = [&](u64 v) { return (mul_mod(v, v, n) + c) % n; };
		do
		{
			x = y;
			for (u64 i = 0; i < r; ++i) y = f(y);
			u64 k = 0;
			do
			{
				ys = y;
				for (u64 i = 0; i < std::min(m, r - k); ++i)
				{
					y = f(y);
					q = mul_mod(q, x > y ? x - y : y - x, n);
				}
				g = gcd_u64(q, n);
				k += m;
			} while (k < r && g == 1);
			r *= 2;
		} while (g == 1);

		if (g == n)
		{
			do
			{
				ys = f(ys);
				g = gcd_u64(x > ys ? x - ys : ys - x, n);
			} while (g == 1);
		}
		if (g != n) return g;
	}
}

void factor_u64_rec(u64 n, std::vector<u64>& out)
{
	if (n == 1) return;
	if (is_prime(n)) { out.push_back(n); return; }
	const u64 d = rho_u64(n);
	factor_u64_rec(d, out);
	factor_u64_rec(n / d, out);
}

} // namespace

bool is_prime(u64 n)
{
	if (n < 2) return false;
	static constexpr u64 bases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
	for (u64 p : bases)
	{
		if (n == p) return true;
		if (n % p == 0) return false;
	}
	u64 d = n - 1;
	unsigned s = 0;
	while ((d & 1) == 0) { d >>= 1; ++s; }
	for (u64 a : bases)
		if (!miller_rabin_round(n, a, d, s)) return false;
	return true;
}

std::vector<std::pair<u64, unsigned>> factor_u64(u64 n)
{
	std::vector<u64> primes;
	if (n == 0) throw UsageError("factor_u64: zero has no factorization");
	for (u64 p = 2; p < 1024 && p * p <= n; p += (p == 2 ? 1 : 2))
		while (n % p == 0) { primes.push_back(p); n /= p; }
	factor_u64_rec(n, primes);
	std::sort(primes.begin(), primes.end());

	std::vector<std::pair<u64, unsigned>> result;
	for (u64 p : primes)
	{
		if (!result.empty() && result.back().first == p) ++result.back().second;
		else result.emplace_back(p, 1);
	}
	return result;
}

u64 primitive_root(u64 theta)
{
	if (!is_prime(theta)) throw DomainError("primitive_root: " + std::to_string(theta) + " is not prime");
	if (theta == 2) return 1;
	const u64 order = theta - 1;
	const auto factors = factor_u64(order);
	for (u64 g = 2;; ++g)
	{
		bool generator = true;
		for (const auto& [q, e] : factors)
		{
			if (mod_pow(g, order / q, theta) == 1) { generator = false; break; }
		}
		if (generator) return g;
	}
}

// --- Auxiliary / ResidueSet ---

Auxiliary::Auxiliary(u64 p, u64 n) : _p(p), _n(n), _theta(0)
{
	if (p < 2) throw DomainError("auxiliary: exponent p must be >= 2");
	if (n < 1) throw DomainError("auxiliary: N must be >= 1");
	const u128 theta = u128(2) * n * p + 1;
	if (theta >> 64) throw DomainError("auxiliary: theta exceeds 64 bits");
	_theta = u64(theta);
	if (!is_prime(_theta))
		throw DomainError("auxiliary: theta = " + std::to_string(_theta) + " is not prime");
}

Auxiliary Auxiliary::from_theta(u64 p, u64 theta)
{
	if (p < 2 || theta < 3 || (theta - 1) % (2 * p) != 0)
		throw DomainError("auxiliary: theta = " + std::to_string(theta) + " is not of the form 2Np+1 for p = "
						  + std::to_string(p));
	return Auxiliary(p, (theta - 1) / (2 * p));
}

bool Auxiliary::is_residue(u64 r) const
{
	r %= _theta;
	return r != 0 && mod_pow(r, two_n(), _theta) == 1;
}

ResidueSet::ResidueSet(const Auxiliary& aux) : _aux(aux)
{
	const u64 theta = aux.theta();
	// g^p generates the index-p subgroup, which has order 2N
	const u64 h = mod_pow(primitive_root(theta), aux.p(), theta);
	_residues.reserve(aux.two_n());
	u64 x = 1;
	for (u64 i = 0; i < aux.two_n(); ++i)
	{
		_residues.push_back(x);
		x = mul_mod(x, h, theta);
	}
	std::sort(_residues.begin(), _residues.end());
}

bool ResidueSet::contains(u64 r) const
{
	return std::binary_search(_residues.begin(), _residues.end(), r);
}

ResidueSet pth_power_residues(const Auxiliary& aux) { return ResidueSet(aux); }

// --- big-integer factorization ---

bool is_probable_prime(const mpz_class& n)
{
	if (n < 2) return false;
	if (mpz_fits_ulong_p(n.get_mpz_t())) return is_prime(u64(n.get_ui()));
	return mpz_probab_prime_p(n.get_mpz_t(), 30) != 0;
}

mpz_class Factorization::product() const
{
	mpz_class result = 1, pw;
	for (const auto& [prime, mult] : factors)
	{
		mpz_pow_ui(pw.get_mpz_t(), prime.get_mpz_t(), mult);
		result *= pw;
	}
	return result;
}

namespace {

// Brent rho over GMP integers, bounded by `budget` iterations in total.
bool rho_mpz(const mpz_class& n, unsigned long& budget, gmp_randclass& rng, mpz_class& factor)
{
	while (budget > 0)
	{
		const mpz_class c = 1 + rng.get_z_range(n - 1);
		mpz_class y = rng.get_z_range(n), x, ys, q = 1, g = 1, diff;
		unsigned long r = 1;
		const unsigned long m = 128;
		auto step = [&](mpz_class& v) { v = (v * v + c) % n; };
		do
		{
			x = y;
			for (unsigned long i = 0; i < r; ++i) step(y);
			unsigned long k = 0;
			do
			{
				ys = y;
				const unsigned long run = std::min(m, r - k);
				for (unsigned long i = 0; i < run; ++i)
				{
					step(y);
					diff = abs(x - y);
					q = (q * diff) % n;
				}
				budget = budget > run ? budget - run : 0;
				g = gcd(q, n);
				k += m;
			} while (k < r && g == 1 && budget > 0);
			r *= 2;
		} while (g == 1 && budget > 0);

		if (g == n)
		{
			do
			{
				step(ys);
				g = gcd(abs(x - ys), n);
			} while (g == 1);
		}
		if (g != 1 && g != n) { factor = g; return true; }
	}
	return false;
}

void split(const mpz_class& n, const FactorBudget& budget, gmp_randclass& rng, std::vector<mpz_class>& out)
{
	if (n == 1) return;
	if (is_probable_prime(n)) { out.push_back(n); return; }
	if (mpz_fits_ulong_p(n.get_mpz_t()))
	{
		for (const auto& [q, e] : factor_u64(n.get_ui()))
			for (unsigned i = 0; i < e; ++i) out.emplace_back(static_cast<unsigned long>(q));
		return;
	}
	// perfect powers defeat rho
	for (unsigned long k = 2; k < mpz_sizeinbase(n.get_mpz_t(), 2); ++k)
	{
		mpz_class root;
		if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), k))
		{
			for (unsigned long i = 0; i < k; ++i) split(root, budget, rng, out);
			return;
		}
	}
	unsigned long iterations = budget.rho_iterations;
	mpz_class d;
	if (!rho_mpz(n, iterations, rng, d)) throw IncompleteFactorization(n.get_str());
	split(d, budget, rng, out);
	split(n / d, budget, rng, out);
}

} // namespace

Factorization factorize(const mpz_class& n, const FactorBudget& budget)
{
	if (n < 1) throw UsageError("factorize: input must be >= 1");
	Factorization result{n, {}};
	std::vector<mpz_class> primes;
	mpz_class rest = n;

	for (unsigned long p = 2; p <= budget.trial_limit; p += (p == 2 ? 1 : 2))
	{
		if (mpz_class(p) * p > rest) break;
		// word-sized cofactors go to the 64-bit path; large primes need no more trial division
		if (p > 1024 && (mpz_fits_ulong_p(rest.get_mpz_t()) || (p % 8192 == 1025 && is_probable_prime(rest)))) break;
		while (mpz_divisible_ui_p(rest.get_mpz_t(), p))
		{
			primes.emplace_back(p);
			rest /= p;
		}
	}

	gmp_randclass rng(gmp_randinit_mt);
	rng.seed(budget.seed);
	split(rest, budget, rng, primes);

	std::sort(primes.begin(), primes.end());
	for (const auto& q : primes)
	{
		if (!result.factors.empty() && result.factors.back().first == q) ++result.factors.back().second;
		else result.factors.emplace_back(q, 1);
	}
	return result;
}

} // namespace germain
