#include "germain/claims.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <tuple>
#include <stdexcept>

#include "germain/errors.hpp"
#include "germain/grand_plan.hpp"
#include "germain/parallel.hpp"

namespace germain {

namespace {

void require_odd_prime(u64 p)
{
	if (p < 3 || !is_prime(p)) throw DomainError("p = " + std::to_string(p) + " is not an odd prime");
}

mpz_class big(i64 v) { return mpz_class(std::to_string(v)); }

mpz_class power(const mpz_class& base, u64 e)
{
	mpz_class r;
	mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
	return r;
}

} // namespace

PhiEvaluation phi(i64 x, i64 y, u64 p)
{
	require_odd_prime(p);
	const mpz_class bx = big(x), by = big(y);
	mpz_class value = 0;
	for (u64 k = 0; k < p; ++k)
	{
		const mpz_class term = power(bx, p - 1 - k) * power(by, k);
		if (k % 2 == 0) value += term;
		else value -= term;
	}
	if ((bx + by) * value != power(bx, p) + power(by, p))
		throw std::logic_error("phi: (x+y) phi != x^p + y^p");
	return {x, y, p, value};
}

unsigned long valuation(const mpz_class& n, u64 p)
{
	if (n == 0) throw UsageError("valuation: zero has infinite valuation");
	mpz_class rest = n;
	const mpz_class bp(static_cast<unsigned long>(p));
	return mpz_remove(rest.get_mpz_t(), rest.get_mpz_t(), bp.get_mpz_t());
}

PhiGcdReport phi_gcd_check(i64 x, i64 y, u64 p)
{
	require_odd_prime(p);
	const mpz_class bx = big(x), by = big(y);
	if (gcd(bx, by) != 1) throw DomainError("phi_gcd_check: gcd(x, y) must be 1");

	PhiGcdReport r{x, y, p, bx + by, phi(x, y, p).value, 0, false, false, std::nullopt, false};
	r.gcd = gcd(r.sum, r.phi);

	mpz_class stripped = r.gcd;
	const mpz_class bp(static_cast<unsigned long>(p));
	mpz_remove(stripped.get_mpz_t(), stripped.get_mpz_t(), bp.get_mpz_t());
	r.gcd_is_power_of_p = stripped == 1;

	r.p_divides_sum = mpz_divisible_ui_p(r.sum.get_mpz_t(), p) != 0;
	if (r.p_divides_sum && !mpz_divisible_ui_p(bx.get_mpz_t(), p)) r.phi_valuation = valuation(r.phi, p);

	r.holds = r.gcd_is_power_of_p && (!r.phi_valuation || *r.phi_valuation == 1);
	return r;
}

bool biquadratic_residue(u64 q, i64 a)
{
	if (q < 3 || !is_prime(q)) throw DomainError("biquadratic_residue: q must be an odd prime");
	const i64 reduced = a % i64(q);
	const u64 r = u64(reduced < 0 ? reduced + i64(q) : reduced);
	if (r == 0) throw DomainError("biquadratic_residue: a must be coprime to q");

	if (q <= 1000)
	{
		for (u64 k = 1; k < q; ++k)
			if (mod_pow(k, 4, q) == r) return true;
		return false;
	}
	return mod_pow(r, (q - 1) / std::gcd<u64>(4, q - 1), q) == 1;
}

SumOfSquaresReport sum_two_squares_divisor_check(u64 a, u64 b)
{
	if (a == 0 && b == 0) throw DomainError("sum_two_squares_divisor_check: a and b are both zero");
	if (std::gcd(a, b) != 1) throw DomainError("sum_two_squares_divisor_check: gcd(a, b) must be 1");

	SumOfSquaresReport r{a, b, 0, {}, {}, true};
	const mpz_class ba(static_cast<unsigned long>(a)), bb(static_cast<unsigned long>(b));
	r.value = ba * ba + bb * bb;
	r.factorization = factorize(r.value);
	for (const auto& [q, e] : r.factorization.factors)
		if (mpz_fdiv_ui(q.get_mpz_t(), 4) == 3) r.offending.push_back(q);
	r.holds = r.offending.empty();
	return r;
}

std::vector<NearPythTriple> near_pyth_enumerate(u64 c_max)
{
	std::vector<NearPythTriple> out;
	if (c_max >= 1) out.push_back({1, 1, 1});

	// primitive u^2 + v^2 = c^2 via Euclid's parametrization, u > v > 0;
	// then a = u - v, b = u + v gives 2c^2 = a^2 + b^2
	for (u64 m = 2; m * m + 1 <= c_max; ++m)
	{
		for (u64 n = 1; n < m; ++n)
		{
			const u64 c = m * m + n * n;
			if (c > c_max) break;
			if ((m - n) % 2 == 0 || std::gcd(m, n) != 1) continue;
			const u64 leg1 = m * m - n * n, leg2 = 2 * m * n;
			const u64 u = std::max(leg1, leg2), v = std::min(leg1, leg2);
			const NearPythTriple t{u - v, u + v, c};
			if (2 * t.c * t.c != t.a * t.a + t.b * t.b)
				throw std::logic_error("near_pyth_enumerate: parametrization produced a non-solution");
			out.push_back(t);
		}
	}
	std::sort(out.begin(), out.end(), [](const auto& l, const auto& r) {
		return std::tie(l.c, l.a) < std::tie(r.c, r.a);
	});
	return out;
}

std::vector<NearFermatSolution> near_fermat_search(u64 m, u64 bound, unsigned threads)
{
	if (m < 1) throw UsageError("near_fermat_search: m must be >= 1");
	auto rows = ordered_parallel_map(std::size_t(bound), threads, [&](std::size_t i) {
		const u64 x = i + 1;
		std::vector<NearFermatSolution> found;
		const mpz_class xm = power(mpz_class(static_cast<unsigned long>(x)), m);
		mpz_class z;
		for (u64 y = x + 1; y <= bound; ++y)
		{
			const mpz_class s = xm + power(mpz_class(static_cast<unsigned long>(y)), m);
			if (mpz_odd_p(s.get_mpz_t())) continue;
			const mpz_class half = s / 2;
			if (!mpz_root(z.get_mpz_t(), half.get_mpz_t(), m)) continue;
			if (z <= bound) found.push_back({x, y, z.get_ui()});
		}
		return found;
	});
	std::vector<NearFermatSolution> out;
	for (auto& row : rows) out.insert(out.end(), row.begin(), row.end());
	return out;
}

std::vector<u64> cubic_finiteness_scan(u64 bound, unsigned threads)
{
	if (bound < 13) throw UsageError("cubic_finiteness_scan: bound must be >= 13");
	std::vector<u64> out;
	for (const auto& aux : scan_auxiliaries(3, bound, {Condition::NC}, threads)) out.push_back(aux.theta());
	return out;
}

} // namespace germain
