#include "germain/conditions.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <numeric>
#include <set>

#include "germain/errors.hpp"

namespace germain {

std::string_view to_string(Condition c)
{
	switch (c)
	{
	case Condition::NC: return "nc";
	case Condition::TwoNP: return "2np";
	case Condition::PNP: return "pnp";
	case Condition::NPInv: return "npinv";
	}
	return "?";
}

Condition parse_condition(std::string_view name)
{
	std::string lower(name);
	std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char ch) { return char(std::tolower(ch)); });
	lower.erase(std::remove(lower.begin(), lower.end(), '-'), lower.end());
	if (lower == "nc") return Condition::NC;
	if (lower == "2np") return Condition::TwoNP;
	if (lower == "pnp") return Condition::PNP;
	if (lower == "npinv") return Condition::NPInv;
	throw UsageError("unknown condition '" + std::string(name) + "' (expected nc, 2np, pnp, npinv)");
}

std::optional<u64> smallest_consecutive_residue(const Auxiliary& aux)
{
	const u64 theta = aux.theta();
	// Residues have density 1/p, so when the set is large a failing pair shows up
	// after roughly p^2 probes. Probe a bounded prefix first, then enumerate.
	const u64 probe_limit = std::min<u64>(theta - 2, 64 * aux.p() * aux.p());
	if (aux.two_n() > probe_limit)
	{
		bool prev = aux.is_residue(1);
		for (u64 x = 1; x < probe_limit; ++x)
		{
			const bool next = aux.is_residue(x + 1);
			if (prev && next) return x;
			prev = next;
		}
	}

	const ResidueSet set(aux);
	const auto& r = set.residues();
	for (std::size_t i = 0; i + 1 < r.size(); ++i)
		if (r[i + 1] == r[i] + 1) return r[i];
	return std::nullopt;
}

ConditionReport check_nc(const Auxiliary& aux)
{
	ConditionReport report{aux, Condition::NC, true, aux.p_is_prime(), std::nullopt};
	if (const auto x = smallest_consecutive_residue(aux))
	{
		report.holds = false;
		report.witness = Witness{.first = *x, .second = *x + 1};
	}
	return report;
}

namespace {

ConditionReport power_check(const Auxiliary& aux, Condition c, u64 base)
{
	const u64 value = mod_pow(base, aux.two_n(), aux.theta());
	ConditionReport report{aux, c, value != 1, aux.p_is_prime(), std::nullopt};
	if (!report.holds) report.witness = Witness{.base = base, .exponent = aux.two_n(), .value = value};
	return report;
}

} // namespace

ConditionReport check_2np(const Auxiliary& aux) { return power_check(aux, Condition::TwoNP, 2); }

// p is a p-th power iff 2N = -p^-1 is, and -1 always is (2N even).
ConditionReport check_pnp(const Auxiliary& aux) { return power_check(aux, Condition::PNP, aux.two_n() % aux.theta()); }

ConditionReport check_np_inv(const Auxiliary& aux)
{
	ConditionReport report{aux, Condition::NPInv, true, aux.p_is_prime(), std::nullopt};
	const ResidueSet set(aux);
	const u64 theta = aux.theta();
	for (u64 r : set.residues())
	{
		const u64 partner = (r + aux.two_n()) % theta;
		if (set.contains(partner))
		{
			report.holds = false;
			report.witness = Witness{.first = r, .second = partner};
			break;
		}
	}
	return report;
}

ConditionReport check(const Auxiliary& aux, Condition c)
{
	switch (c)
	{
	case Condition::NC: return check_nc(aux);
	case Condition::TwoNP: return check_2np(aux);
	case Condition::PNP: return check_pnp(aux);
	case Condition::NPInv: return check_np_inv(aux);
	}
	throw UsageError("check: unknown condition");
}

bool ConditionReport::verify() const
{
	const u64 theta = aux.theta();
	switch (condition)
	{
	case Condition::NC:
		if (holds) return !smallest_consecutive_residue(aux).has_value();
		return witness && witness->second == witness->first + 1 && witness->first >= 1
			   && witness->second <= theta - 1 && aux.is_residue(witness->first) && aux.is_residue(witness->second);
	case Condition::TwoNP:
	case Condition::PNP:
	{
		const u64 base = condition == Condition::TwoNP ? 2 : aux.two_n() % theta;
		const bool fails = mod_pow(base, aux.two_n(), theta) == 1;
		if (holds) return !fails;
		return fails && witness && witness->base == base && witness->exponent == aux.two_n() && witness->value == 1;
	}
	case Condition::NPInv:
		if (holds) return check_np_inv(aux).holds;
		return witness && aux.is_residue(witness->first) && aux.is_residue(witness->second)
			   && (witness->first + aux.two_n()) % theta == witness->second;
	}
	return false;
}

mpz_class cyclotomic_at_two(u64 d)
{
	if (d == 0) throw UsageError("cyclotomic_at_two: d must be >= 1");
	// Phi_d(2) = prod_{e | d} (2^e - 1)^mu(d/e)
	auto mobius = [](u64 k) {
		int mu = 1;
		for (u64 q = 2; q * q <= k; ++q)
		{
			if (k % q != 0) continue;
			k /= q;
			if (k % q == 0) return 0;
			mu = -mu;
		}
		return k > 1 ? -mu : mu;
	};
	mpz_class num = 1, den = 1;
	for (u64 e = 1; e <= d; ++e)
	{
		if (d % e != 0) continue;
		const int mu = mobius(d / e);
		if (mu == 0) continue;
		mpz_class term = 1;
		term <<= e;
		term -= 1;
		(mu > 0 ? num : den) *= term;
	}
	return num / den;
}

std::vector<ExceptionalExponent> exceptional_p_for_N(u64 n, u64 p_max, u64 max_n)
{
	if (n < 1) throw UsageError("exceptional_p_for_N: N must be >= 1");
	if (n > max_n)
		throw UsageError("exceptional_p_for_N: N = " + std::to_string(n) + " exceeds factorization cap "
						 + std::to_string(max_n));

	// 2^(2N) - 1 splits into cyclotomic values Phi_d(2), d | 2N; factor each piece
	std::set<mpz_class> primes;
	for (u64 d = 1; d <= 2 * n; ++d)
	{
		if ((2 * n) % d != 0) continue;
		for (const auto& [q, e] : factorize(cyclotomic_at_two(d)).factors) primes.insert(q);
	}

	std::vector<ExceptionalExponent> result;
	const mpz_class two_n = 2 * n;
	for (const auto& q : primes)
	{
		const mpz_class rest = q - 1;
		if (!mpz_divisible_p(rest.get_mpz_t(), two_n.get_mpz_t())) continue;
		const mpz_class p = rest / two_n;
		if (p < 2 || p > p_max) continue;
		result.push_back({p.get_ui(), q.get_ui()});
	}
	std::sort(result.begin(), result.end(), [](const auto& a, const auto& b) { return a.p < b.p; });
	return result;
}

namespace {

bool shortcut(u64 n, u64 p, bool require_b)
{
	if (n < 1 || p < 2) return false;
	u64 pb = 1;
	for (u64 b = 0; n % pb == 0; ++b)
	{
		const u64 rest = n / pb;
		if (std::has_single_bit(rest))
		{
			const u64 a = std::countr_zero(rest);
			if (std::gcd(a + 1, p) == 1 && (!require_b || std::gcd(b + 1, p) == 1)) return true;
		}
		if (pb > n / p) break;
		pb *= p;
	}
	return false;
}

} // namespace

bool pnp_shortcut_applicable(u64 n, u64 p) { return shortcut(n, p, true); }
bool pnp_shortcut_applicable_weak(u64 n, u64 p) { return shortcut(n, p, false); }

} // namespace germain
