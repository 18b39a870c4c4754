#include "germain/size_bounds.hpp"

#include <algorithm>
#include <cctype>
#include <string>

#include "germain/errors.hpp"

namespace germain {

std::string_view to_string(BoundVariant v)
{
	return v == BoundVariant::Germain ? "germain" : "legendre_subset";
}

BoundVariant parse_bound_variant(std::string_view name)
{
	if (name == "germain") return BoundVariant::Germain;
	if (name == "legendre_subset" || name == "legendre-subset") return BoundVariant::LegendreSubset;
	throw UsageError("unknown bound variant '" + std::string(name) + "' (expected germain, legendre_subset)");
}

std::size_t decimal_digits(const mpz_class& n)
{
	if (n == 0) return 1;
	const mpz_class a = abs(n);
	// mpz_sizeinbase may overshoot by one for base 10
	return a.get_str(10).size();
}

namespace {

void require_odd_prime(u64 p)
{
	if (p < 3 || !is_prime(p)) throw DomainError("p = " + std::to_string(p) + " is not an odd prime");
}

} // namespace

SizeBound minimal_solution_bound(u64 p, const std::vector<u64>& thetas, BoundVariant variant)
{
	require_odd_prime(p);
	SizeBound result{p, {}, variant, 0, 0, {}};

	mpz_pow_ui(result.bound.get_mpz_t(), mpz_class(p).get_mpz_t(), 2 * p - 1);
	for (u64 theta : thetas)
	{
		const Auxiliary aux = Auxiliary::from_theta(p, theta);
		if (!check_nc(aux).holds)
			throw DomainError("auxiliary " + std::to_string(theta) + " fails Condition N-C for p = " + std::to_string(p));
		if (!check_pnp(aux).holds)
			throw DomainError("auxiliary " + std::to_string(theta) + " fails Condition p-N-p for p = " + std::to_string(p));

		mpz_class factor;
		mpz_pow_ui(factor.get_mpz_t(), mpz_class(theta).get_mpz_t(), p);
		result.bound *= factor;
		result.np_inv_flags.push_back(check_np_inv(aux).holds);
		result.auxiliaries.push_back(aux);
	}
	result.digits = decimal_digits(result.bound);
	return result;
}

NpInvAudit np_inv_audit(u64 p, const std::vector<u64>& thetas)
{
	require_odd_prime(p);
	NpInvAudit audit{p, {}, {}};
	for (u64 theta : thetas)
	{
		auto report = check_np_inv(Auxiliary::from_theta(p, theta));
		if (report.holds) audit.supporting.push_back(theta);
		audit.reports.push_back(std::move(report));
	}
	return audit;
}

} // namespace germain
