#pragma once

#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "germain/conditions.hpp"
#include "germain/modular.hpp"

namespace germain {

enum class BoundVariant { Germain, LegendreSubset };

std::string_view to_string(BoundVariant v);
BoundVariant parse_bound_variant(std::string_view name);

inline constexpr std::string_view size_bound_caveat =
	"unproven: the step showing each auxiliary divides one of x+y, z-y, z-x relies on Condition N-p^-1, "
	"which the original argument omits; the bound is a reconstruction, not a theorem";

struct SizeBound {
	u64 p;
	std::vector<Auxiliary> auxiliaries;
	BoundVariant variant;
	mpz_class bound;  // p^(2p-1) * prod theta_i^p
	std::size_t digits;
	std::vector<bool> np_inv_flags; // true when N-p^-1 holds for that auxiliary
	std::string_view caveat = size_bound_caveat;
};

// DomainError for non-odd-prime p or an auxiliary failing N-C or p-N-p (named in the message).
SizeBound minimal_solution_bound(u64 p, const std::vector<u64>& thetas, BoundVariant variant);

std::size_t decimal_digits(const mpz_class& n);

struct NpInvAudit {
	u64 p;
	std::vector<ConditionReport> reports; // one N-p^-1 report per auxiliary, input order
	std::vector<u64> supporting;          // thetas for which N-p^-1 holds
};

NpInvAudit np_inv_audit(u64 p, const std::vector<u64>& thetas);

} // namespace germain
