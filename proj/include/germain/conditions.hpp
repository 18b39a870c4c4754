#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "germain/modular.hpp"

namespace germain {

enum class Condition { NC, TwoNP, PNP, NPInv };

std::string_view to_string(Condition c);
// Accepts "nc", "2np", "pnp", "npinv" (case-insensitive); throws UsageError otherwise.
Condition parse_condition(std::string_view name);

// Evidence that a condition fails.
//  NC:    (first, second) = (r, r+1), both residues.
//  TwoNP: base 2, exponent 2N, value = 2^(2N) mod theta = 1.
//  PNP:   base 2N, exponent 2N, value = (2N)^(2N) mod theta = 1 (2N = -1/p, so p is a p-th power).
//  NPInv: (first, second) = (r, r'), both residues with r - r' = -2N mod theta.
struct Witness {
	u64 first = 0;
	u64 second = 0;
	u64 base = 0;
	u64 exponent = 0;
	u64 value = 0;
};

struct ConditionReport {
	Auxiliary aux;
	Condition condition;
	bool holds;
	bool p_prime;
	std::optional<Witness> witness;

	// Recomputes the witness from scratch against the residue set.
	bool verify() const;
};

ConditionReport check_nc(const Auxiliary& aux);
ConditionReport check_2np(const Auxiliary& aux);
ConditionReport check_pnp(const Auxiliary& aux);
ConditionReport check_np_inv(const Auxiliary& aux);
ConditionReport check(const Auxiliary& aux, Condition c);

// Smallest x in [1, theta-2] with x and x+1 both p-th power residues.
std::optional<u64> smallest_consecutive_residue(const Auxiliary& aux);

struct ExceptionalExponent {
	u64 p;
	u64 theta;
	friend bool operator==(const ExceptionalExponent&, const ExceptionalExponent&) = default;
};

// Phi_d(2), the d-th cyclotomic polynomial at 2.
mpz_class cyclotomic_at_two(u64 d);

// Every p in [2, p_max] such that a prime factor of 2^(2N) - 1 equals 2Np + 1.
// Throws UsageError when N exceeds max_n, IncompleteFactorization from factorize.
std::vector<ExceptionalExponent> exceptional_p_for_N(u64 n, u64 p_max, u64 max_n = 64);

// True iff N = 2^a p^b with gcd(a+1, p) = gcd(b+1, p) = 1.
bool pnp_shortcut_applicable(u64 n, u64 p);
// Same shape without the b+1 coprimality requirement.
bool pnp_shortcut_applicable_weak(u64 n, u64 p);

} // namespace germain
