#pragma once

// Checkable residue facts and desk-scale searches behind the remaining
// manuscript claims: the Barlow-Abel cofactor, biquadratic residues,
// sums of two squares, and arithmetic progressions of powers.

#include <optional>
#include <vector>

#include <gmpxx.h>

#include "germain/modular.hpp"

namespace germain {

using i64 = std::int64_t;

// phi(x, y) = x^(p-1) - x^(p-2) y + ... + y^(p-1), so (x + y) phi = x^p + y^p.
struct PhiEvaluation {
	i64 x, y;
	u64 p;
	mpz_class value;
};

PhiEvaluation phi(i64 x, i64 y, u64 p);

// p-adic valuation; n must be nonzero.
unsigned long valuation(const mpz_class& n, u64 p);

struct PhiGcdReport {
	i64 x, y;
	u64 p;
	mpz_class sum;
	mpz_class phi;
	mpz_class gcd;          // gcd(x + y, phi)
	bool gcd_is_power_of_p;
	bool p_divides_sum;
	std::optional<unsigned long> phi_valuation; // set when p | x+y and p does not divide x
	bool holds;             // gcd is a power of p, and the valuation (when set) is exactly 1
};

// DomainError when gcd(x, y) != 1 or p is not an odd prime.
PhiGcdReport phi_gcd_check(i64 x, i64 y, u64 p);

// a = k^4 mod q for some k. q odd prime, a coprime to q (DomainError otherwise).
bool biquadratic_residue(u64 q, i64 a);

struct SumOfSquaresReport {
	u64 a, b;
	mpz_class value;       // a^2 + b^2
	Factorization factorization;
	std::vector<mpz_class> offending; // prime factors = 3 mod 4
	bool holds;            // offending is empty
};

SumOfSquaresReport sum_two_squares_divisor_check(u64 a, u64 b);

// 2c^2 = a^2 + b^2 with a <= b, gcd(a, b) = 1.
struct NearPythTriple {
	u64 a, b, c;
	friend auto operator<=>(const NearPythTriple&, const NearPythTriple&) = default;
};

// Primitive triples with c <= c_max, ordered by (c, a).
std::vector<NearPythTriple> near_pyth_enumerate(u64 c_max);

struct NearFermatSolution {
	u64 x, y, z;
	friend auto operator<=>(const NearFermatSolution&, const NearFermatSolution&) = default;
};

// All 2z^m = x^m + y^m with 1 <= x < y <= bound and z <= bound.
std::vector<NearFermatSolution> near_fermat_search(u64 m, u64 bound, unsigned threads = 1);

// Primes theta = 6a+1 <= bound with no consecutive nonzero cubic residues.
std::vector<u64> cubic_finiteness_scan(u64 bound, unsigned threads = 1);

} // namespace germain
