#pragma once

// Consecutive residue pairs, their six-element orbits, auxiliary scans,
// Wendt's resultant and a brute-force Fermat-mod-theta oracle.

#include <array>
#include <optional>
#include <set>
#include <vector>

#include <gmpxx.h>

#include "germain/conditions.hpp"
#include "germain/modular.hpp"

namespace germain {

// x and x+1 both nonzero p-th power residues mod theta.
struct ConsecutivePair {
	Auxiliary aux;
	u64 lower;

	u64 upper() const { return lower + 1; }
	bool valid() const;
};

std::vector<ConsecutivePair> find_consecutive_pairs(const Auxiliary& aux);

// The six maps x -> x, 1/x, -x-1, -(x+1)/x, -1/(x+1), -x/(x+1) mod theta,
// in that order. Together they form a group of order 6 (the cross-ratio group).
std::array<u64, 6> orbit_images(u64 x, u64 theta);

struct PairOrbit {
	ConsecutivePair seed;
	std::array<u64, 6> images;
	std::array<bool, 6> degenerate; // image is 0 or theta-1 and names no pair
	std::vector<u64> members;       // distinct lower elements, ascending
	std::size_t distinct_residues;  // |union of {y, y+1} over members|
	bool pairwise_disjoint;
};

// Throws std::logic_error if some image fails to be a consecutive residue pair.
PairOrbit pair_orbit(const ConsecutivePair& pair);

// Largest set of pairwise-disjoint pairs inside any single seed's orbit; 0 when N-C holds.
std::size_t disjoint_pair_count(const Auxiliary& aux);

// Prime theta = 2Np+1 <= theta_max (ascending) satisfying every required condition.
std::vector<Auxiliary> scan_auxiliaries(u64 p, u64 theta_max, const std::set<Condition>& required,
										unsigned threads = 1);

struct WendtResult {
	u64 m;
	mpz_class value;
};

// Res(x^m - 1, (x+1)^m - 1) by exact Sylvester determinant. UsageError for odd, zero
// or over-cap m.
WendtResult wendt(u64 m, u64 cap = 60);

// Exact determinant by fraction-free (Bareiss) elimination.
mpz_class bareiss_determinant(std::vector<std::vector<mpz_class>> matrix);

struct FermatTriple {
	u64 x, y, z;
};

// Nonzero x, y, z with x^p + y^p = z^p mod theta, or none. Searches over the
// residue set (O((2N)^2)). UsageError above theta_cap.
std::optional<FermatTriple> fermat_mod_scan(const Auxiliary& aux, u64 theta_cap = 10'000);

} // namespace germain
