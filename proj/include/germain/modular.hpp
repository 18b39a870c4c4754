#pragma once

// Exact modular arithmetic on machine words, p-th power residue sets and
// integer factorization.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace germain {

using u64 = std::uint64_t;

u64 mul_mod(u64 a, u64 b, u64 m);
u64 mod_pow(u64 base, u64 exp, u64 modulus);
u64 inv_mod(u64 a, u64 m);

// Deterministic over the whole 64-bit range (Miller-Rabin with the first twelve prime bases).
bool is_prime(u64 n);

// Smallest generator of (Z/theta)^*. Throws DomainError when theta is not prime.
u64 primitive_root(u64 theta);

// Prime factors of a 64-bit value with multiplicity, ascending.
std::vector<std::pair<u64, unsigned>> factor_u64(u64 n);

// A candidate modulus theta = 2 * n * p + 1 bound to its decomposition.
// p is any natural >= 2; restricting to primes happens at the certification layer.
class Auxiliary {
public:
	// Throws DomainError unless theta is prime with theta = 2*n*p + 1, n >= 1, p >= 2.
	Auxiliary(u64 p, u64 n);
	// Derives n from theta; throws DomainError when 2p does not divide theta - 1.
	static Auxiliary from_theta(u64 p, u64 theta);

	u64 theta() const { return _theta; }
	u64 p() const { return _p; }
	u64 n() const { return _n; }
	u64 two_n() const { return 2 * _n; }
	bool p_is_prime() const { return is_prime(_p); }

	// r is a nonzero p-th power residue iff r^(2N) = 1 mod theta.
	bool is_residue(u64 r) const;

	friend bool operator==(const Auxiliary&, const Auxiliary&) = default;

private:
	u64 _p, _n, _theta;
};

// The 2N nonzero p-th power residues modulo theta: the subgroup of order 2N.
class ResidueSet {
public:
	explicit ResidueSet(const Auxiliary& aux);

	const Auxiliary& aux() const { return _aux; }
	const std::vector<u64>& residues() const { return _residues; }
	std::size_t size() const { return _residues.size(); }
	bool contains(u64 r) const;

private:
	Auxiliary _aux;
	std::vector<u64> _residues; // strictly ascending
};

ResidueSet pth_power_residues(const Auxiliary& aux);

struct Factorization {
	mpz_class input;
	std::vector<std::pair<mpz_class, unsigned>> factors; // ascending primes

	mpz_class product() const;
};

struct FactorBudget {
	unsigned long trial_limit = 1'000'000;
	unsigned long rho_iterations = 2'000'000; // per cofactor, summed over restarts
	unsigned long seed = 0x5eed;
};

// Complete prime factorization. Throws IncompleteFactorization when a composite
// cofactor survives the rho budget, and UsageError for n < 1.
Factorization factorize(const mpz_class& n, const FactorBudget& budget = {});

// Provable for n < 2^64, BPSW-strength (GMP) above.
bool is_probable_prime(const mpz_class& n);

} // namespace germain
