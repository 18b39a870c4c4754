#pragma once

#include <stdexcept>
#include <string>

namespace germain {

// Bad arguments from the caller (odd Wendt size, modulus < 2, over-budget scan).
class UsageError : public std::invalid_argument {
public:
	using std::invalid_argument::invalid_argument;
};

// Mathematical precondition violated (theta not prime, auxiliary failing a condition).
class DomainError : public std::domain_error {
public:
	using std::domain_error::domain_error;
};

// A computation ran out of its effort budget; the answer is unknown, not wrong.
class BudgetError : public std::runtime_error {
public:
	using std::runtime_error::runtime_error;
};

class IncompleteFactorization : public BudgetError {
public:
	IncompleteFactorization(const std::string& cofactor)
		: BudgetError("incomplete factorization: cofactor " + cofactor + " not split within budget"),
		  _cofactor(cofactor) {}

	const std::string& cofactor() const { return _cofactor; }

private:
	std::string _cofactor;
};

// No qualifying auxiliary within the searched range. This is a search gap, not a disproof.
class NoCertificate : public BudgetError {
public:
	using BudgetError::BudgetError;
};

} // namespace germain
