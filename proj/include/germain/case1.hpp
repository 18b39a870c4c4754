#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "germain/conditions.hpp"
#include "germain/modular.hpp"

namespace germain {

inline constexpr std::string_view case1_conclusion =
	"any Fermat solution for exponent p has one of x, y, z divisible by p^2";

struct Case1Certificate {
	u64 p;
	Auxiliary aux;
	ConditionReport nc;
	ConditionReport pnp;
	std::string_view conclusion = case1_conclusion;

	bool verify() const;
};

// Smallest prime theta = 2Np+1 with N <= n_max passing N-C and p-N-p.
// DomainError unless p is an odd prime; NoCertificate when the range is exhausted.
Case1Certificate certify_case1(u64 p, u64 n_max);

enum class CellStatus { Valid, ThetaComposite, Fails2NP, FailsNC, FailsPNP };

std::string_view to_string(CellStatus s);

struct TableCell {
	u64 n;
	u64 p;
	u64 theta;
	CellStatus status;
	std::optional<Witness> witness;
};

// Conditions are evaluated in the order 2-N-p, N-C, p-N-p; the first failure names the status.
TableCell classify_cell(u64 n, u64 p);

// One cell per (N <= n_max, odd prime p < p_max), ordered by N then p.
std::vector<TableCell> germain_table(u64 n_max = 10, u64 p_max = 100, unsigned threads = 1);

// Renders `N,p,theta,status,witness` rows with LF endings.
std::string table_csv(const std::vector<TableCell>& cells);
std::string witness_text(const TableCell& cell);

struct SweepEntry {
	u64 p;
	std::optional<u64> theta; // nullopt marks a search gap
	u64 n = 0;
};

struct SweepReport {
	u64 p_max;
	u64 n_max;
	std::vector<SweepEntry> entries; // ascending p
	std::size_t certified = 0;
	std::size_t gaps = 0;
};

// Every odd prime p <= p_max.
SweepReport case1_sweep(u64 p_max, u64 n_max, unsigned threads = 1);

struct ResidueListing {
	Auxiliary aux;
	std::vector<u64> residues;
	std::string text; // "1 5 8 12"
};

ResidueListing residue_table_dump(const Auxiliary& aux);

} // namespace germain
