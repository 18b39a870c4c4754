#include "germain/case1.hpp"

#include <fmt/format.h>

#include "germain/errors.hpp"
#include "germain/parallel.hpp"

namespace germain {

bool Case1Certificate::verify() const
{
	return p >= 3 && is_prime(p) && aux.p() == p && nc.aux == aux && pnp.aux == aux && nc.condition == Condition::NC && nc.holds && nc.verify()
		   && pnp.condition == Condition::PNP && pnp.holds && pnp.verify();
}

namespace {

std::optional<Case1Certificate> search(u64 p, u64 n_max)
{
	for (u64 n = 1; n <= n_max; ++n)
	{
		if (!is_prime(2 * n * p + 1)) continue;
		const Auxiliary aux(p, n);
		auto pnp = check_pnp(aux);
		if (!pnp.holds) continue;
		// 2-N-p failing implies N-C fails; cheap rejection
		if (!check_2np(aux).holds) continue;
		auto nc = check_nc(aux);
		if (!nc.holds) continue;
		return Case1Certificate{p, aux, std::move(nc), std::move(pnp)};
	}
	return std::nullopt;
}

} // namespace

Case1Certificate certify_case1(u64 p, u64 n_max)
{
	if (p < 3 || !is_prime(p)) throw DomainError("certify_case1: p = " + std::to_string(p) + " is not an odd prime");
	if (auto cert = search(p, n_max)) return *cert;
	throw NoCertificate("no certificate in range: no auxiliary theta = 2Np+1 with N <= " + std::to_string(n_max)
						+ " for p = " + std::to_string(p));
}

std::string_view to_string(CellStatus s)
{
	switch (s)
	{
	case CellStatus::Valid: return "valid";
	case CellStatus::ThetaComposite: return "theta_composite";
	case CellStatus::Fails2NP: return "fails_2np";
	case CellStatus::FailsNC: return "fails_nc";
	case CellStatus::FailsPNP: return "fails_pnp";
	}
	return "?";
}

TableCell classify_cell(u64 n, u64 p)
{
	const u64 theta = 2 * n * p + 1;
	TableCell cell{n, p, theta, CellStatus::Valid, std::nullopt};
	if (!is_prime(theta))
	{
		cell.status = CellStatus::ThetaComposite;
		return cell;
	}
	const Auxiliary aux(p, n);
	const std::pair<Condition, CellStatus> steps[] = {
		{Condition::TwoNP, CellStatus::Fails2NP},
		{Condition::NC, CellStatus::FailsNC},
		{Condition::PNP, CellStatus::FailsPNP},
	};
	for (const auto& [condition, status] : steps)
	{
		const auto report = check(aux, condition);
		if (!report.holds)
		{
			cell.status = status;
			cell.witness = report.witness;
			break;
		}
	}
	return cell;
}

std::vector<TableCell> germain_table(u64 n_max, u64 p_max, unsigned threads)
{
	std::vector<std::pair<u64, u64>> grid;
	for (u64 n = 1; n <= n_max; ++n)
		for (u64 p = 3; p < p_max; p += 2)
			if (is_prime(p)) grid.emplace_back(n, p);

	auto cells = ordered_parallel_map(grid.size(), threads, [&](std::size_t i) -> std::optional<TableCell> {
		return classify_cell(grid[i].first, grid[i].second);
	});
	std::vector<TableCell> result;
	result.reserve(cells.size());
	for (auto& c : cells) result.push_back(std::move(*c));
	return result;
}

std::string witness_text(const TableCell& cell)
{
	if (!cell.witness) return "";
	const Witness& w = *cell.witness;
	switch (cell.status)
	{
	case CellStatus::FailsNC: return fmt::format("{}:{}", w.first, w.second);
	case CellStatus::Fails2NP:
	case CellStatus::FailsPNP: return fmt::format("{}^{}={}", w.base, w.exponent, w.value);
	default: return "";
	}
}

std::string table_csv(const std::vector<TableCell>& cells)
{
	std::string out = "N,p,theta,status,witness\n";
	for (const auto& c : cells)
		out += fmt::format("{},{},{},{},{}\n", c.n, c.p, c.theta, to_string(c.status), witness_text(c));
	return out;
}

SweepReport case1_sweep(u64 p_max, u64 n_max, unsigned threads)
{
	std::vector<u64> primes;
	for (u64 p = 3; p <= p_max; p += 2)
		if (is_prime(p)) primes.push_back(p);

	SweepReport report{p_max, n_max, {}, 0, 0};
	report.entries = ordered_parallel_map(primes.size(), threads, [&](std::size_t i) {
		const u64 p = primes[i];
		SweepEntry entry{p, std::nullopt, 0};
		if (const auto cert = search(p, n_max))
		{
			entry.theta = cert->aux.theta();
			entry.n = cert->aux.n();
		}
		return entry;
	});
	for (const auto& e : report.entries) (e.theta ? report.certified : report.gaps)++;
	return report;
}

ResidueListing residue_table_dump(const Auxiliary& aux)
{
	const ResidueSet set(aux);
	return {aux, set.residues(), fmt::format("{}", fmt::join(set.residues(), " "))};
}

} // namespace germain
