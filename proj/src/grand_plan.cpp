#include "germain/grand_plan.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "germain/errors.hpp"
#include "germain/parallel.hpp"

namespace germain {

bool ConsecutivePair::valid() const
{
	return lower >= 1 && lower + 1 <= aux.theta() - 1 && aux.is_residue(lower) && aux.is_residue(lower + 1);
}

std::vector<ConsecutivePair> find_consecutive_pairs(const Auxiliary& aux)
{
	const ResidueSet set(aux);
	const auto& r = set.residues();
	std::vector<ConsecutivePair> pairs;
	for (std::size_t i = 0; i + 1 < r.size(); ++i)
		if (r[i + 1] == r[i] + 1) pairs.push_back({aux, r[i]});
	return pairs;
}

std::array<u64, 6> orbit_images(u64 x, u64 theta)
{
	x %= theta;
	const u64 x1 = (x + 1) % theta;
	const u64 neg_x1 = (theta - x1) % theta;
	// 0 and -1 have no image under the inversions; map them to 0 (flagged degenerate by callers)
	const u64 inv_x = x == 0 ? 0 : inv_mod(x, theta);
	const u64 inv_x1 = x1 == 0 ? 0 : inv_mod(x1, theta);
	return {
		x,
		inv_x,
		neg_x1,
		mul_mod(neg_x1, inv_x, theta),
		(theta - inv_x1) % theta,
		mul_mod((theta - x) % theta, inv_x1, theta),
	};
}

PairOrbit pair_orbit(const ConsecutivePair& pair)
{
	const u64 theta = pair.aux.theta();
	PairOrbit orbit{pair, orbit_images(pair.lower, theta), {}, {}, 0, true};

	std::vector<u64> residues;
	for (std::size_t i = 0; i < 6; ++i)
	{
		const u64 y = orbit.images[i];
		orbit.degenerate[i] = y == 0 || y == theta - 1;
		if (orbit.degenerate[i]) continue;
		if (!ConsecutivePair{pair.aux, y}.valid())
			throw std::logic_error("pair_orbit: image " + std::to_string(y) + " is not a consecutive residue pair");
		orbit.members.push_back(y);
	}
	std::sort(orbit.members.begin(), orbit.members.end());
	orbit.members.erase(std::unique(orbit.members.begin(), orbit.members.end()), orbit.members.end());

	for (u64 y : orbit.members)
	{
		residues.push_back(y);
		residues.push_back(y + 1);
	}
	std::sort(residues.begin(), residues.end());
	const auto total = residues.size();
	residues.erase(std::unique(residues.begin(), residues.end()), residues.end());
	orbit.distinct_residues = residues.size();
	orbit.pairwise_disjoint = residues.size() == total;
	return orbit;
}

namespace {

// Exhaustive over subsets; orbits carry at most six pairs.
std::size_t max_disjoint(const std::vector<u64>& lowers)
{
	const std::size_t n = lowers.size();
	std::size_t best = 0;
	for (unsigned mask = 0; mask < (1u << n); ++mask)
	{
		std::vector<u64> used;
		bool ok = true;
		for (std::size_t i = 0; i < n && ok; ++i)
		{
			if (!(mask & (1u << i))) continue;
			for (u64 v : {lowers[i], lowers[i] + 1})
			{
				if (std::find(used.begin(), used.end(), v) != used.end()) { ok = false; break; }
				used.push_back(v);
			}
		}
		if (ok) best = std::max<std::size_t>(best, std::popcount(mask));
	}
	return best;
}

} // namespace

std::size_t disjoint_pair_count(const Auxiliary& aux)
{
	std::size_t best = 0;
	std::set<u64> seen;
	for (const auto& pair : find_consecutive_pairs(aux))
	{
		if (seen.contains(pair.lower)) continue;
		const PairOrbit orbit = pair_orbit(pair);
		seen.insert(orbit.members.begin(), orbit.members.end());
		best = std::max(best, max_disjoint(orbit.members));
	}
	return best;
}

std::vector<Auxiliary> scan_auxiliaries(u64 p, u64 theta_max, const std::set<Condition>& required, unsigned threads)
{
	if (p < 2) throw UsageError("scan_auxiliaries: p must be >= 2");
	if (theta_max < 2 * p + 1) throw UsageError("scan_auxiliaries: theta_max must be >= 2p+1");
	const u64 n_max = (theta_max - 1) / (2 * p);

	// cheapest checks first
	std::vector<Condition> order(required.begin(), required.end());
	auto cost = [](Condition c) {
		switch (c)
		{
		case Condition::TwoNP: return 0;
		case Condition::PNP: return 1;
		case Condition::NC: return 2;
		case Condition::NPInv: return 3;
		}
		return 4;
	};
	std::sort(order.begin(), order.end(), [&](Condition a, Condition b) { return cost(a) < cost(b); });

	const auto passes = ordered_parallel_map(std::size_t(n_max), threads, [&](std::size_t i) -> u64 {
		const u64 n = i + 1;
		const u64 theta = 2 * n * p + 1;
		if (!is_prime(theta)) return 0;
		const Auxiliary aux(p, n);
		for (Condition c : order)
			if (!check(aux, c).holds) return 0;
		return theta;
	});

	std::vector<Auxiliary> result;
	for (std::size_t i = 0; i < passes.size(); ++i)
		if (passes[i] != 0) result.emplace_back(p, i + 1);
	return result;
}

mpz_class bareiss_determinant(std::vector<std::vector<mpz_class>> a)
{
	const std::size_t n = a.size();
	if (n == 0) return 1;
	int sign = 1;
	mpz_class prev = 1;
	for (std::size_t k = 0; k + 1 < n; ++k)
	{
		if (a[k][k] == 0)
		{
			std::size_t swap_row = k + 1;
			while (swap_row < n && a[swap_row][k] == 0) ++swap_row;
			if (swap_row == n) return 0;
			std::swap(a[k], a[swap_row]);
			sign = -sign;
		}
		for (std::size_t i = k + 1; i < n; ++i)
		{
			for (std::size_t j = k + 1; j < n; ++j)
			{
				a[i][j] = a[i][j] * a[k][k] - a[i][k] * a[k][j];
				mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
			}
			a[i][k] = 0;
		}
		prev = a[k][k];
	}
	return sign * a[n - 1][n - 1];
}

WendtResult wendt(u64 m, u64 cap)
{
	if (m == 0 || m % 2 != 0) throw UsageError("wendt: m must be a positive even number");
	if (m > cap) throw UsageError("wendt: m = " + std::to_string(m) + " exceeds cap " + std::to_string(cap));

	// descending coefficients of x^m - 1 and (x+1)^m - 1
	std::vector<mpz_class> f(m + 1, 0), g(m + 1);
	f[0] = 1;
	f[m] = -1;
	for (u64 k = 0; k <= m; ++k)
		mpz_bin_uiui(g[k].get_mpz_t(), m, k);
	g[m] -= 1;

	const std::size_t size = 2 * m;
	std::vector<std::vector<mpz_class>> sylvester(size, std::vector<mpz_class>(size, 0));
	for (std::size_t row = 0; row < m; ++row)
		for (std::size_t k = 0; k <= m; ++k)
		{
			sylvester[row][row + k] = f[k];
			sylvester[m + row][row + k] = g[k];
		}
	return {m, bareiss_determinant(std::move(sylvester))};
}

std::optional<FermatTriple> fermat_mod_scan(const Auxiliary& aux, u64 theta_cap)
{
	const u64 theta = aux.theta();
	if (theta > theta_cap)
		throw UsageError("fermat_mod_scan: theta = " + std::to_string(theta) + " exceeds brute-force cap "
						 + std::to_string(theta_cap));

	// smallest p-th root of each residue
	std::vector<u64> root(theta, 0);
	for (u64 k = theta - 1; k >= 1; --k)
		root[mod_pow(k, aux.p(), theta)] = k;

	const ResidueSet set(aux);
	std::optional<FermatTriple> found;
	for (u64 r : set.residues())
	{
		for (u64 s : set.residues())
		{
			const u64 t = (r + s) % theta;
			if (t != 0 && root[t] != 0 && set.contains(t))
			{
				found = FermatTriple{root[r], root[s], root[t]};
				break;
			}
		}
		if (found) break;
	}

	if (found.has_value() == check_nc(aux).holds)
		throw std::logic_error("fermat_mod_scan: disagrees with check_nc at theta = " + std::to_string(theta));
	return found;
}

} // namespace germain
