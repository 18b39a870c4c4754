#include "germain/cli.hpp"

#include <chrono>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "germain/case1.hpp"
#include "germain/claims.hpp"
#include "germain/conditions.hpp"
#include "germain/errors.hpp"
#include "germain/grand_plan.hpp"
#include "germain/modular.hpp"
#include "germain/size_bounds.hpp"

namespace germain::cli {

using nlohmann::json;

namespace {

struct Output {
	json params = json::object();
	json result;
	std::string text;
	std::optional<std::string> csv;
	int code = Success;
};

struct Args {
	u64 p = 0, theta = 0, n = 0, x = 0, m = 0, q = 0, q_max = 0;
	u64 bound = 0, c_max = 0, theta_max = 0, n_max = 0, p_max = 0;
	i64 a = 0, b = 0, xs = 0, ys = 0;
	std::string require, aux, variant = "germain", condition = "all", expect, number;
};

std::string join(const std::vector<u64>& values, std::string_view sep)
{
	return fmt::format("{}", fmt::join(values, sep));
}

std::vector<u64> parse_list(const std::string& text)
{
	std::vector<u64> out;
	std::stringstream ss(text);
	std::string item;
	while (std::getline(ss, item, ','))
	{
		if (item.empty()) continue;
		try
		{
			std::size_t used = 0;
			out.push_back(std::stoull(item, &used));
			if (used != item.size()) throw std::invalid_argument(item);
		}
		catch (const std::logic_error&)
		{
			throw UsageError("not a natural number: '" + item + "'");
		}
	}
	return out;
}

std::set<Condition> parse_conditions(const std::string& text)
{
	std::set<Condition> out;
	std::stringstream ss(text);
	std::string item;
	while (std::getline(ss, item, ','))
		if (!item.empty()) out.insert(parse_condition(item));
	return out;
}

Auxiliary make_aux(const Args& a)
{
	if (a.p == 0) throw UsageError("--p is required");
	if (a.theta != 0) return Auxiliary::from_theta(a.p, a.theta);
	if (a.n != 0) return Auxiliary(a.p, a.n);
	throw UsageError("one of --theta or --n is required");
}

json aux_json(const Auxiliary& aux) { return {{"theta", aux.theta()}, {"p", aux.p()}, {"N", aux.n()}}; }

json witness_json(Condition c, const std::optional<Witness>& w)
{
	if (!w) return nullptr;
	switch (c)
	{
	case Condition::NC:
	case Condition::NPInv: return {{"pair", {w->first, w->second}}};
	case Condition::TwoNP:
	case Condition::PNP: return {{"base", w->base}, {"exponent", w->exponent}, {"value", w->value}};
	}
	return nullptr;
}

json report_json(const ConditionReport& r)
{
	return {{"condition", to_string(r.condition)},
			{"holds", r.holds},
			{"p_prime", r.p_prime},
			{"witness", witness_json(r.condition, r.witness)}};
}

std::string witness_text(Condition c, const Witness& w)
{
	switch (c)
	{
	case Condition::NC: return fmt::format("consecutive residues {} {}", w.first, w.second);
	case Condition::NPInv: return fmt::format("residues {} {} differ by -2N", w.first, w.second);
	case Condition::TwoNP:
	case Condition::PNP: return fmt::format("{}^{} = {} mod theta", w.base, w.exponent, w.value);
	}
	return "";
}

std::string big(const mpz_class& v) { return v.get_str(); }

// --- commands ---

Output cmd_residues(const Args& a)
{
	const auto listing = residue_table_dump(make_aux(a));
	Output o;
	o.params = {{"p", a.p}, {"theta", listing.aux.theta()}};
	o.result = {{"aux", aux_json(listing.aux)}, {"residues", listing.residues}, {"count", listing.residues.size()}};
	o.text = listing.text + "\n";
	std::string csv = "theta,p,N,residue\n";
	for (u64 r : listing.residues)
		csv += fmt::format("{},{},{},{}\n", listing.aux.theta(), listing.aux.p(), listing.aux.n(), r);
	o.csv = csv;
	return o;
}

Output cmd_check(const Args& a)
{
	const Auxiliary aux = make_aux(a);
	std::vector<Condition> conditions;
	if (a.condition == "all") conditions = {Condition::NC, Condition::TwoNP, Condition::PNP, Condition::NPInv};
	else
		for (Condition c : parse_conditions(a.condition)) conditions.push_back(c);

	Output o;
	o.params = {{"p", a.p}, {"theta", aux.theta()}, {"condition", a.condition}};
	if (!a.expect.empty()) o.params["expect"] = a.expect;
	if (!a.expect.empty() && a.expect != "holds" && a.expect != "fails")
		throw UsageError("--expect must be 'holds' or 'fails'");

	json reports = json::array();
	bool all_match = true;
	for (Condition c : conditions)
	{
		const auto r = check(aux, c);
		reports.push_back(report_json(r));
		o.text += fmt::format("{} {}", to_string(c), r.holds ? "holds" : "fails");
		if (r.witness) o.text += ": " + witness_text(c, *r.witness);
		o.text += "\n";
		if (!a.expect.empty() && r.holds != (a.expect == "holds")) all_match = false;
	}
	o.result = {{"aux", aux_json(aux)}, {"reports", reports}};
	if (!all_match) o.code = CheckFailed;
	return o;
}

Output cmd_find_aux(const Args& a, unsigned threads)
{
	if (a.p == 0 || a.theta_max == 0) throw UsageError("--p and --theta-max are required");
	const auto required = parse_conditions(a.require);
	std::vector<u64> thetas;
	for (const auto& aux : scan_auxiliaries(a.p, a.theta_max, required, threads)) thetas.push_back(aux.theta());

	std::vector<std::string> names;
	for (Condition c : required) names.emplace_back(to_string(c));
	Output o;
	o.params = {{"p", a.p}, {"theta_max", a.theta_max}, {"require", names}};
	o.result = {{"thetas", thetas}};
	o.text = join(thetas, " ") + "\n";
	std::string csv = "p,N,theta\n";
	for (u64 t : thetas) csv += fmt::format("{},{},{}\n", a.p, (t - 1) / (2 * a.p), t);
	o.csv = csv;
	return o;
}

json cell_json(const TableCell& c)
{
	return {{"N", c.n}, {"p", c.p}, {"theta", c.theta}, {"status", to_string(c.status)}, {"witness", witness_text(c)}};
}

Output cmd_table(const Args& a, unsigned threads)
{
	const u64 n_max = a.n_max ? a.n_max : 10, p_max = a.p_max ? a.p_max : 100;
	const auto cells = germain_table(n_max, p_max, threads);
	Output o;
	o.params = {{"n_max", n_max}, {"p_max", p_max}};
	json rows = json::array();
	for (const auto& c : cells)
	{
		rows.push_back(cell_json(c));
		o.text += fmt::format("N={:<3} p={:<3} theta={:<6} {:<16}{}\n", c.n, c.p, c.theta, to_string(c.status),
							  witness_text(c));
	}
	o.result = {{"cells", rows}};
	o.csv = table_csv(cells);
	return o;
}

Output cmd_certify(const Args& a)
{
	const u64 n_max = a.n_max ? a.n_max : 128;
	const auto cert = certify_case1(a.p, n_max);
	Output o;
	o.params = {{"p", a.p}, {"n_max", n_max}};
	o.result = {{"p", cert.p},
				{"aux", aux_json(cert.aux)},
				{"reports", {report_json(cert.nc), report_json(cert.pnp)}},
				{"conclusion", cert.conclusion}};
	o.text = fmt::format("p={} theta={} N={}\nnc holds\npnp holds\n{}\n", cert.p, cert.aux.theta(), cert.aux.n(),
						 cert.conclusion);
	return o;
}

Output cmd_sweep(const Args& a, unsigned threads)
{
	if (a.p_max == 0) throw UsageError("--p-max is required");
	const u64 n_max = a.n_max ? a.n_max : 128;
	const auto report = case1_sweep(a.p_max, n_max, threads);
	Output o;
	o.params = {{"p_max", a.p_max}, {"n_max", n_max}};
	json entries = json::array();
	std::string csv = "p,N,theta\n";
	for (const auto& e : report.entries)
	{
		entries.push_back({{"p", e.p}, {"theta", e.theta ? json(*e.theta) : json(nullptr)}, {"N", e.n}});
		csv += e.theta ? fmt::format("{},{},{}\n", e.p, e.n, *e.theta) : fmt::format("{},,\n", e.p);
	}
	std::vector<u64> gaps;
	for (const auto& e : report.entries)
		if (!e.theta) gaps.push_back(e.p);
	o.result = {{"entries", entries}, {"certified", report.certified}, {"gaps", gaps}};
	o.text = fmt::format("odd primes p <= {}: {} certified with N <= {}, {} gaps", a.p_max, report.certified, n_max,
						 report.gaps);
	if (!gaps.empty()) o.text += " (" + join(gaps, ",") + ")";
	o.text += "\n";
	o.csv = csv;
	return o;
}

Output cmd_bound(const Args& a)
{
	const auto variant = parse_bound_variant(a.variant);
	const auto thetas = parse_list(a.aux);
	const auto b = minimal_solution_bound(a.p, thetas, variant);
	std::vector<bool> flags(b.np_inv_flags.begin(), b.np_inv_flags.end());
	Output o;
	o.params = {{"p", a.p}, {"aux", thetas}, {"variant", to_string(variant)}};
	o.result = {{"bound", big(b.bound)},
				{"digits", b.digits},
				{"np_inv_holds", flags},
				{"caveat", b.caveat},
				{"expression", fmt::format("{}^{}{}", a.p, 2 * a.p - 1,
										   thetas.empty() ? "" : fmt::format(" * ({})^{}", join(thetas, "*"), a.p))}};
	std::vector<std::string> flag_text;
	for (bool f : flags) flag_text.push_back(f ? "holds" : "fails");
	o.text = fmt::format("p={} variant={} aux={} digits={}\nbound={}\nnp_inv={}\ncaveat: {}\n", a.p,
						 to_string(variant), join(thetas, ","), b.digits, big(b.bound), fmt::join(flag_text, ","),
						 b.caveat);
	return o;
}

Output cmd_audit(const Args& a)
{
	const auto thetas = parse_list(a.aux);
	const auto audit = np_inv_audit(a.p, thetas);
	Output o;
	o.params = {{"p", a.p}, {"aux", thetas}};
	json reports = json::array();
	std::string csv = "theta,holds,witness\n";
	for (const auto& r : audit.reports)
	{
		json entry = report_json(r);
		entry["aux"] = aux_json(r.aux);
		reports.push_back(entry);
		o.text += fmt::format("theta={} npinv {}", r.aux.theta(), r.holds ? "holds" : "fails");
		if (r.witness) o.text += ": " + witness_text(r.condition, *r.witness);
		o.text += "\n";
		csv += fmt::format("{},{},{}\n", r.aux.theta(), r.holds ? "true" : "false",
						   r.witness ? fmt::format("{}:{}", r.witness->first, r.witness->second) : "");
	}
	o.result = {{"reports", reports}, {"supporting", audit.supporting}};
	o.csv = csv;
	return o;
}

Output cmd_wendt(const Args& a)
{
	std::vector<u64> ms;
	if (a.m != 0) ms.push_back(a.m);
	else if (a.n_max != 0)
		for (u64 n = 1; n <= a.n_max; ++n) ms.push_back(2 * n);
	else throw UsageError("one of --m or --n-max is required");

	Output o;
	o.params = a.m ? json{{"m", a.m}} : json{{"n_max", a.n_max}};
	json values = json::array();
	std::string csv = "m,value\n";
	for (u64 m : ms)
	{
		const auto w = wendt(m);
		values.push_back({{"m", m}, {"value", big(w.value)}});
		o.text += fmt::format("W({}) = {}\n", m, big(w.value));
		csv += fmt::format("{},{}\n", m, big(w.value));
	}
	o.result = {{"values", values}};
	o.csv = csv;
	return o;
}

json orbit_json(const PairOrbit& orbit)
{
	return {{"seed", orbit.seed.lower},
			{"images", orbit.images},
			{"degenerate", orbit.degenerate},
			{"members", orbit.members},
			{"distinct_pairs", orbit.members.size()},
			{"distinct_residues", orbit.distinct_residues},
			{"pairwise_disjoint", orbit.pairwise_disjoint}};
}

Output cmd_orbit(const Args& a)
{
	const Auxiliary aux = make_aux(a);
	std::vector<ConsecutivePair> seeds;
	if (a.x != 0)
	{
		const ConsecutivePair pair{aux, a.x};
		if (!pair.valid())
			throw DomainError(fmt::format("({}, {}) is not a pair of consecutive residues mod {}", a.x, a.x + 1,
										  aux.theta()));
		seeds.push_back(pair);
	}
	else
	{
		std::set<u64> covered;
		for (const auto& pair : find_consecutive_pairs(aux))
		{
			if (covered.contains(pair.lower)) continue;
			seeds.push_back(pair);
			const auto orbit = pair_orbit(pair);
			covered.insert(orbit.members.begin(), orbit.members.end());
		}
	}

	Output o;
	o.params = {{"p", a.p}, {"theta", aux.theta()}};
	if (a.x) o.params["x"] = a.x;
	json orbits = json::array();
	for (const auto& seed : seeds)
	{
		const auto orbit = pair_orbit(seed);
		orbits.push_back(orbit_json(orbit));
		std::vector<std::string> pairs;
		for (u64 y : orbit.members) pairs.push_back(fmt::format("({},{})", y, y + 1));
		o.text += fmt::format("seed {}: {} pairs {} residues {} {}\n", seed.lower, orbit.members.size(),
							  orbit.distinct_residues, orbit.pairwise_disjoint ? "disjoint" : "overlapping",
							  fmt::join(pairs, " "));
	}
	const auto disjoint = disjoint_pair_count(aux);
	o.result = {{"aux", aux_json(aux)}, {"orbits", orbits}, {"disjoint_pair_count", disjoint}};
	o.text += fmt::format("disjoint_pair_count={}\n", disjoint);
	return o;
}

Output cmd_scan_p3(const Args& a, unsigned threads)
{
	const u64 bound = a.bound ? a.bound : 1'000'000;
	const auto thetas = cubic_finiteness_scan(bound, threads);
	Output o;
	o.params = {{"bound", bound}};
	o.result = {{"thetas", thetas}};
	o.text = join(thetas, " ") + "\n";
	std::string csv = "theta\n";
	for (u64 t : thetas) csv += fmt::format("{}\n", t);
	o.csv = csv;
	return o;
}

Output cmd_exceptional(const Args& a)
{
	if (a.n == 0) throw UsageError("--n is required");
	const u64 p_max = a.p_max ? a.p_max : 1'000'000;
	const auto found = exceptional_p_for_N(a.n, p_max);
	Output o;
	o.params = {{"n", a.n}, {"p_max", p_max}};
	json rows = json::array();
	std::vector<u64> ps;
	for (const auto& e : found)
	{
		rows.push_back({{"p", e.p}, {"theta", e.theta}});
		ps.push_back(e.p);
		o.text += fmt::format("p={} theta={}\n", e.p, e.theta);
	}
	o.result = {{"exceptional", rows}, {"p_values", ps}};
	return o;
}

Output cmd_factor(const Args& a)
{
	mpz_class n;
	if (a.number.empty() || n.set_str(a.number, 10) != 0) throw UsageError("--number must be a decimal natural");
	const auto f = factorize(n);
	Output o;
	o.params = {{"number", a.number}};
	json factors = json::array();
	std::vector<std::string> parts;
	for (const auto& [q, e] : f.factors)
	{
		factors.push_back({{"prime", big(q)}, {"multiplicity", e}});
		parts.push_back(e == 1 ? big(q) : fmt::format("{}^{}", big(q), e));
	}
	o.result = {{"input", big(n)}, {"factors", factors}};
	o.text = fmt::format("{} = {}\n", big(n), parts.empty() ? "1" : fmt::format("{}", fmt::join(parts, " * ")));
	return o;
}

Output cmd_fermat(const Args& a)
{
	const Auxiliary aux = make_aux(a);
	const auto triple = fermat_mod_scan(aux);
	Output o;
	o.params = {{"p", a.p}, {"theta", aux.theta()}};
	o.result = {{"aux", aux_json(aux)},
				{"triple", triple ? json{triple->x, triple->y, triple->z} : json(nullptr)}};
	o.text = triple ? fmt::format("{}^{} + {}^{} = {}^{} mod {}\n", triple->x, a.p, triple->y, a.p, triple->z, a.p,
								  aux.theta())
					: fmt::format("no nonzero solution mod {}\n", aux.theta());
	return o;
}

Output cmd_biquadratic(const Args& a)
{
	Output o;
	if (a.q_max != 0)
	{
		// every prime q = 5 mod 8 up to q_max: -1 is not, -4 is a fourth power
		o.params = {{"q_max", a.q_max}};
		std::vector<u64> checked, violations;
		for (u64 q = 5; q <= a.q_max; q += 8)
		{
			if (!is_prime(q)) continue;
			checked.push_back(q);
			if (biquadratic_residue(q, -1) || !biquadratic_residue(q, -4)) violations.push_back(q);
		}
		o.result = {{"checked", checked.size()}, {"violations", violations}};
		o.text = fmt::format("{} primes q = 5 mod 8 checked, {} violations\n", checked.size(), violations.size());
		if (!violations.empty()) o.code = CheckFailed;
		return o;
	}
	if (a.q == 0) throw UsageError("--q or --q-max is required");
	const bool r = biquadratic_residue(a.q, a.a);
	o.params = {{"q", a.q}, {"a", a.a}};
	o.result = {{"biquadratic_residue", r}};
	o.text = fmt::format("{} is {}a biquadratic residue mod {}\n", a.a, r ? "" : "not ", a.q);
	return o;
}

Output cmd_near_fermat(const Args& a, unsigned threads)
{
	if (a.m == 0 || a.bound == 0) throw UsageError("--m and --bound are required");
	const auto sols = near_fermat_search(a.m, a.bound, threads);
	Output o;
	o.params = {{"m", a.m}, {"bound", a.bound}};
	json rows = json::array();
	std::string csv = "x,y,z\n";
	for (const auto& s : sols)
	{
		rows.push_back({s.x, s.y, s.z});
		o.text += fmt::format("{} {} {}\n", s.x, s.y, s.z);
		csv += fmt::format("{},{},{}\n", s.x, s.y, s.z);
	}
	if (sols.empty()) o.text = "no nontrivial solutions\n";
	o.result = {{"solutions", rows}};
	o.csv = csv;
	return o;
}

Output cmd_near_pyth(const Args& a)
{
	if (a.c_max == 0) throw UsageError("--c-max is required");
	const auto triples = near_pyth_enumerate(a.c_max);
	Output o;
	o.params = {{"c_max", a.c_max}};
	json rows = json::array();
	std::string csv = "a,b,c\n";
	for (const auto& t : triples)
	{
		rows.push_back({t.a, t.b, t.c});
		o.text += fmt::format("{} {} {}\n", t.a, t.b, t.c);
		csv += fmt::format("{},{},{}\n", t.a, t.b, t.c);
	}
	o.result = {{"triples", rows}};
	o.csv = csv;
	return o;
}

Output cmd_phi(const Args& a)
{
	const auto r = phi_gcd_check(a.xs, a.ys, a.p);
	Output o;
	o.params = {{"x", a.xs}, {"y", a.ys}, {"p", a.p}};
	o.result = {{"phi", big(r.phi)},
				{"sum", big(r.sum)},
				{"gcd", big(r.gcd)},
				{"gcd_is_power_of_p", r.gcd_is_power_of_p},
				{"phi_valuation", r.phi_valuation ? json(*r.phi_valuation) : json(nullptr)},
				{"holds", r.holds}};
	o.text = fmt::format("phi={} gcd(x+y, phi)={}{}\n", big(r.phi), big(r.gcd),
						 r.phi_valuation ? fmt::format(" v_p(phi)={}", *r.phi_valuation) : "");
	if (!r.holds) o.code = CheckFailed;
	return o;
}

Output cmd_sum_squares(const Args& a)
{
	if (a.a < 0 || a.b < 0) throw UsageError("--a and --b must be natural numbers");
	const auto r = sum_two_squares_divisor_check(u64(a.a), u64(a.b));
	Output o;
	o.params = {{"a", a.a}, {"b", a.b}};
	std::vector<std::string> offending;
	for (const auto& q : r.offending) offending.push_back(big(q));
	json factors = json::array();
	for (const auto& [q, e] : r.factorization.factors) factors.push_back({{"prime", big(q)}, {"multiplicity", e}});
	o.result = {{"value", big(r.value)}, {"factors", factors}, {"offending", offending}, {"holds", r.holds}};
	o.text = fmt::format("{}^2 + {}^2 = {}: {}\n", a.a, a.b, big(r.value),
						 r.holds ? "no prime factor = 3 mod 4" : "offending factors present");
	if (!r.holds) o.code = CheckFailed;
	return o;
}

// --- re-verification ---

Auxiliary aux_from(const json& j) { return Auxiliary::from_theta(j.at("p"), j.at("theta")); }

ConditionReport report_from(const Auxiliary& aux, const json& j)
{
	ConditionReport r{aux, parse_condition(j.at("condition").get<std::string>()), j.at("holds"), aux.p_is_prime(),
					  std::nullopt};
	const json& w = j.at("witness");
	if (!w.is_null())
	{
		Witness wit;
		if (w.contains("pair"))
		{
			wit.first = w["pair"][0];
			wit.second = w["pair"][1];
		}
		else
		{
			wit.base = w.at("base");
			wit.exponent = w.at("exponent");
			wit.value = w.at("value");
		}
		r.witness = wit;
	}
	return r;
}

bool reverify_reports(const Auxiliary& aux, const json& reports)
{
	for (const auto& j : reports)
	{
		const auto r = report_from(aux, j);
		if (!r.verify() || check(aux, r.condition).holds != r.holds) return false;
	}
	return true;
}

} // namespace

bool reverify(const json& env)
{
	try
	{
		if (env.at("schema_version") != schema_version) return false;
		const std::string cmd = env.at("command");
		const json& p = env.at("params");
		const json& r = env.at("result");

		if (cmd == "residues")
			return pth_power_residues(aux_from(r.at("aux"))).residues() == r.at("residues").get<std::vector<u64>>();
		if (cmd == "check") return reverify_reports(aux_from(r.at("aux")), r.at("reports"));
		if (cmd == "find-aux" || cmd == "scan-p3")
		{
			const u64 prime = cmd == "scan-p3" ? 3 : p.at("p").get<u64>();
			std::set<Condition> required{Condition::NC};
			if (cmd == "find-aux")
			{
				required.clear();
				for (const auto& name : p.at("require")) required.insert(parse_condition(name.get<std::string>()));
			}
			for (u64 t : r.at("thetas").get<std::vector<u64>>())
			{
				const auto aux = Auxiliary::from_theta(prime, t);
				for (Condition c : required)
					if (!check(aux, c).holds) return false;
			}
			return true;
		}
		if (cmd == "table")
		{
			for (const auto& c : r.at("cells"))
			{
				const auto cell = classify_cell(c.at("N"), c.at("p"));
				if (c.at("status") != to_string(cell.status) || c.at("theta") != cell.theta
					|| c.at("witness") != witness_text(cell))
					return false;
			}
			return true;
		}
		if (cmd == "certify")
		{
			const auto aux = aux_from(r.at("aux"));
			const auto& reps = r.at("reports");
			const Case1Certificate cert{r.at("p"), aux, report_from(aux, reps[0]), report_from(aux, reps[1])};
			return cert.verify();
		}
		if (cmd == "sweep")
		{
			for (const auto& e : r.at("entries"))
			{
				if (e.at("theta").is_null()) continue;
				const auto aux = Auxiliary::from_theta(e.at("p"), e.at("theta"));
				if (!check_nc(aux).holds || !check_pnp(aux).holds) return false;
			}
			return true;
		}
		if (cmd == "bound")
		{
			const auto b = minimal_solution_bound(p.at("p"), p.at("aux").get<std::vector<u64>>(),
												  parse_bound_variant(p.at("variant").get<std::string>()));
			return r.at("bound") == big(b.bound) && r.at("digits") == b.digits;
		}
		if (cmd == "audit")
		{
			for (const auto& j : r.at("reports"))
				if (!reverify_reports(aux_from(j.at("aux")), json::array({j}))) return false;
			return true;
		}
		if (cmd == "wendt")
		{
			for (const auto& v : r.at("values"))
				if (v.at("value") != big(wendt(v.at("m")).value)) return false;
			return true;
		}
		if (cmd == "orbit")
		{
			const auto aux = aux_from(r.at("aux"));
			for (const auto& o : r.at("orbits"))
			{
				const auto orbit = pair_orbit({aux, o.at("seed")});
				if (o != orbit_json(orbit)) return false;
			}
			return r.at("disjoint_pair_count") == disjoint_pair_count(aux);
		}
		if (cmd == "exceptional")
		{
			const u64 n = p.at("n");
			for (const auto& e : r.at("exceptional"))
			{
				const u64 theta = e.at("theta"), prime = e.at("p");
				if (theta != 2 * n * prime + 1 || !is_prime(theta) || mod_pow(2, 2 * n, theta) != 1) return false;
			}
			return true;
		}
		if (cmd == "factor")
		{
			mpz_class product = 1;
			for (const auto& f : r.at("factors"))
			{
				const mpz_class q(f.at("prime").get<std::string>());
				if (!is_probable_prime(q)) return false;
				mpz_class pw;
				mpz_pow_ui(pw.get_mpz_t(), q.get_mpz_t(), f.at("multiplicity").get<unsigned long>());
				product *= pw;
			}
			return product == mpz_class(r.at("input").get<std::string>());
		}
		if (cmd == "fermat-scan")
		{
			const auto aux = aux_from(r.at("aux"));
			const auto& t = r.at("triple");
			if (t.is_null()) return check_nc(aux).holds;
			const u64 theta = aux.theta(), e = aux.p();
			const u64 x = t[0], y = t[1], z = t[2];
			return x % theta && y % theta && z % theta
				   && (mod_pow(x, e, theta) + mod_pow(y, e, theta)) % theta == mod_pow(z, e, theta);
		}
		if (cmd == "claims biquadratic")
		{
			if (p.contains("q"))
				return r.at("biquadratic_residue") == biquadratic_residue(p.at("q"), p.at("a").get<i64>());
			return r.at("violations").empty();
		}
		if (cmd == "claims near-fermat")
		{
			const u64 m = p.at("m");
			for (const auto& s : r.at("solutions"))
			{
				mpz_class x = s[0].get<u64>(), y = s[1].get<u64>(), z = s[2].get<u64>(), xm, ym, zm;
				mpz_pow_ui(xm.get_mpz_t(), x.get_mpz_t(), m);
				mpz_pow_ui(ym.get_mpz_t(), y.get_mpz_t(), m);
				mpz_pow_ui(zm.get_mpz_t(), z.get_mpz_t(), m);
				if (2 * zm != xm + ym || x >= y) return false;
			}
			return true;
		}
		if (cmd == "claims near-pyth")
		{
			for (const auto& t : r.at("triples"))
			{
				const u64 a = t[0], b = t[1], c = t[2];
				if (2 * c * c != a * a + b * b || std::gcd(a, b) != 1 || a > b) return false;
			}
			return true;
		}
		if (cmd == "claims phi")
		{
			const auto chk = phi_gcd_check(p.at("x"), p.at("y"), p.at("p"));
			return r.at("phi") == big(chk.phi) && r.at("gcd") == big(chk.gcd) && r.at("holds") == chk.holds;
		}
		if (cmd == "claims sum-squares")
		{
			const auto chk = sum_two_squares_divisor_check(p.at("a").get<u64>(), p.at("b").get<u64>());
			return r.at("value") == big(chk.value) && r.at("holds") == chk.holds;
		}
		return false;
	}
	catch (const std::exception&)
	{
		return false;
	}
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
	CLI::App app{"Sophie Germain residue-condition toolkit", "germain"};
	app.require_subcommand(1);
	app.fallthrough();

	bool as_json = false, as_csv = false, no_timing = false;
	std::string out_file;
	unsigned threads = 1;
	app.add_flag("--json", as_json, "Emit a JSON envelope");
	app.add_flag("--csv", as_csv, "Emit CSV where the command supports it");
	app.add_option("--out", out_file, "Write output to FILE instead of stdout");
	app.add_option("--threads", threads, "Worker threads for sweeps (0 = all cores)");
	app.add_flag("--no-timing", no_timing, "Report runtime_ms as 0 for byte-stable JSON");

	Args a;
	std::map<CLI::App*, std::function<Output()>> handlers;
	auto sub = [&](const std::string& name, const std::string& help, auto handler) {
		CLI::App* s = app.add_subcommand(name, help);
		handlers[s] = handler;
		return s;
	};
	auto aux_opts = [&](CLI::App* s) {
		s->add_option("--p", a.p, "Exponent p")->required();
		s->add_option("--theta", a.theta, "Prime modulus theta = 2Np+1");
		s->add_option("--n", a.n, "N, giving theta = 2Np+1");
	};
	auto pool = [&]() { return threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads; };

	aux_opts(sub("residues", "List the p-th power residues mod theta", [&] { return cmd_residues(a); }));

	auto* check_cmd = sub("check", "Evaluate N-C, 2-N-p, p-N-p, N-p^-1", [&] { return cmd_check(a); });
	aux_opts(check_cmd);
	check_cmd->add_option("--condition", a.condition, "all, or a list of nc,2np,pnp,npinv");
	check_cmd->add_option("--expect", a.expect, "holds|fails; exit 1 on mismatch");

	auto* find_cmd = sub("find-aux", "Scan auxiliaries theta = 2Np+1", [&] { return cmd_find_aux(a, pool()); });
	find_cmd->add_option("--p", a.p)->required();
	find_cmd->add_option("--theta-max", a.theta_max)->required();
	find_cmd->add_option("--require", a.require, "nc,2np,pnp,npinv");

	auto* table_cmd = sub("table", "Germain's summary table, corrected", [&] { return cmd_table(a, pool()); });
	table_cmd->add_option("--n-max", a.n_max, "default 10");
	table_cmd->add_option("--p-max", a.p_max, "odd primes below this, default 100");

	auto* cert_cmd = sub("certify", "Case 1 certificate for an odd prime", [&] { return cmd_certify(a); });
	cert_cmd->add_option("--p", a.p)->required();
	cert_cmd->add_option("--n-max", a.n_max, "default 128");

	auto* sweep_cmd = sub("sweep", "Certify every odd prime up to p-max", [&] { return cmd_sweep(a, pool()); });
	sweep_cmd->add_option("--p-max", a.p_max)->required();
	sweep_cmd->add_option("--n-max", a.n_max, "default 128");

	auto* bound_cmd = sub("bound", "Size lower bound p^(2p-1) prod theta^p", [&] { return cmd_bound(a); });
	bound_cmd->add_option("--p", a.p)->required();
	bound_cmd->add_option("--aux", a.aux, "comma-separated auxiliaries");
	bound_cmd->add_option("--variant", a.variant, "germain|legendre_subset");

	auto* audit_cmd = sub("audit", "N-p^-1 audit of auxiliaries", [&] { return cmd_audit(a); });
	audit_cmd->add_option("--p", a.p)->required();
	audit_cmd->add_option("--aux", a.aux)->required();

	auto* wendt_cmd = sub("wendt", "Res(x^m - 1, (x+1)^m - 1)", [&] { return cmd_wendt(a); });
	wendt_cmd->add_option("--m", a.m, "even m");
	wendt_cmd->add_option("--n-max", a.n_max, "list W(2N) for N = 1..n-max");

	auto* orbit_cmd = sub("orbit", "Six-map orbits of consecutive residue pairs", [&] { return cmd_orbit(a); });
	aux_opts(orbit_cmd);
	orbit_cmd->add_option("--x", a.x, "seed pair (x, x+1); default all orbits");

	auto* p3_cmd = sub("scan-p3", "Primes 6a+1 with no consecutive cubic residues", [&] { return cmd_scan_p3(a, pool()); });
	p3_cmd->add_option("--bound", a.bound, "default 1000000");

	auto* exc_cmd = sub("exceptional", "p with 2Np+1 dividing 2^(2N)-1", [&] { return cmd_exceptional(a); });
	exc_cmd->add_option("--n", a.n)->required();
	exc_cmd->add_option("--p-max", a.p_max);

	auto* factor_cmd = sub("factor", "Prime factorization", [&] { return cmd_factor(a); });
	factor_cmd->add_option("--number", a.number)->required();

	aux_opts(sub("fermat-scan", "Brute-force x^p + y^p = z^p mod theta", [&] { return cmd_fermat(a); }));

	CLI::App* claims = app.add_subcommand("claims", "Manuscript residue facts and searches");
	claims->require_subcommand(1);
	auto claim = [&](const std::string& name, const std::string& help, auto handler) {
		CLI::App* s = claims->add_subcommand(name, help);
		handlers[s] = handler;
		return s;
	};
	auto* bq = claim("biquadratic", "Fourth-power residue test", [&] { return cmd_biquadratic(a); });
	bq->add_option("--q", a.q);
	bq->add_option("--a", a.a);
	bq->add_option("--q-max", a.q_max, "check -1 and -4 for all primes q = 5 mod 8 up to q-max");
	auto* nf = claim("near-fermat", "2z^m = x^m + y^m search", [&] { return cmd_near_fermat(a, pool()); });
	nf->add_option("--m", a.m)->required();
	nf->add_option("--bound", a.bound)->required();
	claim("near-pyth", "2c^2 = a^2 + b^2 primitive triples", [&] { return cmd_near_pyth(a); })
		->add_option("--c-max", a.c_max)
		->required();
	auto* ph = claim("phi", "Barlow-Abel cofactor and gcd lemma", [&] { return cmd_phi(a); });
	ph->add_option("--x", a.xs)->required();
	ph->add_option("--y", a.ys)->required();
	ph->add_option("--p", a.p)->required();
	auto* ss = claim("sum-squares", "Prime divisors of a^2 + b^2", [&] { return cmd_sum_squares(a); });
	ss->add_option("--a", a.a)->required();
	ss->add_option("--b", a.b)->required();

	std::vector<const char*> argv{"germain"};
	for (const auto& s : args) argv.push_back(s.c_str());
	try
	{
		app.parse(int(argv.size()), argv.data());
	}
	catch (const CLI::CallForHelp&)
	{
		out << app.help();
		return Success;
	}
	catch (const CLI::ParseError& e)
	{
		err << "error: " << e.what() << "\n";
		return UsageFailure;
	}

	CLI::App* chosen = app.get_subcommands().front();
	std::string command = chosen->get_name();
	if (chosen == claims)
	{
		chosen = claims->get_subcommands().front();
		command += " " + chosen->get_name();
	}

	const auto start = std::chrono::steady_clock::now();
	Output o;
	try
	{
		if (as_json && as_csv) throw UsageError("--json and --csv are mutually exclusive");
		o = handlers.at(chosen)();
		if (as_csv && !o.csv) throw UsageError("command '" + command + "' has no CSV form");
	}
	catch (const UsageError& e)
	{
		err << "usage error: " << e.what() << "\n";
		return UsageFailure;
	}
	catch (const DomainError& e)
	{
		err << "usage error: " << e.what() << "\n";
		return UsageFailure;
	}
	catch (const BudgetError& e)
	{
		err << "budget error: " << e.what() << "\n";
		return BudgetExceeded;
	}
	catch (const std::exception& e)
	{
		err << "check failed: " << e.what() << "\n";
		return CheckFailed;
	}
	const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);

	std::string rendered;
	if (as_json)
	{
		const json envelope = {{"schema_version", schema_version},
							   {"command", command},
							   {"params", o.params},
							   {"result", o.result},
							   {"runtime_ms", no_timing ? 0 : elapsed.count()}};
		rendered = envelope.dump(2) + "\n";
	}
	else if (as_csv) rendered = *o.csv;
	else rendered = o.text;

	if (out_file.empty()) out << rendered;
	else
	{
		std::ofstream file(out_file, std::ios::binary);
		if (!file)
		{
			err << "usage error: cannot open " << out_file << "\n";
			return UsageFailure;
		}
		file << rendered;
	}
	return o.code;
}

} // namespace germain::cli
