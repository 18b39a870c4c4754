#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "germain/cli.hpp"

using germain::cli::run;
using nlohmann::json;

namespace {

struct Result {
	int code;
	std::string out, err;
};

Result invoke(std::vector<std::string> args)
{
	std::ostringstream out, err;
	const int code = run(args, out, err);
	return {code, out.str(), err.str()};
}

std::vector<std::string> with(std::vector<std::string> prefix, const std::vector<std::string>& rest)
{
	prefix.insert(prefix.end(), rest.begin(), rest.end());
	return prefix;
}

const std::vector<std::vector<std::string>> every_command{
	{"residues", "--p", "3", "--theta", "13"},
	{"check", "--p", "3", "--theta", "31", "--condition", "all"},
	{"check", "--p", "5", "--theta", "11", "--condition", "nc,npinv"},
	{"find-aux", "--p", "5", "--theta-max", "1000", "--require", "nc,pnp"},
	{"table", "--n-max", "4", "--p-max", "40"},
	{"certify", "--p", "197", "--n-max", "20"},
	{"sweep", "--p-max", "120", "--n-max", "20"},
	{"bound", "--p", "5", "--aux", "11,41,71,101"},
	{"bound", "--p", "5", "--aux", "11,71,101", "--variant", "legendre_subset"},
	{"audit", "--p", "5", "--aux", "11,41,71,101"},
	{"wendt", "--n-max", "6"},
	{"orbit", "--p", "3", "--theta", "61"},
	{"orbit", "--p", "3", "--theta", "31", "--x", "1"},
	{"scan-p3", "--bound", "20000"},
	{"exceptional", "--n", "7", "--p-max", "1000"},
	{"factor", "--number", "16383"},
	{"fermat-scan", "--p", "3", "--theta", "31"},
	{"fermat-scan", "--p", "3", "--theta", "13"},
	{"claims", "biquadratic", "--q", "13", "--a", "-4"},
	{"claims", "biquadratic", "--q-max", "2000"},
	{"claims", "near-fermat", "--m", "2", "--bound", "50"},
	{"claims", "near-pyth", "--c-max", "100"},
	{"claims", "phi", "--x", "4", "--y", "1", "--p", "5"},
	{"claims", "sum-squares", "--a", "2", "--b", "3"},
};

} // namespace

TEST_CASE("cli examples")
{
	auto r = invoke({"residues", "--p", "3", "--theta", "13"});
	CHECK(r.code == 0);
	CHECK(r.out == "1 5 8 12\n");

	r = invoke({"find-aux", "--p", "5", "--theta-max", "1000", "--require", "nc,pnp"});
	CHECK(r.code == 0);
	CHECK(r.out.find("11 41 71 101") != std::string::npos);

	r = invoke({"bound", "--p", "5", "--aux", "11,41,71,101"});
	CHECK(r.code == 0);
	CHECK(r.out.find("digits=39") != std::string::npos);

	r = invoke({"bound", "--p", "5", "--aux", "11,71,101", "--variant", "legendre_subset"});
	CHECK(r.out.find("digits=31") != std::string::npos);

	r = invoke({"scan-p3", "--bound", "1000000"});
	CHECK(r.code == 0);
	CHECK(r.out.find("7 13") != std::string::npos);
}

TEST_CASE("cli exit codes")
{
	CHECK(invoke({"check", "--p", "3", "--theta", "13", "--condition", "nc", "--expect", "holds"}).code == 0);
	CHECK(invoke({"check", "--p", "3", "--theta", "31", "--condition", "nc", "--expect", "holds"}).code == 1);
	CHECK(invoke({"check", "--p", "3", "--theta", "31", "--condition", "nc", "--expect", "fails"}).code == 0);
	CHECK(invoke({"residues", "--p", "3", "--theta", "14"}).code == 2);
	CHECK(invoke({"residues", "--p", "3"}).code == 2);
	CHECK(invoke({"bogus"}).code == 2);
	CHECK(invoke({}).code == 2);
	CHECK(invoke({"wendt", "--m", "7"}).code == 2);
	CHECK(invoke({"check", "--p", "3", "--theta", "13", "--condition", "xyz"}).code == 2);
	CHECK(invoke({"--json", "--csv", "table"}).code == 2);
	CHECK(invoke({"--csv", "factor", "--number", "15"}).code == 2);
	CHECK(invoke({"bound", "--p", "3", "--aux", "31"}).code == 2);
	const auto budget = invoke({"certify", "--p", "7", "--n-max", "1"});
	CHECK(budget.code == 3);
	CHECK(budget.err.find("no certificate in range") != std::string::npos);
	CHECK(invoke({"--help"}).code == 0);
}

TEST_CASE("every JSON envelope round-trips through reverify")
{
	for (const auto& args : every_command)
	{
		const auto r = invoke(with({"--json"}, args));
		INFO(args[0]);
		REQUIRE(r.code == 0);
		const json env = json::parse(r.out);
		CHECK(env.at("schema_version") == "1");
		CHECK(env.contains("params"));
		CHECK(env.contains("result"));
		CHECK(env.at("runtime_ms").is_number_unsigned());
		CHECK(germain::cli::reverify(env));
	}
}

TEST_CASE("reverify rejects tampered payloads")
{
	json env = json::parse(invoke({"--json", "residues", "--p", "3", "--theta", "13"}).out);
	env["result"]["residues"][1] = 6;
	CHECK_FALSE(germain::cli::reverify(env));

	env = json::parse(invoke({"--json", "bound", "--p", "5", "--aux", "11,41,71,101"}).out);
	env["result"]["digits"] = 38;
	CHECK_FALSE(germain::cli::reverify(env));

	env = json::parse(invoke({"--json", "check", "--p", "3", "--theta", "31", "--condition", "nc"}).out);
	env["schema_version"] = "2";
	CHECK_FALSE(germain::cli::reverify(env));

	env = json::parse(invoke({"--json", "table", "--n-max", "7", "--p-max", "5"}).out);
	for (auto& c : env["result"]["cells"])
		if (c["theta"] == 43) c["status"] = "valid";
	CHECK_FALSE(germain::cli::reverify(env));
}

TEST_CASE("big integers are JSON strings")
{
	const json env = json::parse(invoke({"--json", "bound", "--p", "5", "--aux", "11,41,71,101"}).out);
	CHECK(env.at("result").at("bound") == "691053006763356095514121490614455078125");
	const json w = json::parse(invoke({"--json", "wendt", "--m", "4"}).out);
	CHECK(w.at("result").at("values")[0].at("value") == "-375");
}

TEST_CASE("--threads K output is byte-identical to K=1")
{
	const std::vector<std::vector<std::string>> parallel{
		{"table", "--n-max", "10", "--p-max", "100"},
		{"sweep", "--p-max", "400", "--n-max", "30"},
		{"find-aux", "--p", "7", "--theta-max", "100000", "--require", "nc"},
		{"scan-p3", "--bound", "100000"},
		{"claims", "near-fermat", "--m", "2", "--bound", "200"},
	};
	for (const auto& args : parallel)
	{
		const auto one = invoke(with({"--json", "--no-timing", "--threads", "1"}, args)).out;
		for (const char* k : {"2", "3", "8", "0"})
			CHECK(invoke(with({"--json", "--no-timing", "--threads", k}, args)).out == one);
	}
}

TEST_CASE("CSV output")
{
	const auto r = invoke({"--csv", "table", "--n-max", "10", "--p-max", "100"});
	REQUIRE(r.code == 0);
	CHECK(r.out.starts_with("N,p,theta,status,witness\n"));
	CHECK(r.out.find("7,3,43,fails_2np,2^14=1\n") != std::string::npos);
	CHECK(r.out.find("5,3,31,fails_2np,") != std::string::npos);
	CHECK(r.out.find("10,3,61,fails_nc,8:9\n") != std::string::npos);
	CHECK(r.out.find("1,5,11,valid,\n") != std::string::npos);
	CHECK(r.out.find('\r') == std::string::npos);
	CHECK(r.out.back() == '\n');
}

TEST_CASE("--out writes the rendering to a file")
{
	const auto path = std::filesystem::temp_directory_path() / "germain_cli_out_test.json";
	std::filesystem::remove(path);
	const auto r = invoke({"--json", "--no-timing", "--out", path.string(), "residues", "--p", "3", "--theta", "13"});
	CHECK(r.code == 0);
	CHECK(r.out.empty());
	std::ifstream in(path);
	std::stringstream contents;
	contents << in.rdbuf();
	CHECK(contents.str() == invoke({"--json", "--no-timing", "residues", "--p", "3", "--theta", "13"}).out);
	std::filesystem::remove(path);
	CHECK(invoke({"--out", "/nonexistent-dir/x", "residues", "--p", "3", "--theta", "13"}).code == 2);
}
