#include <doctest.h>

#include <set>

#include "germain/conditions.hpp"
#include "germain/errors.hpp"

using namespace germain;

namespace {

// Direct enumeration of k^p, independent of the subgroup construction.
std::set<u64> cube_like_set(u64 theta, u64 p)
{
	std::set<u64> s;
	for (u64 k = 1; k < theta; ++k) s.insert(mod_pow(k, p, theta));
	return s;
}

std::optional<std::pair<u64, u64>> brute_nc(u64 theta, u64 p)
{
	const auto s = cube_like_set(theta, p);
	for (u64 r = 1; r + 1 <= theta - 1; ++r)
		if (s.contains(r) && s.contains(r + 1)) return std::pair{r, r + 1};
	return std::nullopt;
}

bool brute_npinv_fails(u64 theta, u64 p)
{
	const auto s = cube_like_set(theta, p);
	const u64 two_n = (theta - 1) / p;
	for (u64 r : s)
		for (u64 r2 : s)
			if ((r + theta - r2) % theta == (theta - two_n)) return true;
	return false;
}

} // namespace

TEST_CASE("check_nc examples")
{
	const auto r13 = check_nc(Auxiliary::from_theta(3, 13));
	CHECK(r13.holds);
	CHECK_FALSE(r13.witness);

	const auto r31 = check_nc(Auxiliary::from_theta(3, 31));
	CHECK_FALSE(r31.holds);
	REQUIRE(r31.witness);
	CHECK(r31.witness->first == 1);
	CHECK(r31.witness->second == 2);
	CHECK(r31.verify());

	// Germain primes: residues {1, theta-1} never consecutive
	for (u64 p : {3, 5, 11, 23, 29, 41, 53, 83, 89})
	{
		const auto r = check_nc(Auxiliary(p, 1));
		CHECK(r.holds);
		CHECK(pth_power_residues(r.aux).residues() == std::vector<u64>{1, 2 * p});
	}
}

TEST_CASE("check_nc matches brute force with the smallest witness")
{
	for (u64 p = 2; p < 25; ++p)
		for (u64 n = 1; 2 * n * p + 1 < 1500; ++n)
		{
			if (!is_prime(2 * n * p + 1)) continue;
			const Auxiliary aux(p, n);
			const auto report = check_nc(aux);
			const auto expected = brute_nc(aux.theta(), p);
			REQUIRE(report.holds == !expected.has_value());
			if (expected)
			{
				REQUIRE(report.witness->first == expected->first);
				REQUIRE(report.verify());
			}
		}
}

TEST_CASE("the probing path agrees with enumeration for large N")
{
	// 2N far above 64 p^2 triggers the bounded probe first
	for (u64 theta : {100003ull, 999961ull, 1000003ull})
	{
		if ((theta - 1) % 6 != 0) continue;
		const Auxiliary aux = Auxiliary::from_theta(3, theta);
		const auto set = pth_power_residues(aux);
		std::optional<u64> expected;
		for (std::size_t i = 0; i + 1 < set.size(); ++i)
			if (set.residues()[i + 1] == set.residues()[i] + 1)
			{
				expected = set.residues()[i];
				break;
			}
		CHECK(smallest_consecutive_residue(aux) == expected);
	}
}

TEST_CASE("check_2np examples")
{
	const auto r43 = check_2np(Auxiliary::from_theta(3, 43));
	CHECK_FALSE(r43.holds);
	CHECK(r43.witness->exponent == 14);
	CHECK(r43.verify());
	CHECK_FALSE(check_2np(Auxiliary::from_theta(3, 31)).holds);
	CHECK(check_2np(Auxiliary::from_theta(5, 11)).holds);
}

TEST_CASE("check_pnp examples")
{
	CHECK(check_pnp(Auxiliary::from_theta(5, 11)).holds);
	CHECK(check_pnp(Auxiliary::from_theta(3, 13)).holds);
	for (u64 p : {3, 5, 11, 23, 29, 41, 53, 83, 89, 113, 131}) CHECK(check_pnp(Auxiliary(p, 1)).holds);
}

TEST_CASE("p-N-p is exactly 'p is not a p-th power residue'")
{
	for (u64 p = 3; p < 40; p += 2)
	{
		if (!is_prime(p)) continue;
		for (u64 n = 1; n <= 30; ++n)
		{
			if (!is_prime(2 * n * p + 1)) continue;
			const Auxiliary aux(p, n);
			REQUIRE(check_pnp(aux).holds == !cube_like_set(aux.theta(), p).contains(p % aux.theta()));
		}
	}
}

TEST_CASE("check_np_inv examples")
{
	const auto r11 = check_np_inv(Auxiliary::from_theta(5, 11));
	CHECK_FALSE(r11.holds);
	CHECK(std::set<u64>{r11.witness->first, r11.witness->second} == std::set<u64>{1, 10});
	CHECK(r11.verify());

	const auto r7 = check_np_inv(Auxiliary::from_theta(3, 7));
	CHECK_FALSE(r7.holds);
	CHECK(std::set<u64>{r7.witness->first, r7.witness->second} == std::set<u64>{1, 6});

	const auto aux13 = Auxiliary::from_theta(3, 13);
	const auto r13 = check_np_inv(aux13);
	CHECK_FALSE(r13.holds);
	CHECK(r13.verify());
	// {8, 12} is also a witness: 8 - 12 = -4 = -2N
	ConditionReport alt = r13;
	alt.witness = Witness{.first = 8, .second = 12};
	CHECK(alt.verify());
}

TEST_CASE("check_np_inv matches brute force; fails for every Germain prime below 10^4")
{
	for (u64 p = 2; p < 20; ++p)
		for (u64 n = 1; 2 * n * p + 1 < 800; ++n)
		{
			if (!is_prime(2 * n * p + 1)) continue;
			const Auxiliary aux(p, n);
			REQUIRE(check_np_inv(aux).holds == !brute_npinv_fails(aux.theta(), p));
		}
	for (u64 p = 3; 2 * p + 1 < 10'000; p += 2)
	{
		if (!is_prime(p) || !is_prime(2 * p + 1)) continue;
		const auto r = check_np_inv(Auxiliary(p, 1));
		REQUIRE_FALSE(r.holds);
		REQUIRE(r.verify());
	}
}

TEST_CASE("N-C implies 2-N-p; multiples of 3 always fail N-C")
{
	for (u64 p = 2; p < 200; ++p)
		for (u64 n = 1; n <= 16; ++n)
		{
			if (!is_prime(2 * n * p + 1)) continue;
			const Auxiliary aux(p, n);
			const bool nc = check_nc(aux).holds;
			if (nc) REQUIRE(check_2np(aux).holds);
			if (n % 3 == 0) REQUIRE_FALSE(nc);
		}
}

TEST_CASE("reports carry whether p is prime")
{
	const auto r = check_2np(Auxiliary::from_theta(9, 127));
	CHECK_FALSE(r.p_prime);
	CHECK_FALSE(r.holds);
	CHECK(check_nc(Auxiliary::from_theta(3, 13)).p_prime);
}

TEST_CASE("witnesses that do not re-verify are rejected")
{
	auto r = check_nc(Auxiliary::from_theta(3, 31));
	r.witness->first = 3;
	r.witness->second = 4;
	CHECK_FALSE(r.verify());
	auto h = check_nc(Auxiliary::from_theta(3, 31));
	h.holds = true;
	h.witness.reset();
	CHECK_FALSE(h.verify());
}

TEST_CASE("exceptional_p_for_N examples")
{
	const auto n7 = exceptional_p_for_N(7, 1000);
	REQUIRE(n7.size() == 2);
	CHECK(n7[0] == ExceptionalExponent{3, 43});
	CHECK(n7[1] == ExceptionalExponent{9, 127});
	CHECK(exceptional_p_for_N(1, 1000).empty());
	CHECK(exceptional_p_for_N(5, 1000) == std::vector<ExceptionalExponent>{{3, 31}});
	CHECK_THROWS_AS(exceptional_p_for_N(65, 100), UsageError);
}

TEST_CASE("cyclotomic values at 2")
{
	CHECK(cyclotomic_at_two(1) == 1);
	CHECK(cyclotomic_at_two(2) == 3);
	CHECK(cyclotomic_at_two(14) == 43);
	CHECK(cyclotomic_at_two(7) == 127);
	for (u64 n = 1; n <= 40; ++n)
	{
		mpz_class product = 1, expected = 1;
		for (u64 d = 1; d <= n; ++d)
			if (n % d == 0) product *= cyclotomic_at_two(d);
		expected <<= n;
		REQUIRE(product == expected - 1);
	}
}

TEST_CASE("exceptional_p_for_N equals the p where 2-N-p fails")
{
	for (u64 n = 1; n <= 64; ++n)
	{
		const u64 p_max = 2000;
		std::vector<ExceptionalExponent> direct;
		for (u64 p = 2; p <= p_max; ++p)
		{
			const u64 theta = 2 * n * p + 1;
			if (is_prime(theta) && !check_2np(Auxiliary(p, n)).holds) direct.push_back({p, theta});
		}
		REQUIRE(exceptional_p_for_N(n, p_max) == direct);
	}
}

TEST_CASE("pnp_shortcut_applicable examples")
{
	CHECK(pnp_shortcut_applicable(8, 5));
	CHECK(pnp_shortcut_applicable(1, 7));
	CHECK_FALSE(pnp_shortcut_applicable(6, 5));
	for (u64 n : {1, 2, 4, 8}) CHECK(pnp_shortcut_applicable(n, 5));
	// a+1 = 5 shares the factor 5: N = 16 excluded for p = 5
	CHECK_FALSE(pnp_shortcut_applicable(16, 5));
	// N = 5^4: b+1 = 5 fails the strong form only
	CHECK_FALSE(pnp_shortcut_applicable(625, 5));
	CHECK(pnp_shortcut_applicable_weak(625, 5));
}

TEST_CASE("shortcut soundness over N <= 16, odd primes p < 200")
{
	std::size_t applicable = 0;
	for (u64 p = 3; p < 200; p += 2)
	{
		if (!is_prime(p)) continue;
		for (u64 n = 1; n <= 16; ++n)
		{
			if (!is_prime(2 * n * p + 1)) continue;
			const Auxiliary aux(p, n);
			if (!check_2np(aux).holds || !pnp_shortcut_applicable(n, p)) continue;
			++applicable;
			REQUIRE(check_pnp(aux).holds);
		}
	}
	CHECK(applicable > 0);
}

TEST_CASE("weak shortcut form (no b+1 condition) is reported, not assumed")
{
	// weak-only N = 2^a p^b need p | b+1; enumerate them directly
	std::size_t weak_only = 0, with_2np = 0, divergent = 0;
	for (u64 p : {3, 5, 7})
		for (u64 pb = 1; pb <= 2'000'000; pb *= p)
			for (u64 n = pb; n <= 2'000'000; n *= 2)
			{
				if (!pnp_shortcut_applicable_weak(n, p) || pnp_shortcut_applicable(n, p)) continue;
				if (!is_prime(2 * n * p + 1)) continue;
				++weak_only;
				const Auxiliary aux(p, n);
				if (!check_2np(aux).holds) continue;
				++with_2np;
				if (!check_pnp(aux).holds) ++divergent;
			}
	MESSAGE("weak-only prime auxiliaries: " << weak_only << ", with 2-N-p holding: " << with_2np
										   << ", p-N-p failures among those: " << divergent);
	CHECK(weak_only > 0);
}

TEST_CASE("parse_condition")
{
	CHECK(parse_condition("NC") == Condition::NC);
	CHECK(parse_condition("2np") == Condition::TwoNP);
	CHECK(parse_condition("p-n-p") == Condition::PNP);
	CHECK(parse_condition("npinv") == Condition::NPInv);
	CHECK_THROWS_AS(parse_condition("xyz"), UsageError);
}
