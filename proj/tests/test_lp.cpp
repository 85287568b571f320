#include <doctest.h>

#include <random>

#include "oracles.hpp"

using namespace blocklim;
using P = lp::Problem<double>;

TEST_CASE("textbook maximisation")
{
	// max 3x + 5y, x <= 4, 2y <= 12, 3x + 2y <= 18 -> (2, 6), 36
	P p = P::with_variables(2, 0, 3);
	p.sense = lp::Sense::Maximize;
	p.objective << 3, 5;
	p.ineq_matrix << 1, 0, 0, 2, 3, 2;
	p.ineq_rhs << 4, 12, 18;
	auto const s = lp::solve(p);
	REQUIRE(s.optimal());
	CHECK(s.objective_value == doctest::Approx(36));
	CHECK(s.x(0) == doctest::Approx(2));
	CHECK(s.x(1) == doctest::Approx(6));
	CHECK(s.dual_in(0) == doctest::Approx(0));
	CHECK(s.dual_in(1) == doctest::Approx(1.5));
	CHECK(s.dual_in(2) == doctest::Approx(1));
}

TEST_CASE("free variables and equalities")
{
	// min x - y, x + y = 1, x free, -2 <= y <= 3 -> y = 3, x = -2
	P p = P::with_variables(2, 1, 0);
	p.objective << 1, -1;
	p.eq_matrix << 1, 1;
	p.eq_rhs << 1;
	p.set_free(0);
	p.lower(1) = -2;
	p.upper(1) = 3;
	auto const s = lp::solve(p);
	REQUIRE(s.optimal());
	CHECK(s.objective_value == doctest::Approx(-5));
	CHECK(oracle::duality_gap(p, s) <= 1e-9);
}

TEST_CASE("infeasible and unbounded problems are classified")
{
	P inf = P::with_variables(1, 0, 2);
	inf.ineq_matrix << 1, -1;
	inf.ineq_rhs << 1, -2;  // x <= 1 and x >= 2
	CHECK(lp::solve(inf).status == lp::Status::Infeasible);

	P unb = P::with_variables(2, 0, 1);
	unb.sense = lp::Sense::Maximize;
	unb.objective << 1, 1;
	unb.ineq_matrix << 1, -1;
	unb.ineq_rhs << 1;
	CHECK(lp::solve(unb).status == lp::Status::Unbounded);
}

TEST_CASE("degenerate vertex does not cycle")
{
	// Beale's cycling example.
	P p = P::with_variables(4, 0, 3);
	p.objective << -0.75, 150, -0.02, 6;
	p.ineq_matrix << 0.25, -60, -0.04, 9, 0.5, -90, -0.02, 3, 0, 0, 1, 0;
	p.ineq_rhs << 0, 0, 1;
	auto const s = lp::solve(p);
	REQUIRE(s.optimal());
	CHECK(s.objective_value == doctest::Approx(-0.05));
}

TEST_CASE("random LPs agree with vertex enumeration and close the duality gap")
{
	std::mt19937_64 rng(99);
	for (int k = 0; k < 200; ++k)
	{
		CAPTURE(k);
		P const p = oracle::random_lp(rng);
		auto const ref = oracle::enumerate_vertices(p);
		auto const s = lp::solve(p);
		if (!ref.feasible)
		{
			CHECK(s.status == lp::Status::Infeasible);
			continue;
		}
		REQUIRE(s.optimal());
		CHECK(std::abs(s.objective_value - ref.objective) <= 1e-8);
		CHECK(oracle::duality_gap(p, s) <= 1e-8);
		CHECK(lp::primal_residual(p, s.x) <= 1e-9);
	}
}

TEST_CASE("inconsistent problems are rejected")
{
	P p = P::with_variables(2, 0, 1);
	p.ineq_matrix.resize(1, 3);
	CHECK_THROWS_AS(p.check(), Error);
}
