#include <doctest.h>

#include <random>

#include "blocklim/fixtures.hpp"
#include "blocklim/geometry.hpp"
#include "oracles.hpp"

using namespace blocklim;

TEST_CASE("polygon properties of a rectangle")
{
	std::vector<Vector2> const ccw = {{0, 0}, {2, 0}, {2, 1}, {0, 1}};
	auto const p = polygon_properties<double>(ccw, 1e-12);
	CHECK(p.area == doctest::Approx(2));
	CHECK(p.centroid.x() == doctest::Approx(1));
	CHECK(p.centroid.y() == doctest::Approx(0.5));
	CHECK_FALSE(p.reoriented);

	std::vector<Vector2> const cw(ccw.rbegin(), ccw.rend());
	auto const q = polygon_properties<double>(cw, 1e-12);
	CHECK(q.area == doctest::Approx(2));
	CHECK(q.reoriented);
}

TEST_CASE("degenerate inputs are rejected")
{
	std::vector<Vector2> const line = {{0, 0}, {1, 0}, {2, 0}};
	CHECK_THROWS_AS(polygon_properties<double>(line, 1e-12), Error);
	CHECK_THROWS_AS(interface_frame<double>(Vector2(1, 1), Vector2(1, 1), 1e-12), Error);
}

TEST_CASE("interface frame: n is t rotated counter-clockwise")
{
	auto const f = interface_frame<double>(Vector2(0, 0), Vector2(0, 2), 1e-12);
	CHECK(f.t.y() == doctest::Approx(1));
	CHECK(f.n.x() == doctest::Approx(-1));
	CHECK(f.rho == doctest::Approx(1));
}

TEST_CASE("compatibility and opening rows match finite-difference kinematics")
{
	std::mt19937_64 rng(11);
	double worst = 0;
	for (int k = 0; k < 1000; ++k)
		worst = std::max(worst, oracle::kinematic_assembly_error(rng));
	CHECK(worst <= 1e-5);
}

TEST_CASE("interface orientation is fixed up so that n points from j to k")
{
	StructuralModel m = fixtures::single_block(1, 2, 1, 0.5, 0.5);
	std::swap(m.interfaces[0].block_j, m.interfaces[0].block_k);
	SystemMatrices const s = assemble_system(m);
	CHECK(s.interfaces[0].swapped);
	CHECK(s.interfaces[0].block_j == 2);
	CHECK_FALSE(s.notes.empty());
}
