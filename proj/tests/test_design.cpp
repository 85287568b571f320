#include <doctest.h>

#include "blocklim/design.hpp"
#include "blocklim/fixtures.hpp"

using namespace blocklim;

namespace
{
/// Three parallel joints; the mechanism openings are supplied directly.
struct Stage
{
	StructuralModel model;
	SystemMatrices system;
	Mechanism mechanism;

	explicit Stage(std::vector<double> const & openings)
	{
		model = fixtures::random_model(5, {3, 3, 0, true});
		system = assemble_system(model);
		mechanism.openings = Eigen::Map<VectorX const>(openings.data(), static_cast<Index>(openings.size()));
		mechanism.tolerance = 1e-12;
	}
};
}  // namespace

TEST_CASE("placement goes to the largest opening")
{
	Stage s({0, 0.1, 0.5, 0, 0, 0.2});
	Location const l = next_reinforcement_location(s.mechanism, s.system, {});
	CHECK(l.interface_id == s.system.interfaces[1].id);
	CHECK(l.end == End::End1);
	CHECK(l.opening == doctest::Approx(0.5));
}

TEST_CASE("ties go to the lowest interface id, then to end 1")
{
	Stage a({0, 0.3, 0.3, 0, 0, 0.3});
	Location const l = next_reinforcement_location(a.mechanism, a.system, {});
	CHECK(l.interface_id == std::min({a.system.interfaces[0].id, a.system.interfaces[1].id, a.system.interfaces[2].id}));

	Stage b({0.3, 0.3 * (1 + 1e-12), 0, 0, 0, 0});
	Location const m = next_reinforcement_location(b.mechanism, b.system, {});
	CHECK(m.end == End::End1);
}

TEST_CASE("eligibility filters ends and closed mechanisms raise NoOpening")
{
	Stage s({0, 0.1, 0.5, 0, 0, 0.2});
	Eligibility e = Eligibility::parse(std::to_string(s.system.interfaces[2].id) + ":2");
	CHECK(e.kind == Eligibility::Kind::Explicit);
	Location const l = next_reinforcement_location(s.mechanism, s.system, e);
	CHECK(l.interface_id == s.system.interfaces[2].id);
	CHECK(l.end == End::End2);

	Stage closed({0, 0, 0, 0, -0.1, 0});
	try
	{
		next_reinforcement_location(closed.mechanism, closed.system, {});
		FAIL("expected NoOpening");
	}
	catch (Error const & err)
	{
		CHECK(err.code() == ErrorCode::NoOpening);
	}
}

TEST_CASE("eligibility parsing")
{
	CHECK(Eligibility::parse("Extrados").kind == Eligibility::Kind::Extrados);
	CHECK(Eligibility::parse(" all ").kind == Eligibility::Kind::All);
	Eligibility const e = Eligibility::parse("7:1, 8:2");
	REQUIRE(e.ends.size() == 2);
	CHECK(e.ends[1] == Hinge{8, End::End2});
	CHECK(e.to_string() == "7:1,8:2");
	CHECK_THROWS_AS(Eligibility::parse("7:3"), Error);
	CHECK_THROWS_AS(Eligibility::parse("seven"), Error);
}

TEST_CASE("design loop stops at the target and reports every step")
{
	DesignOptions o;
	o.target_lambda = 6;
	DesignResult const r = design_weak_reinforcement(fixtures::trilithon(), o);
	CHECK(r.target_met);
	CHECK(r.termination == DesignTermination::TargetMet);
	CHECK(r.final_lambda() >= 6);
	CHECK(r.lambda_history.size() == r.placements.size() + 1);
	CHECK(r.force_history.size() == r.lambda_history.size());
	for (std::size_t i = 1; i < r.lambda_history.size(); ++i)
		CHECK(r.lambda_history[i] >= r.lambda_history[i - 1] - 1e-9);
}

TEST_CASE("an unreachable target raises TargetUnreachable")
{
	DesignOptions o;
	o.target_lambda = 1e6;
	o.max_reinforcements = 2;
	try
	{
		design_weak_reinforcement(fixtures::trilithon(), o);
		FAIL("expected TargetUnreachable");
	}
	catch (Error const & e)
	{
		CHECK(e.code() == ErrorCode::TargetUnreachable);
	}
	o.require_target = false;
	DesignResult const r = design_weak_reinforcement(fixtures::trilithon(), o);
	CHECK_FALSE(r.target_met);
	CHECK(r.termination == DesignTermination::MaxReinforcements);
	CHECK(r.placements.size() == 2);
}

TEST_CASE("arch extrados design places 7, 6, 8, 5, 9, 7, 6, 8")
{
	DesignOptions o;
	o.target_lambda = 1e9;
	o.require_target = false;
	o.eligibility = Eligibility::parse("extrados");
	o.scenarios = {{"left springing dy", fixtures::arch_left_springing(), Vector3(0, -1, 0), 0, {}}};
	DesignResult const r = design_weak_reinforcement(fixtures::arch(), o);
	std::vector<int> seq;
	for (Placement const & p : r.placements)
	{
		seq.push_back(p.interface_id);
		CHECK(p.end == End::End1);
	}
	CHECK(seq == std::vector<int>{7, 6, 8, 5, 9, 7, 6, 8});
	REQUIRE(r.settlement_checks.size() == 1);
	CHECK(r.settlement_checks[0].error.empty());
	CHECK(r.settlement_checks[0].converged);
	CHECK(r.settlement_checks[0].hinges.size() == 3);
}
