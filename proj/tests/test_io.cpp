#include <doctest.h>

#include <fstream>
#include <sstream>

#include "blocklim/fixtures.hpp"
#include "blocklim/io.hpp"

using namespace blocklim;

namespace
{
ErrorCode code_of(std::string const & text)
{
	try
	{
		parse_model(text);
	}
	catch (Error const & e)
	{
		return e.code();
	}
	FAIL("expected a parse failure");
	return ErrorCode::InvalidModel;
}

std::string message_of(std::string const & text)
{
	try
	{
		parse_model(text);
	}
	catch (Error const & e)
	{
		return e.what();
	}
	return {};
}
}  // namespace

TEST_CASE("serialise, parse, serialise is byte-identical")
{
	std::vector<StructuralModel> models = {fixtures::single_block(1, 2, 1, 0.3, 0.2), fixtures::trilithon({}, 4), fixtures::arch()};
	for (std::uint64_t seed = 1; seed <= 20; ++seed)
		models.push_back(fixtures::random_model(seed, {3, 10, 3, seed % 2 == 0}));
	for (StructuralModel & m : models)
	{
		if (!m.reinforcements.empty())
			m.reinforcements[0].yield_force = 0.1 + 1.0 / 3;
		std::string const first = dump_model(m);
		std::string const second = dump_model(parse_model(first));
		CHECK(first == second);
	}
}

TEST_CASE("parsed models analyse identically")
{
	StructuralModel const m = fixtures::trilithon({}, 2);
	SystemMatrices const a = assemble_system(m), b = assemble_system(parse_model(dump_model(m)));
	CHECK(a.B == b.B);
	CHECK(a.F_dead == b.F_dead);
	CHECK(a.R_hat == b.R_hat);
}

TEST_CASE("shipped fixtures are the generated ones")
{
	std::pair<char const *, StructuralModel> const cases[] = {
		{"trilithon.json", fixtures::trilithon()},
		{"trilithon_reinforced.json", fixtures::trilithon({}, 4)},
		{"arch.json", fixtures::arch()},
		{"single_block.json", fixtures::single_block(1, 2, 1, 0.3, 0.3)},
		{"arch_extrados.json", fixtures::arch_reinforced(fixtures::arch_extrados_sequence(), End::End1)},
	};
	for (auto const & [name, model] : cases)
	{
		CAPTURE(name);
		std::ifstream in(std::string(BLOCKLIM_FIXTURE_DIR) + "/" + name);
		REQUIRE(in);
		std::stringstream ss;
		ss << in.rdbuf();
		CHECK(ss.str() == dump_model(model));
	}
}

TEST_CASE("parse errors name the offending key")
{
	std::string const base = dump_model(fixtures::single_block(1, 2, 1, 0.5, 0.5));
	CHECK(code_of("{ not json") == ErrorCode::ParseError);

	Json doc = Json::parse(base);
	doc["interfaces"][0]["p1"] = {0, "x"};
	CHECK(message_of(doc.dump()).find("interfaces[0].p1[1]") != std::string::npos);

	doc = Json::parse(base);
	doc["blocks"][1]["colour"] = "red";
	CHECK(message_of(doc.dump()).find("blocks[1].colour") != std::string::npos);

	doc = Json::parse(base);
	doc.erase("interfaces");
	CHECK(message_of(doc.dump()).find("interfaces") != std::string::npos);

	doc = Json::parse(base);
	doc["reinforcements"] = Json::array({{{"interface_id", 1}, {"end", 3}}});
	CHECK(code_of(doc.dump()) == ErrorCode::InvalidEnd);
}

TEST_CASE("settlement specs")
{
	SettlementScenario const s = parse_settlement("block=23,ux=1.5,phi=-0.01");
	CHECK(s.block_id == 23);
	CHECK(s.u(0) == 1.5);
	CHECK(s.u(1) == 0);
	CHECK(s.u(2) == -0.01);
	CHECK_THROWS_AS(parse_settlement("ux=1"), Error);
	CHECK_THROWS_AS(parse_settlement("block=1,uz=2"), Error);
	CHECK_THROWS_AS(parse_settlement("block=one"), Error);
}

TEST_CASE("result documents")
{
	SystemMatrices const s = assemble_system(fixtures::trilithon({}, 4));
	LimitResult const r = run_sla1(s);
	Json const j = to_json(r, s);
	CHECK(j["formulation"] == "sla1");
	CHECK(j["status"] == "collapse");
	CHECK(j["lambda"].get<double>() == r.lambda);
	CHECK(j["interfaces"].size() == 8);
	CHECK(j["reinforcements"].size() == 4);
	CHECK(j["U"].size() == 7);
	CHECK(j["reactions"].size() == 2);

	Json const e = error_json(ErrorCode::NoFixedBlock, "x");
	CHECK(e["error"] == "NoFixedBlock");
}
