#include <doctest.h>

#include <regex>
#include <sstream>

#include "blocklim/fixtures.hpp"
#include "blocklim/svg.hpp"
#include "blocklim/tpe.hpp"

using namespace blocklim;

namespace
{
/// Tag balance check: every opened element closes in order.
bool well_formed(std::string const & svg)
{
	std::vector<std::string> stack;
	std::regex const tag(R"(<(/?)([A-Za-z?!][^\s>/]*)[^>]*?(/?)>)");
	for (auto it = std::sregex_iterator(svg.begin(), svg.end(), tag); it != std::sregex_iterator(); ++it)
	{
		std::string const name = (*it)[2];
		if (name[0] == '?' || name[0] == '!')
			continue;
		if ((*it)[1] == "/")
		{
			if (stack.empty() || stack.back() != name)
				return false;
			stack.pop_back();
		}
		else if ((*it)[3] != "/")
			stack.push_back(name);
	}
	return stack.empty();
}

struct Box
{
	double x, y, w, h;
};

Box view_box(std::string const & svg)
{
	std::smatch m;
	std::regex const re(R"re(viewBox="([-\d.e+]+) ([-\d.e+]+) ([-\d.e+]+) ([-\d.e+]+)")re");
	REQUIRE(std::regex_search(svg, m, re));
	return {std::stod(m[1]), std::stod(m[2]), std::stod(m[3]), std::stod(m[4])};
}

std::vector<Vector2> all_points(std::string const & svg)
{
	std::vector<Vector2> out;
	std::regex const pair(R"(([-\d.e+]+),([-\d.e+]+))");
	std::regex const polygon(R"re(points="([^"]*)")re");
	for (auto it = std::sregex_iterator(svg.begin(), svg.end(), polygon); it != std::sregex_iterator(); ++it)
	{
		std::string const pts = (*it)[1];
		for (auto p = std::sregex_iterator(pts.begin(), pts.end(), pair); p != std::sregex_iterator(); ++p)
			out.emplace_back(std::stod((*p)[1]), std::stod((*p)[2]));
	}
	std::regex const circle(R"re(cx="([-\d.e+]+)" cy="([-\d.e+]+)")re");
	for (auto it = std::sregex_iterator(svg.begin(), svg.end(), circle); it != std::sregex_iterator(); ++it)
		out.emplace_back(std::stod((*it)[1]), std::stod((*it)[2]));
	return out;
}

std::size_t count(std::string const & text, std::string const & needle)
{
	std::size_t n = 0;
	for (auto p = text.find(needle); p != std::string::npos; p = text.find(needle, p + 1))
		++n;
	return n;
}
}  // namespace

TEST_CASE("zero motion draws the displaced blocks on top of the originals")
{
	StructuralModel const m = fixtures::trilithon();
	SystemMatrices const s = assemble_system(m);
	for (Block const & b : m.blocks)
	{
		std::vector<Vector2> const moved = displaced_vertices(m, s, VectorX::Zero(s.num_free_dofs()), b.id, 25);
		REQUIRE(moved.size() == b.vertices.size());
		for (std::size_t i = 0; i < moved.size(); ++i)
			CHECK((moved[i] - b.vertices[i]).norm() == 0);
	}
	std::string const svg = render_svg(m, VectorX(), {});
	CHECK(well_formed(svg));
	CHECK(count(svg, "<polygon") == 2 * m.blocks.size());
}

TEST_CASE("small rotation about the centroid moves vertices by phi times the lever")
{
	StructuralModel const m = fixtures::single_block(1, 2, 1, 0.5, 0.5);
	SystemMatrices const s = assemble_system(m);
	double const phi = 1e-3;
	VectorX U = VectorX::Zero(3);
	U(2) = phi;
	std::vector<Vector2> const moved = displaced_vertices(m, s, U, 1, 1);
	Vector2 const c(0.5, 1);
	for (std::size_t i = 0; i < moved.size(); ++i)
	{
		Vector2 const r = m.blocks[0].vertices[i] - c;
		CHECK((moved[i] - m.blocks[0].vertices[i] - phi * Vector2(-r.y(), r.x())).norm() <= 1e-15);
	}
}

TEST_CASE("settled arch renders three hinge circles inside the view box")
{
	StructuralModel m = fixtures::arch();
	for (int id : {7, 6, 8, 5, 9, 7, 6, 8})
		m.add_reinforcement_layer(id, End::End1);
	m.set_settlement(fixtures::arch_left_springing(), Vector3(0, -1, 0));
	SettlementResult const r = run_tpe(assemble_system(m), 0);
	SvgOptions o;
	o.amplify = 25;
	std::string const svg = render_svg(m, r.mechanism.U, r.mechanism.hinges, o);
	CHECK(well_formed(svg));
	CHECK(count(svg, "<circle") == 3);
	CHECK(count(svg, "<line") == 5);  // one tick per reinforced end, layers set the stroke
	CHECK(svg.find("data-layers=\"2\"") != std::string::npos);

	Box const box = view_box(svg);
	for (Vector2 const & p : all_points(svg))
	{
		CHECK(p.x() >= box.x);
		CHECK(p.x() <= box.x + box.w);
		CHECK(p.y() >= box.y);
		CHECK(p.y() <= box.y + box.h);
	}
}
