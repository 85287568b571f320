#include "blocklim/fixtures.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace blocklim::fixtures
{
namespace
{
Block rectangle(int id, double x0, double y0, double x1, double y1, bool fixed = false)
{
	Block b;
	b.id = id;
	b.vertices = {{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}};
	b.fixed = fixed;
	return b;
}

Interface joint(int id, int j, int k, Vector2 p1, Vector2 p2, std::array<std::string, 2> tags = {})
{
	Interface itf;
	itf.id = id;
	itf.block_j = j;
	itf.block_k = k;
	itf.p1 = p1;
	itf.p2 = p2;
	itf.end_tags = std::move(tags);
	return itf;
}

Vector2 polar(double r, double phi) { return {r * std::cos(phi), r * std::sin(phi)}; }

/// Arc points from angle a to b, endpoints included.
void append_arc(std::vector<Vector2> & out, double r, double a, double b, int segments)
{
	for (int s = 0; s <= segments; ++s)
		out.push_back(polar(r, a + (b - a) * s / segments));
}
}  // namespace

StructuralModel single_block(double b, double h, double weight, double mu, double mu_tilde)
{
	StructuralModel m;
	m.blocks.push_back(rectangle(1, 0, 0, b, h));
	m.blocks.back().density = weight / (b * h);
	m.blocks.push_back(rectangle(2, -1, -1, b + 1, 0, true));
	m.interfaces.push_back(joint(1, 2, 1, {0, 0}, {b, 0}));
	m.supports.push_back({2, Vector3::Zero()});
	m.live_load_rules.push_back(PointLoad{1, Vector3(1, 0, 0)});
	m.defaults.mu = mu;
	m.defaults.mu_tilde = mu_tilde;
	return m;
}

StructuralModel trilithon(TrilithonGeometry const & g, int reinforcements)
{
	StructuralModel m;
	double const w = g.column_width;
	double const hb = g.block_height;
	double const xr = w + g.clear_span;  // right column left face
	double const top = g.base_y + 3 * hb;

	for (int c = 0; c < 2; ++c)
	{
		double const x0 = c == 0 ? 0.0 : xr;
		for (int b = 0; b < 3; ++b)
			m.blocks.push_back(rectangle(3 * c + b + 1, x0, g.base_y + b * hb, x0 + w, g.base_y + (b + 1) * hb));
	}
	m.blocks.push_back(rectangle(7, -g.lintel_overhang, top, xr + w + g.lintel_overhang, top + g.lintel_height));
	m.blocks.push_back(rectangle(8, -0.5 * w, g.base_y - 0.5 * hb, 1.5 * w, g.base_y, true));
	m.blocks.push_back(rectangle(9, xr - 0.5 * w, g.base_y - 0.5 * hb, xr + 1.5 * w, g.base_y, true));

	for (int c = 0; c < 2; ++c)
	{
		double const x0 = c == 0 ? 0.0 : xr;
		int const ground = c == 0 ? 8 : 9;
		for (int b = 0; b < 4; ++b)
		{
			int const j = b == 0 ? ground : 3 * c + b;
			int const k = b == 3 ? 7 : 3 * c + b + 1;
			double const y = g.base_y + b * hb;
			m.interfaces.push_back(joint(4 * c + b + 1, j, k, {x0, y}, {x0 + w, y}, {"left", "right"}));
		}
	}
	m.supports = {{8, Vector3::Zero()}, {9, Vector3::Zero()}};
	m.live_load_rules.push_back(HorizontalMassLinear{8, 0.4});
	m.gravity = {0, -g.gravity};
	m.defaults = {g.mu, g.mu_tilde, g.density, g.yield_force, g.alpha};

	auto const order = trilithon_reinforcement_order();
	for (int r = 0; r < reinforcements && r < static_cast<int>(order.size()); ++r)
		m.add_reinforcement_layer(order[r].first, order[r].second);
	return m;
}

std::vector<std::pair<int, End>> trilithon_reinforcement_order()
{
	return {{1, End::End1}, {5, End::End1}, {2, End::End1}, {6, End::End1}};
}

StructuralModel arch(ArchGeometry const & g)
{
	using std::numbers::pi;
	StructuralModel m;
	double const ri = g.r_int;
	double const re = g.r_int + g.thickness;
	double const y0 = g.impost_height;
	double const theta = std::asin(y0 / ri);
	double const psi = std::asin(y0 / re);  // extrados angle at the impost top
	int const n = g.voussoirs;
	double const step = (pi - 2 * theta) / n;
	auto const joint_angle = [&](int k) { return pi - theta - k * step; };
	int const left = arch_left_springing(g);
	int const right = arch_right_springing(g);
	std::array<std::string, 2> const tags{"extrados", "intrados"};

	double const xi = ri * std::cos(theta);  // inner face of the imposts
	double const xe1 = re * std::cos(psi);   // extrados at the impost top

	Block l;
	l.id = left;
	l.vertices = {{-re, 0}, {-xi, 0}, {-xi, y0}, {-xe1, y0}};
	l.fixed = true;
	m.blocks.push_back(l);

	for (int v = 0; v < n; ++v)
	{
		Block b;
		b.id = v + 2;
		double const a = joint_angle(v);
		double const c = joint_angle(v + 1);
		double const ext_from = v == n - 1 ? psi : c;
		double const ext_to = v == 0 ? pi - psi : a;
		append_arc(b.vertices, re, ext_from, ext_to, g.arc_segments);
		append_arc(b.vertices, ri, a, c, g.arc_segments);
		m.blocks.push_back(b);
	}

	Block r;
	r.id = right;
	r.vertices = {{xi, 0}, {re, 0}, {xe1, y0}, {xi, y0}};
	r.fixed = true;
	m.blocks.push_back(r);

	m.interfaces.push_back(joint(1, left, 2, {-xe1, y0}, {-xi, y0}, tags));
	for (int k = 1; k < n; ++k)
	{
		double const phi = joint_angle(k);
		m.interfaces.push_back(joint(k + 1, k + 1, k + 2, polar(re, phi), polar(ri, phi), tags));
	}
	m.interfaces.push_back(joint(n + 1, n + 1, right, {xe1, y0}, {xi, y0}, tags));

	m.supports = {{left, Vector3::Zero()}, {right, Vector3::Zero()}};
	m.live_load_rules.push_back(PointLoad{g.loaded_block, Vector3(0, -1, 0)});
	m.defaults = {g.mu, g.mu_tilde, g.density, g.yield_force, g.alpha};
	return m;
}

StructuralModel random_model(std::uint64_t seed, RandomOptions const & options)
{
	std::mt19937_64 rng(seed);
	auto uniform = [&](double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); };
	auto integer = [&](int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng); };

	StructuralModel m;
	int const n = integer(options.min_blocks, options.max_blocks);
	int const stacks = integer(1, std::min(3, n));
	int const ground = n + 1;
	m.blocks.reserve(n + 1);

	int id = 1;
	for (int s = 0; s < stacks; ++s)
	{
		int const count = s + 1 == stacks ? n - id + 1 : integer(1, n - id + 1 - (stacks - s - 1));
		double x0 = 4.0 * s;
		double width = 0, y = 0;
		for (int b = 0; b < count; ++b, ++id)
		{
			double const w = uniform(0.6, 1.5);
			double const h = uniform(0.3, 1.2);
			double x = x0;
			if (b > 0)
			{
				double const shift = uniform(-0.3, 0.3) * std::min(width, w);
				x = x0 + 0.5 * (width - w) + shift;
			}
			m.blocks.push_back(rectangle(id, x, y, x + w, y + h));
			m.blocks.back().density = uniform(1, 3);
			double const lo = b == 0 ? x : std::max(x, x0);
			double const hi = b == 0 ? x + w : std::min(x + w, x0 + width);
			m.interfaces.push_back(joint(id, b == 0 ? ground : id - 1, id, {lo, y}, {hi, y}));
			x0 = x;
			width = w;
			y += h;
		}
	}
	m.blocks.push_back(rectangle(ground, -2, -1, 4.0 * stacks + 2, 0, true));
	m.supports.push_back({ground, Vector3::Zero()});

	m.live_load_rules.push_back(HorizontalMassLinear{uniform(2, 10), uniform(0.5, 2)});
	if (integer(0, 1))
		m.live_load_rules.push_back(PointLoad{integer(1, n), Vector3(uniform(0.1, 1), 0, 0)});

	double const mu = uniform(0.4, 1.0);
	m.defaults.mu = mu;
	m.defaults.mu_tilde = options.associative ? mu : uniform(0, mu);
	m.defaults.density = 1;

	double weight = 0;
	for (Block const & b : m.blocks)
		if (!b.fixed)
			weight += b.density.value_or(1);
	m.defaults.yield_force = uniform(0.02, 0.2) * weight;

	int const reinforcements = integer(0, options.max_reinforcements);
	for (int r = 0; r < reinforcements; ++r)
		m.add_reinforcement_layer(integer(1, n), integer(0, 3) ? End::End1 : End::End2);
	return m;
}

std::vector<int> arch_extrados_sequence() { return {7, 6, 8, 5, 9, 7, 6, 8}; }
std::vector<int> arch_intrados_sequence() { return {13, 13, 13, 14, 12, 13, 14, 13}; }

StructuralModel arch_reinforced(std::vector<int> const & interfaces, End end, ArchGeometry const & g)
{
	StructuralModel m = arch(g);
	for (int id : interfaces)
		m.add_reinforcement_layer(id, end);
	return m;
}

}  // namespace blocklim::fixtures
