#include "blocklim/svg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "blocklim/geometry.hpp"

namespace blocklim
{
namespace
{
struct Motion
{
	Vector3 u = Vector3::Zero();
	Vector2 centroid = Vector2::Zero();
};

Motion block_motion(SystemMatrices const & s, VectorX const & U, int block_id)
{
	Motion m;
	if (auto it = s.dof_map.find(block_id); it != s.dof_map.end())
	{
		m.centroid = s.centroids_free[it->second / 3];
		if (U.size() == s.num_free_dofs())
			m.u = U.segment(it->second, 3);
	}
	else if (auto jt = s.fixed_dof_map.find(block_id); jt != s.fixed_dof_map.end())
	{
		m.centroid = s.centroids_fixed[jt->second / 3];
		if (s.u_fixed.size() > jt->second + 2)
			m.u = s.u_fixed.segment(jt->second, 3);
	}
	return m;
}

Vector2 moved(Motion const & m, Vector2 const & p, double amplify)
{
	return p + amplify * rigid_displacement<double>(m.u, m.centroid, p);
}

struct Bounds
{
	double x0 = std::numeric_limits<double>::infinity(), y0 = x0, x1 = -x0, y1 = -x0;

	void add(Vector2 const & p)
	{
		x0 = std::min(x0, p.x());
		x1 = std::max(x1, p.x());
		y0 = std::min(y0, p.y());
		y1 = std::max(y1, p.y());
	}
};

std::string points(std::vector<Vector2> const & ps)
{
	std::string out;
	for (Vector2 const & p : ps)
		out += fmt::format("{}{:.6g},{:.6g}", out.empty() ? "" : " ", p.x(), -p.y());
	return out;
}
}  // namespace

std::vector<Vector2> displaced_vertices(StructuralModel const & model, SystemMatrices const & system, VectorX const & U, int block_id, double amplify)
{
	Block const * b = model.find_block(block_id);
	if (!b)
		return {};
	Motion const m = block_motion(system, U, block_id);
	std::vector<Vector2> out;
	for (Vector2 const & v : b->vertices)
		out.push_back(moved(m, v, amplify));
	return out;
}

std::string render_svg(StructuralModel const & model, VectorX const & U, std::vector<Hinge> const & hinges, SvgOptions const & options)
{
	SystemMatrices const s = assemble_system(model);
	double const amp = options.amplify;

	Bounds box;
	std::vector<std::vector<Vector2>> shifted;
	for (Block const & b : model.blocks)
	{
		for (Vector2 const & v : b.vertices)
			box.add(v);
		shifted.push_back(displaced_vertices(model, s, U, b.id, amp));
		for (Vector2 const & v : shifted.back())
			box.add(v);
	}
	if (!std::isfinite(box.x0))
		box = Bounds{0, 0, 1, 1};
	double const extent = std::max({box.x1 - box.x0, box.y1 - box.y0, 1e-9});
	double const unit = extent / 100;  // marker sizes scale with the structure
	double const margin = 10 * unit;

	double const vx = box.x0 - margin, vy = -box.y1 - margin;
	double const vw = box.x1 - box.x0 + 2 * margin, vh = box.y1 - box.y0 + 2 * margin;
	std::string svg = fmt::format(
		"<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
		"<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.0f}\" height=\"{:.0f}\" viewBox=\"{:.6g} {:.6g} {:.6g} {:.6g}\">\n",
		options.width_px, options.width_px * vh / vw, vx, vy, vw, vh);

	svg += "<g id=\"original\" fill=\"#eeeeee\" stroke=\"#bbbbbb\" stroke-width=\"" + fmt::format("{:.6g}", unit * 0.2) + "\">\n";
	for (Block const & b : model.blocks)
		svg += fmt::format("<polygon data-block=\"{}\" points=\"{}\"/>\n", b.id, points(b.vertices));
	svg += "</g>\n";

	svg += "<g id=\"displaced\" stroke=\"#333333\" stroke-width=\"" + fmt::format("{:.6g}", unit * 0.3) + "\">\n";
	for (std::size_t i = 0; i < model.blocks.size(); ++i)
	{
		Block const & b = model.blocks[i];
		svg += fmt::format("<polygon data-block=\"{}\" fill=\"{}\" fill-opacity=\"0.8\" points=\"{}\"/>\n", b.id,
			b.fixed ? "#888888" : "#c8a27a", points(shifted[i]));
	}
	svg += "</g>\n";

	auto end_position = [&](InterfaceGeometry const & itf, End end) { return moved(block_motion(s, U, itf.block_j), itf.end_point(end), amp); };

	svg += "<g id=\"reinforcements\" stroke=\"#1a7f37\" stroke-linecap=\"round\">\n";
	for (ReinforcementInfo const & r : s.reinforcements)
	{
		InterfaceGeometry const & itf = s.interfaces[r.interface_index];
		Vector2 const p = end_position(itf, r.end);
		Vector2 const inward = (r.end == End::End1 ? 1.0 : -1.0) * itf.t;
		Vector2 const a = p - 2 * unit * itf.n + 0.5 * unit * inward;
		Vector2 const b = p + 2 * unit * itf.n + 0.5 * unit * inward;
		svg += fmt::format("<line data-interface=\"{}\" data-end=\"{}\" data-layers=\"{}\" x1=\"{:.6g}\" y1=\"{:.6g}\" x2=\"{:.6g}\" "
						   "y2=\"{:.6g}\" stroke-width=\"{:.6g}\"/>\n",
			itf.id, static_cast<int>(r.end), r.layers, a.x(), -a.y(), b.x(), -b.y(), 0.4 * unit * r.layers);
	}
	svg += "</g>\n";

	svg += "<g id=\"hinges\" fill=\"none\" stroke=\"#1f4fd8\" stroke-width=\"" + fmt::format("{:.6g}", unit * 0.4) + "\">\n";
	for (Hinge const & h : hinges)
	{
		Index i = 0;
		try
		{
			i = s.interface_index(h.interface_id);
		}
		catch (Error const &)
		{
			continue;
		}
		Vector2 const p = end_position(s.interfaces[i], h.end);
		svg += fmt::format("<circle data-interface=\"{}\" data-end=\"{}\" cx=\"{:.6g}\" cy=\"{:.6g}\" r=\"{:.6g}\"/>\n", h.interface_id,
			static_cast<int>(h.end), p.x(), -p.y(), 1.5 * unit);
		if (options.label_hinges)
			svg += fmt::format("<text x=\"{:.6g}\" y=\"{:.6g}\" font-size=\"{:.6g}\" fill=\"#1f4fd8\" stroke=\"none\">{}</text>\n",
				p.x() + 1.8 * unit, -p.y() - 1.8 * unit, 3 * unit, h.interface_id);
	}
	svg += "</g>\n</svg>\n";
	return svg;
}

}  // namespace blocklim
