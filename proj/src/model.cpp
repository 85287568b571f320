#include "blocklim/model.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "blocklim/geometry.hpp"

namespace blocklim
{
Block const * StructuralModel::find_block(int id) const
{
	auto it = std::find_if(blocks.begin(), blocks.end(), [id](Block const & b) { return b.id == id; });
	return it == blocks.end() ? nullptr : &*it;
}

Interface const * StructuralModel::find_interface(int id) const
{
	auto it = std::find_if(interfaces.begin(), interfaces.end(), [id](Interface const & i) { return i.id == id; });
	return it == interfaces.end() ? nullptr : &*it;
}

Reinforcement * StructuralModel::find_reinforcement(int interface_id, End end)
{
	auto it = std::find_if(
		reinforcements.begin(),
		reinforcements.end(),
		[&](Reinforcement const & r) { return r.interface_id == interface_id && r.end == end; });
	return it == reinforcements.end() ? nullptr : &*it;
}

int StructuralModel::add_reinforcement_layer(int interface_id, End end)
{
	if (!find_interface(interface_id))
		throw Error(ErrorCode::UnknownInterface, "no interface with id " + std::to_string(interface_id));
	if (Reinforcement * r = find_reinforcement(interface_id, end))
		return ++r->layers;
	reinforcements.push_back({interface_id, end, 1, std::nullopt});
	return 1;
}

void StructuralModel::set_settlement(int block_id, Vector3 const & u)
{
	for (Support & s : supports)
	{
		if (s.block_id == block_id)
		{
			s.prescribed_u = u;
			return;
		}
	}
	supports.push_back({block_id, u});
}

double StructuralModel::geometric_tolerance() const
{
	Vector2 lo = Vector2::Constant(std::numeric_limits<double>::infinity());
	Vector2 hi = -lo;
	for (Block const & b : blocks)
	{
		for (Vector2 const & v : b.vertices)
		{
			lo = lo.cwiseMin(v);
			hi = hi.cwiseMax(v);
		}
	}
	double const diag = blocks.empty() ? 1.0 : (hi - lo).norm();
	return 1e-9 * (diag > 0 ? diag : 1.0);
}

namespace
{
[[noreturn]] void fail(ErrorCode code, std::string const & what) { throw Error(code, what); }

std::string block_label(int id) { return "block " + std::to_string(id); }
std::string interface_label(int id) { return "interface " + std::to_string(id); }
}  // namespace

void validate(StructuralModel const & model)
{
	double const tol = model.geometric_tolerance();

	std::set<int> block_ids;
	for (Block const & b : model.blocks)
	{
		if (!block_ids.insert(b.id).second)
			fail(ErrorCode::InvalidModel, "duplicate " + block_label(b.id));
		for (Vector2 const & v : b.vertices)
			if (!v.allFinite())
				fail(ErrorCode::InvalidModel, block_label(b.id) + " has non-finite vertex");
		polygon_properties<double>(b.vertices, tol);
		if (!is_simple_polygon(b.vertices))
			fail(ErrorCode::DegeneratePolygon, block_label(b.id) + " is self-intersecting");
		if (model.density(b) < 0)
			fail(ErrorCode::InvalidModel, block_label(b.id) + " has negative density");
	}
	if (std::none_of(model.blocks.begin(), model.blocks.end(), [](Block const & b) { return b.fixed; }))
		fail(ErrorCode::NoFixedBlock, "model has no fixed block; global equilibrium is impossible");

	std::set<int> interface_ids;
	for (Interface const & itf : model.interfaces)
	{
		if (!interface_ids.insert(itf.id).second)
			fail(ErrorCode::InvalidModel, "duplicate " + interface_label(itf.id));
		Block const * bj = model.find_block(itf.block_j);
		Block const * bk = model.find_block(itf.block_k);
		if (!bj || !bk)
			fail(ErrorCode::DanglingReference, interface_label(itf.id) + " references a missing block");
		if (itf.block_j == itf.block_k)
			fail(ErrorCode::InvalidModel, interface_label(itf.id) + " joins a block to itself");
		interface_frame<double>(itf.p1, itf.p2, tol);
		double const mu = model.mu(itf);
		double const mu_tilde = model.mu_tilde(itf);
		if (mu < 0 || mu_tilde < 0 || mu_tilde > mu)
			fail(ErrorCode::InvalidModel, interface_label(itf.id) + " needs 0 <= mu_tilde <= mu");
		// Endpoints must sit on both block outlines; the check is loose (1e3 x tol_geom) to absorb
		// rounding in generated fixtures.
		double const on_boundary = 1e3 * tol;
		for (Vector2 const & p : {itf.p1, itf.p2})
		{
			if (distance_to_boundary<double>(p, bj->vertices) > on_boundary ||
				distance_to_boundary<double>(p, bk->vertices) > on_boundary)
				fail(ErrorCode::InvalidModel, interface_label(itf.id) + " endpoint is off the block boundaries");
		}
	}

	std::set<std::pair<int, int>> ends;
	for (Reinforcement const & r : model.reinforcements)
	{
		if (!model.find_interface(r.interface_id))
			fail(ErrorCode::UnknownInterface, "reinforcement on missing " + interface_label(r.interface_id));
		if (r.end != End::End1 && r.end != End::End2)
			fail(ErrorCode::InvalidEnd, "reinforcement end must be 1 or 2");
		if (!ends.insert({r.interface_id, static_cast<int>(r.end)}).second)
			fail(ErrorCode::InvalidModel, "duplicate reinforcement on " + interface_label(r.interface_id) + "; use layers");
		if (r.layers < 1 || !(model.yield_force(r) > 0))
			fail(ErrorCode::InvalidModel, "reinforcement limit force must be positive");
	}

	for (Support const & s : model.supports)
	{
		Block const * b = model.find_block(s.block_id);
		if (!b)
			fail(ErrorCode::DanglingReference, "support references missing " + block_label(s.block_id));
		if (!b->fixed)
			fail(ErrorCode::InvalidModel, "support on non-fixed " + block_label(s.block_id));
		if (!s.prescribed_u.allFinite())
			fail(ErrorCode::InvalidModel, "support prescribed displacement must be finite");
	}

	for (LiveLoadRule const & rule : model.live_load_rules)
	{
		if (auto const * p = std::get_if<PointLoad>(&rule); p && !model.find_block(p->block_id))
			fail(ErrorCode::DanglingReference, "point load references missing " + block_label(p->block_id));
		if (auto const * h = std::get_if<HorizontalMassLinear>(&rule); h && h->divisor == 0)
			fail(ErrorCode::InvalidModel, "live load divisor must be nonzero");
	}
}

std::vector<std::string> validation_notes(StructuralModel const & model)
{
	std::vector<std::string> notes;
	double const tol = model.geometric_tolerance();
	for (Block const & b : model.blocks)
	{
		if (polygon_properties<double>(b.vertices, tol).reoriented)
			notes.push_back(block_label(b.id) + " is clockwise and was reoriented");
	}
	for (Interface const & itf : model.interfaces)
	{
		Block const * bj = model.find_block(itf.block_j);
		Block const * bk = model.find_block(itf.block_k);
		if (!bj || !bk)
			continue;
		auto const frame = interface_frame<double>(itf.p1, itf.p2, tol);
		Vector2 const gj = polygon_properties<double>(bj->vertices, tol).centroid;
		Vector2 const gk = polygon_properties<double>(bk->vertices, tol).centroid;
		if ((gk - gj).dot(frame.n) < 0)
		{
			std::ostringstream out;
			out << interface_label(itf.id) << ": normal points from block " << itf.block_k << " to block "
				<< itf.block_j << "; roles of j and k swapped";
			notes.push_back(out.str());
		}
	}
	return notes;
}

}  // namespace blocklim
