#include "blocklim/assembly.hpp"

#include <cmath>
#include <numeric>

#include "blocklim/geometry.hpp"

namespace blocklim
{
VectorX SystemMatrices::reinforcement_limits() const
{
	VectorX limits(num_reinforcements());
	for (Index r = 0; r < limits.size(); ++r)
		limits(r) = reinforcements[r].limit();
	return limits;
}

int SystemMatrices::total_layers() const
{
	return std::accumulate(
		reinforcements.begin(), reinforcements.end(), 0, [](int acc, ReinforcementInfo const & r) { return acc + r.layers; });
}

namespace
{
MatrixX opening_rows_impl(
	SystemMatrices const & sys, std::vector<Vector2> const & centroids, std::map<int, Index> const & dofs, Index cols)
{
	MatrixX rows = MatrixX::Zero(2 * sys.num_interfaces(), cols);
	for (Index i = 0; i < sys.num_interfaces(); ++i)
	{
		InterfaceGeometry const & g = sys.interfaces[i];
		auto const j = dofs.find(g.block_j);
		auto const k = dofs.find(g.block_k);
		for (End end : {End::End1, End::End2})
		{
			Eigen::Matrix<double, 1, 6> const row = opening_row<double>(
				g.end_point(end),
				g.n,
				j != dofs.end() ? centroids[j->second / 3] : Vector2::Zero(),
				k != dofs.end() ? centroids[k->second / 3] : Vector2::Zero());
			Index const r = 2 * i + end_index(end);
			if (j != dofs.end())
				rows.block<1, 3>(r, j->second) += row.head<3>();
			if (k != dofs.end())
				rows.block<1, 3>(r, k->second) += row.tail<3>();
		}
	}
	return rows;
}
}  // namespace

MatrixX SystemMatrices::opening_rows() const { return opening_rows_impl(*this, centroids_free, dof_map, num_free_dofs()); }

MatrixX SystemMatrices::opening_rows_fixed() const
{
	return opening_rows_impl(*this, centroids_fixed, fixed_dof_map, static_cast<Index>(u_fixed.size()));
}

Index SystemMatrices::interface_index(int id) const
{
	for (Index i = 0; i < num_interfaces(); ++i)
		if (interfaces[i].id == id)
			return i;
	throw Error(ErrorCode::UnknownInterface, "no interface with id " + std::to_string(id));
}

double SystemMatrices::load_scale() const
{
	double scale = 0;
	if (F_dead.size())
		scale = std::max(scale, F_dead.cwiseAbs().maxCoeff());
	if (F_live.size())
		scale = std::max(scale, F_live.cwiseAbs().maxCoeff());
	return scale > 0 ? scale : 1.0;
}

VectorX reinforcement_bounds_vector(std::vector<InterfaceGeometry> const & interfaces, std::vector<ReinforcementInfo> const & reinforcements)
{
	VectorX r_hat = VectorX::Zero(5 * static_cast<Index>(interfaces.size()));
	for (ReinforcementInfo const & r : reinforcements)
	{
		// N^T of the force a reinforcement at its limit adds to the joint: tension R at xi = -+rho.
		InterfaceGeometry const & itf = interfaces[r.interface_index];
		Index const base = 5 * r.interface_index;
		r_hat(base) += r.limit();
		r_hat(base + 1) += itf.mu * r.limit();
		r_hat(base + 2) += itf.mu * r.limit();
		r_hat(base + (r.end == End::End1 ? 4 : 3)) += 2 * itf.rho * r.limit();
	}
	return r_hat;
}

SystemMatrices with_settlement(SystemMatrices system, int block_id, Vector3 const & u)
{
	auto const it = system.fixed_dof_map.find(block_id);
	if (it == system.fixed_dof_map.end())
		throw Error(ErrorCode::InvalidModel, "settlement on block " + std::to_string(block_id) + " which is not fixed");
	system.u_fixed.segment<3>(it->second) = u;
	return system;
}

SystemMatrices assemble_system(StructuralModel const & model)
{
	validate(model);

	SystemMatrices sys;
	double const tol = model.geometric_tolerance();
	sys.geometric_tolerance = tol;
	sys.notes = validation_notes(model);

	std::map<int, Vector2> centroid;
	std::map<int, double> mass;
	for (Block const & b : model.blocks)
	{
		auto const props = polygon_properties<double>(b.vertices, tol);
		centroid[b.id] = props.centroid;
		mass[b.id] = props.area * model.density(b);
		if (b.fixed)
		{
			sys.fixed_dof_map[b.id] = 3 * static_cast<Index>(sys.fixed_blocks.size());
			sys.fixed_blocks.push_back(b.id);
			sys.centroids_fixed.push_back(props.centroid);
		}
		else
		{
			sys.dof_map[b.id] = 3 * static_cast<Index>(sys.free_blocks.size());
			sys.free_blocks.push_back(b.id);
			sys.centroids_free.push_back(props.centroid);
		}
	}

	Index const n_free = 3 * static_cast<Index>(sys.free_blocks.size());
	Index const n_fixed = 3 * static_cast<Index>(sys.fixed_blocks.size());
	Index const n_itf = static_cast<Index>(model.interfaces.size());

	sys.B = MatrixX::Zero(3 * n_itf, n_free);
	sys.B_fixed = MatrixX::Zero(3 * n_itf, n_fixed);
	sys.N = MatrixX::Zero(3 * n_itf, 5 * n_itf);
	sys.N_tilde = MatrixX::Zero(3 * n_itf, 5 * n_itf);

	auto scatter = [&](MatrixX & free_part, MatrixX & fixed_part, Index row, int block, auto const & cols) {
		if (auto it = sys.dof_map.find(block); it != sys.dof_map.end())
			free_part.block(row, it->second, cols.rows(), 3) += cols;
		else
			fixed_part.block(row, sys.fixed_dof_map.at(block), cols.rows(), 3) += cols;
	};

	for (Index i = 0; i < n_itf; ++i)
	{
		Interface const & itf = model.interfaces[i];
		InterfaceGeometry g;
		g.id = itf.id;
		g.p1 = itf.p1;
		g.p2 = itf.p2;
		g.end_tags = itf.end_tags;
		auto const frame = interface_frame<double>(itf.p1, itf.p2, tol);
		g.t = frame.t;
		g.n = frame.n;
		g.center = frame.center;
		g.rho = frame.rho;
		g.mu = model.mu(itf);
		g.mu_tilde = model.mu_tilde(itf);
		g.block_j = itf.block_j;
		g.block_k = itf.block_k;
		if ((centroid[g.block_k] - centroid[g.block_j]).dot(g.n) < 0)
		{
			std::swap(g.block_j, g.block_k);
			g.swapped = true;
		}

		Eigen::Matrix<double, 3, 6> const Bi = interface_compatibility<double>(frame, centroid[g.block_j], centroid[g.block_k]);
		scatter(sys.B, sys.B_fixed, 3 * i, g.block_j, Bi.leftCols<3>());
		scatter(sys.B, sys.B_fixed, 3 * i, g.block_k, Bi.rightCols<3>());
		sys.N.block<3, 5>(3 * i, 5 * i) = flow_matrix<double>(g.mu, g.rho);
		sys.N_tilde.block<3, 5>(3 * i, 5 * i) = flow_matrix<double>(g.mu_tilde, g.rho);
		sys.interfaces.push_back(std::move(g));
	}

	for (Reinforcement const & r : model.reinforcements)
	{
		ReinforcementInfo info;
		info.interface_id = r.interface_id;
		info.interface_index = static_cast<int>(sys.interface_index(r.interface_id));
		info.end = r.end;
		info.layers = r.layers;
		info.yield_force = model.yield_force(r);
		sys.reinforcements.push_back(info);
	}

	Index const n_r = sys.num_reinforcements();
	sys.C = MatrixX::Zero(n_r, n_free);
	sys.C_fixed = MatrixX::Zero(n_r, n_fixed);
	for (Index r = 0; r < n_r; ++r)
	{
		ReinforcementInfo const & info = sys.reinforcements[r];
		InterfaceGeometry const & g = sys.interfaces[info.interface_index];
		Eigen::Matrix<double, 1, 6> const row =
			opening_row<double>(g.end_point(info.end), g.n, centroid[g.block_j], centroid[g.block_k]);
		scatter(sys.C, sys.C_fixed, r, g.block_j, row.leftCols<3>());
		scatter(sys.C, sys.C_fixed, r, g.block_k, row.rightCols<3>());
	}
	sys.R_hat = reinforcement_bounds_vector(sys.interfaces, sys.reinforcements);

	sys.F_dead = VectorX::Zero(n_free);
	sys.F_live = VectorX::Zero(n_free);
	sys.F_dead_fixed = VectorX::Zero(n_fixed);
	sys.F_live_fixed = VectorX::Zero(n_fixed);
	sys.u_fixed = VectorX::Zero(n_fixed);

	auto force_slot = [&](int block, bool live) -> Eigen::Ref<VectorX> {
		if (auto it = sys.dof_map.find(block); it != sys.dof_map.end())
			return (live ? sys.F_live : sys.F_dead).segment(it->second, 3);
		return (live ? sys.F_live_fixed : sys.F_dead_fixed).segment(sys.fixed_dof_map.at(block), 3);
	};

	for (Block const & b : model.blocks)
	{
		Vector3 dead = b.extra_dead_force;
		dead.head<2>() += mass[b.id] * model.gravity;
		force_slot(b.id, false) += dead;
		force_slot(b.id, true) += b.extra_live_force;
	}
	for (LiveLoadRule const & rule : model.live_load_rules)
	{
		if (auto const * h = std::get_if<HorizontalMassLinear>(&rule))
		{
			for (Block const & b : model.blocks)
			{
				double const omega = (centroid[b.id].y() + h->offset) / h->divisor;
				force_slot(b.id, true)(0) += omega * mass[b.id];
			}
		}
		else if (auto const * p = std::get_if<PointLoad>(&rule))
		{
			force_slot(p->block_id, true) += p->force;
		}
	}

	for (Support const & s : model.supports)
		sys.u_fixed.segment<3>(sys.fixed_dof_map.at(s.block_id)) = s.prescribed_u;

	return sys;
}

}  // namespace blocklim
