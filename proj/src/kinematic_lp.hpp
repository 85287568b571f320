#pragma once

#include "blocklim/assembly.hpp"
#include "blocklim/lp.hpp"

namespace blocklim
{
/// Variables [U free, beta >= 0]; rows B U - N beta = rhs (3 N_I), optionally F_l^T U = 1 last.
/// Minimises cost^T U.
inline lp::Problem<double> kinematic_lp(SystemMatrices const & s, VectorX const & cost, VectorX const & rhs, bool normalised)
{
	Index const n_u = s.num_free_dofs();
	Index const n_b = 5 * s.num_interfaces();
	Index const n_c = 3 * s.num_interfaces();
	auto p = lp::Problem<double>::with_variables(n_u + n_b, n_c + (normalised ? 1 : 0), 0);
	p.sense = lp::Sense::Minimize;
	for (Index j = 0; j < n_u; ++j)
		p.set_free(j);
	p.objective.head(n_u) = cost;
	p.eq_matrix.topLeftCorner(n_c, n_u) = s.B;
	p.eq_matrix.topRightCorner(n_c, n_b) = -s.N;
	p.eq_rhs.head(n_c) = rhs;
	if (normalised)
	{
		p.eq_matrix.row(n_c).head(n_u) = s.F_live.transpose();
		p.eq_rhs(n_c) = 1;
	}
	return p;
}

/// Work rate of the reinforcements at their limit per unit U (free part).
inline VectorX reinforcement_work(SystemMatrices const & s)
{
	if (!s.num_reinforcements())
		return VectorX::Zero(s.num_free_dofs());
	return s.C.transpose() * s.reinforcement_limits();
}

}  // namespace blocklim
