#include "blocklim/sla.hpp"

#include <limits>

#include "log.hpp"

namespace blocklim
{
namespace
{
lp::Backend const & backend_of(SlaOptions const & options)
{
	return options.backend ? *options.backend : lp::default_backend();
}

double max_violation(VectorX const & v)
{
	return v.size() ? std::max(0.0, v.maxCoeff()) : 0.0;
}

struct StaticLp
{
	lp::Problem<double> problem;
	Index x0 = 1;   // first X column
	Index r0 = 0;   // first R column
	Index n_r = 0;  // R columns (0 for SLA2)
};

/// Variables [lambda, X, R]; equilibrium rows B^T X + C^T R - F_l lambda = F_d.
StaticLp build_static_lp(SystemMatrices const & s, bool explicit_reinforcement, double alpha)
{
	Index const n_x = 3 * s.num_interfaces();
	Index const n_r = explicit_reinforcement ? s.num_reinforcements() : 0;
	Index const n_dof = s.num_free_dofs();
	Index const n_ineq = 5 * s.num_interfaces();

	StaticLp out;
	out.r0 = 1 + n_x;
	out.n_r = n_r;
	auto & p = out.problem = lp::Problem<double>::with_variables(1 + n_x + n_r, n_dof, n_ineq);
	p.sense = lp::Sense::Maximize;
	p.set_free(0);
	for (Index j = 0; j < n_x; ++j)
		p.set_free(1 + j);

	p.objective(0) = 1;
	p.eq_matrix.col(0) = -s.F_live;
	p.eq_matrix.middleCols(1, n_x) = s.B.transpose();
	p.eq_rhs = s.F_dead;

	if (n_r)
	{
		p.eq_matrix.middleCols(out.r0, n_r) = s.C.transpose();
		VectorX const limits = s.reinforcement_limits();
		int const layers = std::max(1, s.total_layers());
		for (Index r = 0; r < n_r; ++r)
		{
			p.upper(out.r0 + r) = limits(r);
			p.objective(out.r0 + r) = -alpha / layers / s.reinforcements[r].yield_force;
		}
	}
	return out;
}

/// One static LP per outer iteration with N^T X <= relaxation (first iterate) and
/// N~^T X <= relaxation - dN^T X* afterwards.
LimitResult run_static(SystemMatrices const & s, SlaOptions const & options, bool explicit_reinforcement)
{
	StaticLp lp_data = build_static_lp(s, explicit_reinforcement, options.alpha);
	auto & p = lp_data.problem;
	Index const n_x = 3 * s.num_interfaces();
	VectorX const relaxation = explicit_reinforcement ? VectorX::Zero(5 * s.num_interfaces()) : s.R_hat;
	MatrixX const dN = s.delta_N();
	bool const associative = s.associative();

	LimitResult result;
	result.formulation = explicit_reinforcement ? Formulation::Sla1 : Formulation::Sla2;
	result.converged = false;

	LimitResult best;
	double best_violation = std::numeric_limits<double>::infinity();
	VectorX X_prev;
	double lambda_prev = 0;
	int settled_at = -1;

	for (int it = 1; it <= options.max_outer_iterations; ++it)
	{
		if (it == 1)
		{
			p.ineq_matrix.middleCols(1, n_x) = s.N.transpose();
			p.ineq_rhs = relaxation;
		}
		else
		{
			p.ineq_matrix.middleCols(1, n_x) = s.N_tilde.transpose();
			p.ineq_rhs = relaxation - dN.transpose() * X_prev;
		}

		auto const sol = backend_of(options).solve(p, options.lp_tolerances);
		if (sol.status == lp::Status::Unbounded && it == 1)
		{
			result.status = LimitStatus::NoCollapse;
			result.lambda = std::numeric_limits<double>::infinity();
			result.iterations = 1;
			result.converged = true;
			return result;
		}
		if (sol.status == lp::Status::Infeasible && it == 1)
			throw Error(ErrorCode::Infeasible, "dead load alone cannot be equilibrated by admissible interface forces");
		if (!sol.optimal())
		{
			logger().warn("static iteration {} stopped: {}", it, lp::to_string(sol.status));
			if (it == 1)
				throw Error(ErrorCode::NumericalFailure, std::string("static LP failed: ") + lp::to_string(sol.status));
			break;
		}

		LimitResult cur;
		cur.formulation = result.formulation;
		cur.lambda = sol.x(0);
		cur.X = sol.x.segment(1, n_x);
		cur.R = explicit_reinforcement ? VectorX(sol.x.segment(lp_data.r0, lp_data.n_r)) : reconstruct_reinforcement_forces(s, cur.X);
		cur.U = -sol.dual_eq;
		cur.beta = sol.dual_in;
		cur.objective = sol.objective_value;
		cur.iterations = it;
		result.history.push_back(cur.lambda);
		logger().debug("static iteration {}: lambda = {}", it, cur.lambda);

		VectorX const slack = s.N.transpose() * cur.X - relaxation;
		double const violation = std::max(max_violation(slack), std::abs(cur.beta.dot(slack)));
		bool settled = associative;
		if (it > 1)
		{
			double const dl = std::abs(cur.lambda - lambda_prev);
			double const dx = (cur.X - X_prev).cwiseAbs().maxCoeff();
			double const xs = std::max(1.0, cur.X.cwiseAbs().maxCoeff());
			settled = dl <= options.lambda_tol * std::max(1.0, std::abs(cur.lambda)) && dx <= options.x_tol * xs;
		}
		X_prev = cur.X;
		lambda_prev = cur.lambda;

		if (settled && settled_at < 0)
			settled_at = it;
		if (settled_at < 0 || violation < best_violation)
		{
			best_violation = settled_at < 0 ? std::numeric_limits<double>::infinity() : violation;
			best = std::move(cur);
		}
		if (associative || (settled_at > 0 && (best_violation <= options.admissibility_tol || it - settled_at >= options.polish_iterations)))
		{
			best.converged = true;
			break;
		}
	}

	best.history = std::move(result.history);
	if (!best.converged)
		logger().warn("static iteration did not converge in {} steps", options.max_outer_iterations);
	best.status = LimitStatus::Collapse;
	best.V = support_reactions(s, best.X, equilibrium_reinforcement_forces(s, best), best.lambda);
	return best;
}

}  // namespace

LimitResult run_sla1(SystemMatrices const & system, SlaOptions const & options)
{
	return run_static(system, options, true);
}

LimitResult run_sla2(SystemMatrices const & system, SlaOptions const & options)
{
	return run_static(system, options, false);
}

VectorX reconstruct_reinforcement_forces(SystemMatrices const & system, VectorX const & X)
{
	VectorX R(system.num_reinforcements());
	std::vector<std::vector<Index>> by_interface(system.num_interfaces());
	for (Index r = 0; r < R.size(); ++r)
	{
		auto const & info = system.reinforcements[r];
		by_interface[info.interface_index].push_back(r);
		double const rho = system.interfaces[info.interface_index].rho;
		double const N = X(3 * info.interface_index + 1);
		double const M = X(3 * info.interface_index + 2);
		double const moment = info.end == End::End1 ? rho * N - M : rho * N + M;
		R(r) = std::max(0.0, moment / (2 * rho));
	}

	// Separation and sliding rows need the total tension at the interface; any shortfall goes
	// to the reinforcement with the most spare capacity.
	for (Index i = 0; i < system.num_interfaces(); ++i)
	{
		if (by_interface[i].empty())
			continue;
		double const mu = system.interfaces[i].mu;
		double const T = X(3 * i), N = X(3 * i + 1);
		double need = N;
		if (mu > 0)
			need = std::max(need, (std::abs(T) + mu * N) / mu);
		double have = 0;
		Index spare = by_interface[i].front();
		for (Index r : by_interface[i])
		{
			have += R(r);
			if (system.reinforcements[r].limit() - R(r) > system.reinforcements[spare].limit() - R(spare))
				spare = r;
		}
		if (need > have)
			R(spare) += need - have;
	}
	return R;
}

VectorX support_reactions(SystemMatrices const & system, VectorX const & X, VectorX const & R_equilibrium, double lambda)
{
	if (!std::isfinite(lambda))
		return VectorX::Zero(system.B_fixed.cols());
	VectorX V = system.F_dead_fixed + lambda * system.F_live_fixed - system.B_fixed.transpose() * X;
	if (R_equilibrium.size())
		V -= system.C_fixed.transpose() * R_equilibrium;
	return V;
}

VectorX equilibrium_reinforcement_forces(SystemMatrices const & system, LimitResult const & result)
{
	switch (result.formulation)
	{
	case Formulation::Sla1: return result.R;
	case Formulation::Sla2: return VectorX::Zero(system.num_reinforcements());
	case Formulation::Kla: return system.reinforcement_limits();
	}
	return {};
}

LimitResiduals limit_residuals(SystemMatrices const & system, LimitResult const & result)
{
	LimitResiduals out;
	if (!result.collapsed())
		return out;
	VectorX const R_eq = equilibrium_reinforcement_forces(system, result);
	VectorX eq = system.B.transpose() * result.X - system.F_dead - result.lambda * system.F_live;
	if (R_eq.size())
		eq += system.C.transpose() * R_eq;
	out.equilibrium = eq.size() ? eq.cwiseAbs().maxCoeff() : 0.0;

	VectorX const relaxation = result.formulation == Formulation::Sla2 ? system.R_hat : VectorX::Zero(system.R_hat.size());
	VectorX const slack = system.N.transpose() * result.X - relaxation;
	out.admissibility = max_violation(slack);
	if (result.beta.size() == slack.size())
		out.complementarity = std::abs(result.beta.dot(slack));

	if (result.R.size())
	{
		VectorX const limits = system.reinforcement_limits();
		out.reinforcement = std::max(max_violation(-result.R), max_violation(result.R - limits));
	}
	if (result.U.size() == system.F_live.size())
		out.normalisation = std::abs(result.U.dot(system.F_live) - 1);
	return out;
}

}  // namespace blocklim
