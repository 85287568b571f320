#include "blocklim/tpe.hpp"

#include <limits>

#include "kinematic_lp.hpp"
#include "log.hpp"

namespace blocklim
{
SettlementResult run_tpe(SystemMatrices const & s, double lambda_a, std::vector<Distortion> const & distortions, TpeOptions const & options)
{
	lp::Backend const & backend = options.backend ? *options.backend : lp::default_backend();
	Index const n_u = s.num_free_dofs();
	Index const n_c = 3 * s.num_interfaces();
	Index const n_b = 5 * s.num_interfaces();

	SettlementResult out;
	out.lambda_a = lambda_a;
	out.lambda_collapse = std::numeric_limits<double>::infinity();
	if (options.check_collapse)
	{
		SlaOptions sla;
		sla.lp_tolerances = options.lp_tolerances;
		sla.backend = options.backend;
		LimitResult const limit = run_sla1(s, sla);
		if (limit.collapsed())
			out.lambda_collapse = limit.lambda;
		if (lambda_a >= out.lambda_collapse)
			throw Error(ErrorCode::AboveCollapse,
				"live multiplier " + std::to_string(lambda_a) + " is not below the collapse multiplier " + std::to_string(out.lambda_collapse));
	}

	VectorX const limits = s.reinforcement_limits();
	VectorX const cost = reinforcement_work(s) - s.F_dead - lambda_a * s.F_live;
	double const fixed_work = s.num_reinforcements() && s.u_fixed.size() ? limits.dot(s.C_fixed * s.u_fixed) : 0.0;
	VectorX const base = distortion_vector(s, distortions) - s.settlement_offset();
	MatrixX const dN = s.delta_N();
	bool const associative = s.associative();
	double const floor = 1e-14 * s.load_scale() * (1 + (s.u_fixed.size() ? s.u_fixed.cwiseAbs().maxCoeff() : 0.0));

	VectorX beta_star = VectorX::Zero(n_b);
	VectorX X_star = VectorX::Zero(n_c);
	LimitResult state;
	state.formulation = Formulation::Kla;

	for (int it = 1; it <= options.max_outer_iterations; ++it)
	{
		VectorX const shift = dN * beta_star;
		auto const sol = backend.solve(kinematic_lp(s, cost, base - shift, false), options.lp_tolerances);
		if (sol.status == lp::Status::Unbounded)
			throw Error(ErrorCode::UnboundedEnergy, "total potential energy is unbounded below: a mechanism releases energy at lambda_a");
		if (sol.status == lp::Status::Infeasible)
			throw Error(ErrorCode::Infeasible, "prescribed settlements are not kinematically admissible");
		if (!sol.optimal())
		{
			logger().warn("energy iteration {} stopped: {}", it, lp::to_string(sol.status));
			if (it == 1)
				throw Error(ErrorCode::NumericalFailure, std::string("energy LP failed: ") + lp::to_string(sol.status));
			break;
		}

		double const energy = sol.objective_value + fixed_work - shift.dot(X_star);
		state.U = sol.x.head(n_u);
		state.beta = sol.x.tail(n_b);
		out.X = -sol.dual_eq;
		out.iterations = it;
		out.energy_history.push_back(energy);
		logger().debug("energy iteration {}: Pi = {}", it, energy);

		bool converged = associative;
		if (it > 1)
		{
			double const prev = out.energy_history[it - 2];
			converged = std::abs(energy - prev) <= std::max(options.energy_tol * std::max(std::abs(energy), std::abs(prev)), floor);
		}
		out.energy = energy;
		beta_star = state.beta;
		X_star = out.X;
		if (converged)
		{
			out.converged = true;
			break;
		}
	}
	if (!out.converged)
		logger().warn("energy iteration did not converge in {} steps", options.max_outer_iterations);

	out.mechanism = extract_mechanism(state, s, distortions);
	for (ReinforcementInfo const & r : s.reinforcements)
		if (out.mechanism.opening(r.interface_index, r.end) < -std::max(out.mechanism.tolerance, 1e-12))
			out.closed_reinforcements.push_back({r.interface_id, r.end});
	return out;
}

}  // namespace blocklim
