#include "blocklim/kla.hpp"

#include <limits>

#include "kinematic_lp.hpp"
#include "log.hpp"

namespace blocklim
{
VectorX distortion_vector(SystemMatrices const & system, std::vector<Distortion> const & distortions)
{
	VectorX delta = VectorX::Zero(3 * system.num_interfaces());
	for (Distortion const & d : distortions)
	{
		if (!d.delta.allFinite())
			throw Error(ErrorCode::InvalidModel, "non-finite distortion on interface " + std::to_string(d.interface_id));
		Index const i = system.interface_index(d.interface_id);
		delta.segment<3>(3 * i) += d.delta;
	}
	for (ReinforcementInfo const & r : system.reinforcements)
	{
		Vector3 const d = delta.segment<3>(3 * r.interface_index);
		double const xi = system.interfaces[r.interface_index].xi(r.end);
		if (d(1) + xi * d(2) != 0)
			throw Error(ErrorCode::InvalidModel,
				"distortion opens reinforced end " + std::to_string(end_index(r.end) + 1) + " of interface " + std::to_string(r.interface_id));
	}
	return delta;
}

Mechanism extract_mechanism(LimitResult const & result, SystemMatrices const & system, std::vector<Distortion> const & distortions)
{
	Mechanism m;
	m.U = result.U;
	m.beta = result.beta;
	Index const n_i = system.num_interfaces();
	m.openings = VectorX::Zero(2 * n_i);
	m.slidings = VectorX::Zero(n_i);
	if (!result.collapsed() || m.U.size() != system.num_free_dofs() || m.beta.size() != 5 * n_i)
		return m;

	VectorX const delta = distortions.empty() ? VectorX::Zero(3 * n_i) : distortion_vector(system, distortions);
	m.openings = system.opening_rows() * m.U;
	if (system.u_fixed.size())
		m.openings += system.opening_rows_fixed() * system.u_fixed;
	for (Index i = 0; i < n_i; ++i)
		for (End end : {End::End1, End::End2})
			m.openings(2 * i + end_index(end)) -= delta(3 * i + 1) + system.interfaces[i].xi(end) * delta(3 * i + 2);

	double scale = 0;
	if (m.U.size())
		scale = m.U.cwiseAbs().maxCoeff();
	if (m.beta.size())
		scale = std::max(scale, m.beta.cwiseAbs().maxCoeff());
	m.tolerance = 1e-8 * scale;

	for (Index i = 0; i < n_i; ++i)
	{
		auto const b = m.beta.segment<5>(5 * i);
		int const id = system.interfaces[i].id;
		m.slidings(i) = b(1) - b(2);
		if (b(0) > m.tolerance)
			m.opened.push_back(id);
		if (b(1) + b(2) > m.tolerance)
			m.sliding.push_back(id);
		if (b(3) > m.tolerance)
			m.hinges.push_back({id, End::End1});
		if (b(4) > m.tolerance)
			m.hinges.push_back({id, End::End2});
	}
	return m;
}

KlaOutput run_kla(SystemMatrices const & s, std::vector<Distortion> const & distortions, KlaOptions const & options)
{
	lp::Backend const & backend = options.backend ? *options.backend : lp::default_backend();
	Index const n_u = s.num_free_dofs();
	Index const n_c = 3 * s.num_interfaces();
	Index const n_b = 5 * s.num_interfaces();

	VectorX const cost = reinforcement_work(s) - s.F_dead;
	VectorX const base = distortion_vector(s, distortions) - s.settlement_offset();
	MatrixX const dN = s.delta_N();
	bool const associative = s.associative();

	VectorX beta_star = VectorX::Zero(n_b);
	VectorX X_star = VectorX::Zero(n_c);
	double objective_prev = std::numeric_limits<double>::quiet_NaN();

	LimitResult result;
	result.formulation = Formulation::Kla;
	result.converged = false;
	std::vector<double> history;

	for (int it = 1; it <= options.max_outer_iterations; ++it)
	{
		VectorX const h = base - dN * beta_star;
		auto const sol = backend.solve(kinematic_lp(s, cost, h, true), options.lp_tolerances);
		if (sol.status == lp::Status::Infeasible && it == 1)
		{
			result.status = LimitStatus::NoCollapse;
			result.lambda = std::numeric_limits<double>::infinity();
			result.iterations = 1;
			result.converged = true;
			return {result, extract_mechanism(result, s, distortions)};
		}
		if (sol.status == lp::Status::Unbounded && it == 1)
			throw Error(ErrorCode::Infeasible, "dead load alone cannot be equilibrated by admissible interface forces");
		if (!sol.optimal())
		{
			logger().warn("kinematic iteration {} stopped: {}", it, lp::to_string(sol.status));
			if (it == 1)
				throw Error(ErrorCode::NumericalFailure, std::string("kinematic LP failed: ") + lp::to_string(sol.status));
			break;
		}

		double const objective = sol.objective_value + h.dot(X_star);
		result.U = sol.x.head(n_u);
		result.beta = sol.x.tail(n_b);
		result.X = -sol.dual_eq.head(n_c);
		result.lambda = sol.dual_eq(n_c);
		result.objective = objective;
		result.iterations = it;
		history.push_back(result.lambda);
		logger().debug("kinematic iteration {}: lambda = {}, objective = {}", it, result.lambda, objective);

		bool const converged = associative
			|| (it > 1 && std::abs(objective - objective_prev) <= options.objective_tol * std::max(1.0, std::abs(objective)));
		objective_prev = objective;
		beta_star = result.beta;
		X_star = result.X;
		if (converged)
		{
			result.converged = true;
			break;
		}
	}
	if (!result.converged)
		logger().warn("kinematic iteration did not converge in {} steps", options.max_outer_iterations);

	result.history = std::move(history);
	result.status = LimitStatus::Collapse;
	result.R = s.reinforcement_limits();
	result.V = support_reactions(s, result.X, result.R, result.lambda);
	return {result, extract_mechanism(result, s, distortions)};
}

}  // namespace blocklim
