#pragma once

#include <vector>

#include "blocklim/kla.hpp"

namespace blocklim
{
struct TpeOptions
{
	int max_outer_iterations = 100;
	double energy_tol = 1e-8;
	lp::Tolerances lp_tolerances;
	lp::Backend const * backend = nullptr;
	bool check_collapse = true;  // compare lambda_a against the static collapse multiplier first
};

struct SettlementResult
{
	Mechanism mechanism;  // U, beta, openings and hinges of the displaced configuration
	VectorX X;            // compatibility duals of the last iterate
	double energy = 0;
	std::vector<double> energy_history;
	double lambda_a = 0;
	double lambda_collapse = 0;
	int iterations = 0;
	bool converged = false;
	/// Reinforced ends whose opening is negative, i.e. where the at-yield assumption fails.
	std::vector<Hinge> closed_reinforcements;
};

/// min Pi(U) = -(dN beta*)^T X* + Rlim^T C U_full - U^T (F_d + lambda_a F_l)
/// s.t. B U - N beta = delta - dN beta* - B_fixed u,  beta >= 0.
/// Throws AboveCollapse when lambda_a is not below the collapse multiplier and UnboundedEnergy on an unbounded LP.
SettlementResult run_tpe(SystemMatrices const & system, double lambda_a, std::vector<Distortion> const & distortions = {},
	TpeOptions const & options = {});

}  // namespace blocklim
