#pragma once

#include <vector>

#include "blocklim/assembly.hpp"
#include "blocklim/lp.hpp"

namespace blocklim
{
enum class LimitStatus
{
	Collapse,
	NoCollapse,  // the live load never produces a mechanism
};

enum class Formulation
{
	Sla1,  // reinforcement forces explicit
	Sla2,  // reinforcement folded into the admissible domain
	Kla,   // kinematic; reinforcements at their limit
};

/// Output of every limit analysis. Statics (X, V, R) and kinematics (U, beta) are both filled:
/// the static formulations recover kinematics from LP duals and the kinematic one recovers X.
struct LimitResult
{
	Formulation formulation = Formulation::Sla1;
	LimitStatus status = LimitStatus::Collapse;
	double lambda = 0;
	VectorX X;     // per interface (T, N, M)
	VectorX V;     // reactions on fixed blocks
	VectorX R;     // per reinforcement, total over layers
	VectorX U;     // free block motion rates, normalised so that U^T F_live = 1
	VectorX beta;  // per interface (s, du+, du-, theta+, theta-)
	int iterations = 0;
	bool converged = true;
	std::vector<double> history;  // lambda per outer iteration
	double objective = 0;         // LP objective of the final iterate

	bool collapsed() const { return status == LimitStatus::Collapse; }
};

struct SlaOptions
{
	double alpha = 0;
	int max_outer_iterations = 200;
	double lambda_tol = 1e-6;
	double x_tol = 1e-6;
	/// After the iterates settle, keep iterating (at most `polish_iterations` more) until the
	/// yield-condition violation and the complementarity gap of an iterate drop below this.
	double admissibility_tol = 1e-10;
	int polish_iterations = 100;
	lp::Tolerances lp_tolerances;
	lp::Backend const * backend = nullptr;  // null: built-in simplex
};

/// max lambda - alpha / N_layers * sum R_r / R_y,r  over (lambda, X, R) with explicit reinforcement forces.
LimitResult run_sla1(SystemMatrices const & system, SlaOptions const & options = {});

/// max lambda with the reinforcement capacity folded into the admissible domain (N^T X <= R_hat).
LimitResult run_sla2(SystemMatrices const & system, SlaOptions const & options = {});

/// Minimal tensile forces consistent with total interface forces X: R = max(0, (rho N - M) / 2 rho)
/// at end 1, max(0, (rho N + M) / 2 rho) at end 2, topped up until the joint total covers the
/// separation (N) and sliding ((|T| + mu N) / mu) rows.
VectorX reconstruct_reinforcement_forces(SystemMatrices const & system, VectorX const & X);

/// Support reactions from the fixed-block equilibrium rows.
VectorX support_reactions(SystemMatrices const & system, VectorX const & X, VectorX const & R_equilibrium, double lambda);

struct LimitResiduals
{
	double equilibrium = 0;     // |B^T X + C^T R - F_d - lambda F_l|_inf over free DOFs
	double admissibility = 0;   // max(0, N^T X - relaxation)
	double complementarity = 0; // |beta^T (N^T X - relaxation)|
	double reinforcement = 0;   // violation of 0 <= R <= limit
	double normalisation = 0;   // |U^T F_l - 1|
};

/// Residuals of the limit-analysis optimality conditions for the result's own formulation
/// (SLA2 measures admissibility against R_hat, KLA balances with every reinforcement at its limit).
LimitResiduals limit_residuals(SystemMatrices const & system, LimitResult const & result);

/// Forces that enter equilibrium in the result's formulation.
VectorX equilibrium_reinforcement_forces(SystemMatrices const & system, LimitResult const & result);

}  // namespace blocklim
