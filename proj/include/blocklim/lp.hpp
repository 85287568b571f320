#pragma once

#include <iosfwd>
#include <limits>
#include <memory>

#include "blocklim/types.hpp"

namespace blocklim::lp
{
enum class Sense
{
	Minimize,
	Maximize,
};

enum class Status
{
	Optimal,
	Infeasible,
	Unbounded,
	IterationLimit,
	NumericalFailure,
};

const char * to_string(Status status);

/// optimise c^T x  s.t.  A_eq x = b_eq,  A_in x <= b_in,  lower <= x <= upper.
/// Bounds may be +-infinity. Variables default to x >= 0.
template <typename Scalar>
struct Problem
{
	using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
	using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

	Sense sense = Sense::Minimize;
	Vector objective;
	Matrix eq_matrix;
	Vector eq_rhs;
	Matrix ineq_matrix;
	Vector ineq_rhs;
	Vector lower;
	Vector upper;

	/// n variables (x >= 0), no constraints yet.
	static Problem with_variables(Index n_vars, Index n_eq = 0, Index n_ineq = 0)
	{
		Problem p;
		p.objective = Vector::Zero(n_vars);
		p.eq_matrix = Matrix::Zero(n_eq, n_vars);
		p.eq_rhs = Vector::Zero(n_eq);
		p.ineq_matrix = Matrix::Zero(n_ineq, n_vars);
		p.ineq_rhs = Vector::Zero(n_ineq);
		p.lower = Vector::Zero(n_vars);
		p.upper = Vector::Constant(n_vars, std::numeric_limits<Scalar>::infinity());
		return p;
	}

	Index num_variables() const { return objective.size(); }
	void set_free(Index j)
	{
		lower(j) = -std::numeric_limits<Scalar>::infinity();
		upper(j) = std::numeric_limits<Scalar>::infinity();
	}

	/// Throws Error(InvalidModel) on inconsistent dimensions or non-finite coefficients.
	void check() const;
};

/// Dual values are shadow prices, d(optimal objective)/d(rhs), in the problem's own sense:
/// for Maximize with `<=` rows dual_in >= 0, for Minimize dual_in <= 0.
/// reduced_costs = c - A_eq^T dual_eq - A_in^T dual_in, so at an optimum
/// c^T x = b_eq^T dual_eq + b_in^T dual_in + reduced_costs^T x.
template <typename Scalar>
struct Solution
{
	using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

	Status status = Status::NumericalFailure;
	Vector x;
	Scalar objective_value = 0;
	Vector dual_eq;
	Vector dual_in;
	Vector reduced_costs;
	Index iterations = 0;

	bool optimal() const { return status == Status::Optimal; }
};

struct Tolerances
{
	double feasibility = 1e-9;
	double optimality = 1e-9;
	double pivot = 1e-9;
	Index max_iterations = 200000;
	/// Consecutive degenerate pivots before switching to Bland's rule.
	Index stall_limit = 50;
	Index refactor_interval = 64;
};

/// Dense two-phase revised simplex with an explicitly maintained basis inverse.
/// Deterministic: Dantzig pricing, smallest-index tie breaks, Bland's rule after a stall.
template <typename Scalar>
Solution<Scalar> solve(Problem<Scalar> const & problem, Tolerances const & tol = {});

/// Pluggable backend contract used by the analyses.
class Backend
{
public:
	virtual ~Backend() = default;
	virtual Solution<double> solve(Problem<double> const & problem, Tolerances const & tol) const = 0;
};

class SimplexBackend final : public Backend
{
public:
	Solution<double> solve(Problem<double> const & problem, Tolerances const & tol) const override;
};

Backend const & default_backend();

/// CPLEX-LP text dump for cross-checking with external solvers.
void write_lp_format(std::ostream & out, Problem<double> const & problem);

/// Primal infeasibility of x (max violation over rows and bounds).
template <typename Scalar>
Scalar primal_residual(Problem<Scalar> const & problem, Eigen::Matrix<Scalar, Eigen::Dynamic, 1> const & x)
{
	Scalar r = 0;
	if (problem.eq_rhs.size())
		r = std::max(r, (problem.eq_matrix * x - problem.eq_rhs).cwiseAbs().maxCoeff());
	if (problem.ineq_rhs.size())
		r = std::max(r, (problem.ineq_matrix * x - problem.ineq_rhs).maxCoeff());
	if (x.size())
	{
		r = std::max(r, (problem.lower - x).maxCoeff());
		r = std::max(r, (x - problem.upper).maxCoeff());
	}
	return r;
}

extern template struct Problem<double>;
extern template Solution<double> solve<double>(Problem<double> const &, Tolerances const &);

}  // namespace blocklim::lp

#include "blocklim/detail/simplex.hpp"
