#pragma once

// Implementation of blocklim::lp::solve. Included from lp.hpp only.

#include <algorithm>
#include <cmath>
#include <vector>

namespace blocklim::lp
{
template <typename Scalar>
void Problem<Scalar>::check() const
{
	Index const n = num_variables();
	bool const dims_ok = eq_matrix.cols() == n && ineq_matrix.cols() == n && eq_matrix.rows() == eq_rhs.size() &&
		ineq_matrix.rows() == ineq_rhs.size() && lower.size() == n && upper.size() == n;
	if (!dims_ok)
		throw Error(ErrorCode::InvalidModel, "LP dimensions are inconsistent");
	if (!objective.allFinite() || !eq_matrix.allFinite() || !eq_rhs.allFinite() || !ineq_matrix.allFinite() ||
		!ineq_rhs.allFinite())
		throw Error(ErrorCode::InvalidModel, "LP coefficients must be finite");
	for (Index j = 0; j < n; ++j)
		if (std::isnan(lower(j)) || std::isnan(upper(j)) || lower(j) > upper(j) || lower(j) == std::numeric_limits<Scalar>::infinity() ||
			upper(j) == -std::numeric_limits<Scalar>::infinity())
			throw Error(ErrorCode::InvalidModel, "LP bounds are inconsistent");
}

namespace detail
{
/// x_j = shift + sign * x'_pos - x'_neg  (x'_neg only for free variables).
template <typename Scalar>
struct ColumnMap
{
	Index pos = -1;
	Index neg = -1;
	Scalar shift = 0;
	Scalar sign = 1;
};

template <typename Scalar>
class RevisedSimplex
{
public:
	using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
	using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

	RevisedSimplex(Problem<Scalar> const & p, Tolerances const & tol) : problem_(p), tol_(tol) {}

	Solution<Scalar> run()
	{
		build_standard_form();
		Solution<Scalar> sol;

		// Phase 1: minimise the sum of artificials, starting from the all-artificial basis.
		Index const m = a_.rows();
		Index const n = a_.cols();
		basis_.resize(m);
		for (Index i = 0; i < m; ++i)
			basis_[i] = n + i;
		is_basic_.assign(n + m, false);
		for (Index i = 0; i < m; ++i)
			is_basic_[n + i] = true;
		binv_ = Matrix::Identity(m, m);
		x_basic_ = b_;

		Vector phase1_cost = Vector::Zero(n + m);
		phase1_cost.tail(m).setOnes();
		Status status = iterate(phase1_cost);
		if (status != Status::Optimal)
			return finish(sol, status == Status::Unbounded ? Status::NumericalFailure : status);

		Scalar infeasibility = 0;
		for (Index i = 0; i < m; ++i)
			if (basis_[i] >= n)
				infeasibility += x_basic_(i);
		Scalar const b_scale = m ? b_.cwiseAbs().maxCoeff() : Scalar(0);
		if (infeasibility > tol_.feasibility * (1 + b_scale))
			return finish(sol, Status::Infeasible);

		drive_out_artificials();

		Vector phase2_cost = Vector::Zero(n + m);
		phase2_cost.head(n) = c_;
		phase2_ = true;
		status = iterate(phase2_cost);
		if (status != Status::Optimal)
			return finish(sol, status);

		extract(sol, phase2_cost);
		return finish(sol, Status::Optimal);
	}

private:
	void build_standard_form()
	{
		Index const n = problem_.num_variables();
		Index const m_eq = problem_.eq_matrix.rows();
		Index const m_in = problem_.ineq_matrix.rows();
		Scalar const inf = std::numeric_limits<Scalar>::infinity();

		map_.resize(n);
		std::vector<Index> boxed;
		Index cols = 0;
		for (Index j = 0; j < n; ++j)
		{
			Scalar const l = problem_.lower(j);
			Scalar const u = problem_.upper(j);
			ColumnMap<Scalar> & cm = map_[j];
			if (l == -inf && u == inf)
			{
				cm.pos = cols++;
				cm.neg = cols++;
			}
			else if (l == -inf)
			{
				cm.pos = cols++;
				cm.shift = u;
				cm.sign = -1;
			}
			else
			{
				cm.pos = cols++;
				cm.shift = l;
				if (u < inf)
					boxed.push_back(j);
			}
		}
		Index const first_slack = cols;
		cols += m_in + static_cast<Index>(boxed.size());
		Index const m = m_eq + m_in + static_cast<Index>(boxed.size());

		twin_.assign(cols, -1);
		for (ColumnMap<Scalar> const & cm : map_)
			if (cm.neg >= 0)
			{
				twin_[cm.pos] = cm.neg;
				twin_[cm.neg] = cm.pos;
			}

		a_ = Matrix::Zero(m, cols);
		b_ = Vector::Zero(m);
		c_ = Vector::Zero(cols);
		Scalar const obj_sign = problem_.sense == Sense::Maximize ? Scalar(-1) : Scalar(1);

		auto place_row = [&](Index row, auto const & coeffs, Scalar rhs) {
			for (Index j = 0; j < n; ++j)
			{
				Scalar const a = coeffs(j);
				if (a == 0)
					continue;
				ColumnMap<Scalar> const & cm = map_[j];
				a_(row, cm.pos) += a * cm.sign;
				if (cm.neg >= 0)
					a_(row, cm.neg) -= a;
				rhs -= a * cm.shift;
			}
			b_(row) = rhs;
		};

		for (Index i = 0; i < m_eq; ++i)
			place_row(i, problem_.eq_matrix.row(i), problem_.eq_rhs(i));
		for (Index i = 0; i < m_in; ++i)
		{
			place_row(m_eq + i, problem_.ineq_matrix.row(i), problem_.ineq_rhs(i));
			a_(m_eq + i, first_slack + i) = 1;
		}
		for (std::size_t k = 0; k < boxed.size(); ++k)
		{
			Index const row = m_eq + m_in + static_cast<Index>(k);
			Index const j = boxed[k];
			a_(row, map_[j].pos) = 1;
			a_(row, first_slack + m_in + static_cast<Index>(k)) = 1;
			b_(row) = problem_.upper(j) - problem_.lower(j);
		}
		for (Index j = 0; j < n; ++j)
		{
			ColumnMap<Scalar> const & cm = map_[j];
			c_(cm.pos) += obj_sign * problem_.objective(j) * cm.sign;
			if (cm.neg >= 0)
				c_(cm.neg) -= obj_sign * problem_.objective(j);
		}

		// Rows scaled to unit infinity norm, then flipped so that b >= 0.
		row_factor_ = Vector::Ones(m);
		for (Index i = 0; i < m; ++i)
		{
			Scalar const norm = a_.row(i).cwiseAbs().maxCoeff();
			Scalar factor = norm > 0 ? Scalar(1) / norm : Scalar(1);
			if (b_(i) * factor < 0)
				factor = -factor;
			a_.row(i) *= factor;
			b_(i) *= factor;
			row_factor_(i) = factor;
		}
		m_eq_ = m_eq;
		m_in_ = m_in;
	}

	auto column(Index j) const
	{
		Index const n = a_.cols();
		if (j < n)
			return Vector(a_.col(j));
		Vector e = Vector::Zero(a_.rows());
		e(j - n) = 1;
		return e;
	}

	bool refactor()
	{
		Index const m = a_.rows();
		if (m == 0)
			return true;
		Matrix basis_matrix(m, m);
		for (Index i = 0; i < m; ++i)
			basis_matrix.col(i) = column(basis_[i]);
		Eigen::PartialPivLU<Matrix> lu(basis_matrix);
		if (!(lu.rcond() > Scalar(1e-14)))
			return false;
		binv_ = lu.inverse();
		x_basic_ = binv_ * b_;
		Scalar const scale = 1 + b_.cwiseAbs().maxCoeff();
		for (Index i = 0; i < m; ++i)
		{
			if (x_basic_(i) < -1e-6 * scale)
				return false;
			if (x_basic_(i) < 0)
				x_basic_(i) = 0;
		}
		return true;
	}

	void pivot(Index row, Index entering, Vector w, Scalar step)
	{
		x_basic_ -= step * w;
		x_basic_(row) = step;
		Eigen::Matrix<Scalar, 1, Eigen::Dynamic> const pivot_row = binv_.row(row) / w(row);
		w(row) -= 1;
		binv_.noalias() -= w * pivot_row;
		is_basic_[basis_[row]] = false;
		is_basic_[entering] = true;
		basis_[row] = entering;
		++since_refactor_;
	}

	/// Minimise cost over the current basis. Artificial columns may leave but never enter.
	Status iterate(Vector const & cost)
	{
		Index const m = a_.rows();
		Index const n = a_.cols();
		Index degenerate_run = 0;
		bool bland = false;

		for (;;)
		{
			if (iterations_ >= tol_.max_iterations)
				return Status::IterationLimit;
			if (since_refactor_ >= tol_.refactor_interval)
			{
				if (!refactor())
					return Status::NumericalFailure;
				since_refactor_ = 0;
			}

			Vector cost_basic(m);
			for (Index i = 0; i < m; ++i)
				cost_basic(i) = cost(basis_[i]);
			Vector const y = binv_.transpose() * cost_basic;
			Vector const reduced = cost.head(n) - a_.transpose() * y;

			Index entering = -1;
			Scalar const threshold = tol_.optimality * (1 + cost_scale(cost));
			Scalar best = -threshold;
			for (Index j = 0; j < n; ++j)
			{
				// The split halves of a free variable are parallel: one never enters against the other.
				if (is_basic_[j] || !(reduced(j) < -threshold) || (twin_[j] >= 0 && is_basic_[twin_[j]]))
					continue;
				if (bland)
				{
					entering = j;
					break;
				}
				if (reduced(j) < best)
				{
					best = reduced(j);
					entering = j;
				}
			}
			if (entering < 0)
				return Status::Optimal;

			Vector const w = binv_ * a_.col(entering);
			Index leave = -1;
			Scalar step = std::numeric_limits<Scalar>::infinity();
			// A zero-level artificial left over from phase 1 must stay at zero: it blocks in either direction.
			for (Index i = 0; i < m && phase2_; ++i)
			{
				if (basis_[i] >= n && std::abs(w(i)) > tol_.pivot && (leave < 0 || std::abs(w(i)) > std::abs(w(leave))))
				{
					leave = i;
					step = 0;
				}
			}
			if (leave < 0)
			{
				// Harris two-pass ratio test: bound the step with a small feasibility relaxation, then take
				// the largest pivot among the rows that block within that bound.
				Scalar const w_norm = w.cwiseAbs().maxCoeff();
				Scalar const pivot_tol = tol_.pivot * std::max(Scalar(1), w_norm);
				Scalar bound = std::numeric_limits<Scalar>::infinity();
				for (Index i = 0; i < m; ++i)
					if (w(i) > pivot_tol)
						bound = std::min(bound, (std::max(x_basic_(i), Scalar(0)) + tol_.feasibility) / w(i));
				for (Index i = 0; i < m; ++i)
				{
					if (!(w(i) > pivot_tol))
						continue;
					Scalar const ratio = std::max(x_basic_(i), Scalar(0)) / w(i);
					if (ratio > bound)
						continue;
					bool better = leave < 0;
					if (!better)
						better = bland ? basis_[i] < basis_[leave] : w(i) > w(leave);
					if (better)
					{
						leave = i;
						step = ratio;
					}
				}
			}
			if (leave < 0)
			{
				// Confirm the ray on a fresh factorisation before reporting it.
				if (since_refactor_ > 0)
				{
					if (!refactor())
						return Status::NumericalFailure;
					since_refactor_ = 0;
					continue;
				}
				return Status::Unbounded;
			}

			pivot(leave, entering, w, step);
			++iterations_;

			if (step <= Scalar(1e-12))
			{
				if (++degenerate_run > tol_.stall_limit)
					bland = true;
			}
			else
			{
				degenerate_run = 0;
				bland = false;
			}
		}
	}

	Scalar cost_scale(Vector const & cost) const { return cost.size() ? cost.cwiseAbs().maxCoeff() : Scalar(0); }

	void drive_out_artificials()
	{
		Index const m = a_.rows();
		Index const n = a_.cols();
		for (Index i = 0; i < m; ++i)
		{
			if (basis_[i] < n)
				continue;
			Eigen::Matrix<Scalar, 1, Eigen::Dynamic> const row = binv_.row(i) * a_;
			Index best = -1;
			for (Index j = 0; j < n; ++j)
			{
				if (is_basic_[j] || !(std::abs(row(j)) > Scalar(1e-7)))
					continue;
				if (best < 0 || std::abs(row(j)) > std::abs(row(best)))
					best = j;
			}
			// No candidate: the row is redundant and its artificial stays basic at zero.
			if (best >= 0)
				pivot(i, best, binv_ * a_.col(best), Scalar(0));
		}
		if (!refactor())
			since_refactor_ = tol_.refactor_interval;
		else
			since_refactor_ = 0;
	}

	void extract(Solution<Scalar> & sol, Vector const & cost)
	{
		Index const m = a_.rows();
		Index const n = a_.cols();
		Vector x_std = Vector::Zero(n);
		for (Index i = 0; i < m; ++i)
			if (basis_[i] < n)
				x_std(basis_[i]) = x_basic_(i);

		Index const n_orig = problem_.num_variables();
		sol.x.resize(n_orig);
		for (Index j = 0; j < n_orig; ++j)
		{
			ColumnMap<Scalar> const & cm = map_[j];
			sol.x(j) = cm.shift + cm.sign * x_std(cm.pos) - (cm.neg >= 0 ? x_std(cm.neg) : Scalar(0));
		}
		sol.objective_value = problem_.objective.dot(sol.x);

		Vector cost_basic(m);
		for (Index i = 0; i < m; ++i)
			cost_basic(i) = cost(basis_[i]);
		Vector const y = binv_.transpose() * cost_basic;
		Scalar const sense_sign = problem_.sense == Sense::Maximize ? Scalar(-1) : Scalar(1);
		Vector const y_orig = sense_sign * row_factor_.cwiseProduct(y);
		sol.dual_eq = y_orig.head(m_eq_);
		sol.dual_in = y_orig.segment(m_eq_, m_in_);
		sol.reduced_costs = problem_.objective;
		if (m_eq_)
			sol.reduced_costs -= problem_.eq_matrix.transpose() * sol.dual_eq;
		if (m_in_)
			sol.reduced_costs -= problem_.ineq_matrix.transpose() * sol.dual_in;
	}

	Solution<Scalar> finish(Solution<Scalar> & sol, Status status)
	{
		sol.status = status;
		sol.iterations = iterations_;
		return sol;
	}

	Problem<Scalar> const & problem_;
	Tolerances tol_;
	Matrix a_;
	Vector b_, c_;
	Vector row_factor_;
	Index m_eq_ = 0, m_in_ = 0;
	std::vector<ColumnMap<Scalar>> map_;
	std::vector<Index> twin_;  // other half of a split free variable, -1 otherwise
	std::vector<Index> basis_;
	std::vector<bool> is_basic_;
	Matrix binv_;
	Vector x_basic_;
	Index iterations_ = 0;
	Index since_refactor_ = 0;
	bool phase2_ = false;
};
}  // namespace detail

template <typename Scalar>
Solution<Scalar> solve(Problem<Scalar> const & problem, Tolerances const & tol)
{
	problem.check();
	return detail::RevisedSimplex<Scalar>(problem, tol).run();
}

}  // namespace blocklim::lp
