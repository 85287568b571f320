#pragma once

// Independent reference computations shared by the unit tests and the acceptance runner.

#include <cmath>
#include <limits>
#include <optional>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "blocklim/assembly.hpp"
#include "blocklim/lp.hpp"
#include "blocklim/model.hpp"

namespace oracle
{
using blocklim::Index;
using blocklim::MatrixX;
using blocklim::Vector2;
using blocklim::Vector3;
using blocklim::VectorX;
using Problem = blocklim::lp::Problem<double>;

inline double binomial(int n, int k)
{
	double r = 1;
	for (int i = 1; i <= k; ++i)
		r = r * (n - k + i) / i;
	return r;
}

/// Bounded random LP: every variable has a finite lower bound and one row sums all of them,
/// so a nonempty feasible set is a polytope and its optimum sits at a vertex.
inline Problem random_lp(std::mt19937_64 & rng, double max_vertices = 3e5)
{
	auto uniform = [&](double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); };
	auto integer = [&](int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng); };
	for (;;)
	{
		int const n = integer(1, 10);
		int const m = integer(1, 15);
		int const n_eq_used = integer(0, std::min({3, n - 1, m - 1}));
		int const n_in = m - n_eq_used;

		Problem p = Problem::with_variables(n, n_eq_used, n_in);
		p.sense = integer(0, 1) ? blocklim::lp::Sense::Maximize : blocklim::lp::Sense::Minimize;
		int finite_upper = 0;
		for (int j = 0; j < n; ++j)
		{
			p.objective(j) = std::round(uniform(-5, 5) * 4) / 4;
			p.lower(j) = integer(0, 3) ? 0.0 : std::round(uniform(-3, 0) * 2) / 2;
			if (integer(0, 4) == 0)
			{
				p.upper(j) = p.lower(j) + std::round(uniform(0.5, 6) * 2) / 2;
				++finite_upper;
			}
		}
		for (int i = 0; i < n_in; ++i)
		{
			for (int j = 0; j < n; ++j)
				p.ineq_matrix(i, j) = integer(0, 2) ? std::round(uniform(-4, 4)) : 0.0;
			p.ineq_rhs(i) = std::round(uniform(-2, 12));
		}
		p.ineq_matrix.row(0).setOnes();
		p.ineq_rhs(0) = std::round(uniform(1, 15));
		for (int i = 0; i < n_eq_used; ++i)
		{
			for (int j = 0; j < n; ++j)
				p.eq_matrix(i, j) = std::round(uniform(-3, 3));
			p.eq_rhs(i) = std::round(uniform(-2, 4));
		}
		int const candidates = n_in + n + finite_upper;
		int const choose = n - n_eq_used;
		if (choose >= 0 && binomial(candidates, choose) <= max_vertices)
			return p;
	}
}

struct EnumerationResult
{
	bool feasible = false;
	double objective = 0;
	VectorX x;
};

/// Brute force over all vertices: every choice of n - n_eq active rows among the inequality
/// rows and finite bounds, solved together with the equality rows.
inline EnumerationResult enumerate_vertices(Problem const & p, double feas_tol = 1e-9)
{
	Index const n = p.num_variables();
	Index const n_eq = p.eq_rhs.size();

	MatrixX rows(0, n);
	VectorX rhs(0);
	auto push = [&](Eigen::RowVectorXd const & a, double b) {
		rows.conservativeResize(rows.rows() + 1, n);
		rhs.conservativeResize(rhs.size() + 1);
		rows.row(rows.rows() - 1) = a;
		rhs(rhs.size() - 1) = b;
	};
	for (Index i = 0; i < p.ineq_rhs.size(); ++i)
		push(p.ineq_matrix.row(i), p.ineq_rhs(i));
	for (Index j = 0; j < n; ++j)
	{
		Eigen::RowVectorXd e = Eigen::RowVectorXd::Zero(n);
		e(j) = 1;
		if (std::isfinite(p.lower(j)))
			push(e, p.lower(j));
		if (std::isfinite(p.upper(j)))
			push(e, p.upper(j));
	}

	EnumerationResult best;
	bool const maximize = p.sense == blocklim::lp::Sense::Maximize;
	Index const k = n - n_eq;
	Index const total = rows.rows();
	if (k < 0 || k > total)
		return best;

	std::vector<Index> pick(k);
	for (Index i = 0; i < k; ++i)
		pick[i] = i;
	MatrixX A(n, n);
	VectorX b(n);
	for (;;)
	{
		if (n_eq)
		{
			A.topRows(n_eq) = p.eq_matrix;
			b.head(n_eq) = p.eq_rhs;
		}
		for (Index i = 0; i < k; ++i)
		{
			A.row(n_eq + i) = rows.row(pick[i]);
			b(n_eq + i) = rhs(pick[i]);
		}
		Eigen::FullPivLU<MatrixX> lu(A);
		if (lu.rank() == n)
		{
			VectorX const x = lu.solve(b);
			if (blocklim::lp::primal_residual(p, x) <= feas_tol * std::max(1.0, x.cwiseAbs().maxCoeff()))
			{
				double const obj = p.objective.dot(x);
				if (!best.feasible || (maximize ? obj > best.objective : obj < best.objective))
					best = {true, obj, x};
			}
		}
		Index i = k - 1;
		while (i >= 0 && pick[i] == total - k + i)
			--i;
		if (i < 0)
			break;
		++pick[i];
		for (Index j = i + 1; j < k; ++j)
			pick[j] = pick[j - 1] + 1;
	}
	return best;
}

/// |primal objective - dual objective| with dual feasibility folded in (a sign violation or a
/// reduced cost against an infinite bound counts as an infinite gap).
inline double duality_gap(Problem const & p, blocklim::lp::Solution<double> const & s, double tol = 1e-9)
{
	bool const maximize = p.sense == blocklim::lp::Sense::Maximize;
	double const inf = std::numeric_limits<double>::infinity();
	double dual = 0;
	if (p.eq_rhs.size())
		dual += p.eq_rhs.dot(s.dual_eq);
	for (Index i = 0; i < p.ineq_rhs.size(); ++i)
	{
		if ((maximize && s.dual_in(i) < -tol) || (!maximize && s.dual_in(i) > tol))
			return inf;
		dual += p.ineq_rhs(i) * s.dual_in(i);
	}
	VectorX const rc = p.objective - p.eq_matrix.transpose() * s.dual_eq - p.ineq_matrix.transpose() * s.dual_in;
	for (Index j = 0; j < p.num_variables(); ++j)
	{
		if (std::abs(rc(j)) <= tol)
			continue;
		bool const to_upper = maximize ? rc(j) > 0 : rc(j) < 0;
		double const bound = to_upper ? p.upper(j) : p.lower(j);
		if (!std::isfinite(bound))
			return inf;
		dual += rc(j) * bound;
	}
	return std::abs(p.objective.dot(s.x) - dual);
}

/// Relative displacement (t, n, rotation) of block k with respect to block j at `point`, by
/// central differences of exact finite rigid motions eps * (u, v, phi) about the centroids.
inline Vector3 fd_relative_motion(Vector2 const & point, Vector2 const & t, Vector2 const & n, Vector2 const & cj, Vector2 const & ck,
	Vector3 const & uj, Vector3 const & uk, double eps = 1e-6)
{
	auto moved = [](Vector2 const & p, Vector2 const & c, Vector3 const & u, double s) {
		double const a = s * u(2);
		Eigen::Matrix2d R;
		R << std::cos(a), -std::sin(a), std::sin(a), std::cos(a);
		return Vector2(c + R * (p - c) + s * u.head<2>());
	};
	Vector2 const d = ((moved(point, ck, uk, eps) - moved(point, cj, uj, eps)) - (moved(point, ck, uk, -eps) - moved(point, cj, uj, -eps))) / (2 * eps);
	return {t.dot(d), n.dot(d), uk(2) - uj(2)};
}

inline Vector2 shoelace_centroid(std::vector<Vector2> const & v)
{
	double a2 = 0;
	Vector2 m = Vector2::Zero();
	for (std::size_t i = 0; i < v.size(); ++i)
	{
		Vector2 const & p = v[i];
		Vector2 const & q = v[(i + 1) % v.size()];
		double const c = p.x() * q.y() - q.x() * p.y();
		a2 += c;
		m += c * (p + q);
	}
	return m / (3 * a2);
}

/// Two quadrilaterals sharing a random edge p1 -> p2: block 1 (fixed) on the -n side, block 2
/// (free) on the +n side, reinforced at both ends of the joint.
inline blocklim::StructuralModel random_joint(std::mt19937_64 & rng)
{
	auto uniform = [&](double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); };
	Vector2 const p1(uniform(-10, 10), uniform(-10, 10));
	double const angle = uniform(-M_PI, M_PI);
	double const length = uniform(0.2, 5);
	Vector2 const t(std::cos(angle), std::sin(angle));
	Vector2 const n(-t.y(), t.x());
	Vector2 const p2 = p1 + length * t;
	auto side = [&](double sign) {
		double const h1 = uniform(0.2, 4), h2 = uniform(0.2, 4);
		double const s1 = uniform(-0.3, 0.3) * length, s2 = uniform(-0.3, 0.3) * length;
		return std::pair{Vector2(p1 + sign * h1 * n + s1 * t), Vector2(p2 + sign * h2 * n + s2 * t)};
	};
	auto const [b1, b2] = side(-1);
	auto const [a1, a2] = side(1);

	blocklim::StructuralModel m;
	m.blocks.push_back({1, {b1, b2, p2, p1}, std::nullopt, Vector3::Zero(), Vector3::Zero(), true});
	m.blocks.push_back({2, {p1, p2, a2, a1}, std::nullopt, Vector3::Zero(), Vector3::Zero(), false});
	blocklim::Interface itf;
	itf.id = 1;
	itf.block_j = 1;
	itf.block_k = 2;
	itf.p1 = p1;
	itf.p2 = p2;
	m.interfaces.push_back(itf);
	m.supports.push_back({1, Vector3::Zero()});
	m.live_load_rules.push_back(blocklim::PointLoad{2, Vector3(1, 0, 0)});
	m.reinforcements.push_back({1, blocklim::End::End1, 1, std::nullopt});
	m.reinforcements.push_back({1, blocklim::End::End2, 1, std::nullopt});
	return m;
}

/// Max error of the assembled compatibility rows (B, B_fixed) and reinforcement opening rows
/// (C, C_fixed) of a random joint against finite-difference rigid-body kinematics.
inline double kinematic_assembly_error(std::mt19937_64 & rng)
{
	blocklim::StructuralModel const m = random_joint(rng);
	blocklim::SystemMatrices const s = blocklim::assemble_system(m);
	Vector2 const p1 = m.interfaces[0].p1, p2 = m.interfaces[0].p2;
	Vector2 const t = (p2 - p1).normalized();
	Vector2 const n(-t.y(), t.x());
	Vector2 const cj = shoelace_centroid(m.blocks[0].vertices);
	Vector2 const ck = shoelace_centroid(m.blocks[1].vertices);
	Vector2 const center = (p1 + p2) / 2;

	double err = 0;
	for (int d = 0; d < 6; ++d)
	{
		Vector3 uj = Vector3::Zero(), uk = Vector3::Zero();
		(d < 3 ? uj : uk)(d % 3) = 1;
		Vector3 const expected = fd_relative_motion(center, t, n, cj, ck, uj, uk);
		VectorX const column = d < 3 ? VectorX(s.B_fixed.col(d)) : VectorX(s.B.col(d - 3));
		err = std::max(err, (column - expected).cwiseAbs().maxCoeff());
		for (int r = 0; r < 2; ++r)
		{
			Vector2 const & end = r == 0 ? p1 : p2;
			double const opening = fd_relative_motion(end, t, n, cj, ck, uj, uk)(1);
			double const row = d < 3 ? s.C_fixed(r, d) : s.C(r, d - 3);
			err = std::max(err, std::abs(row - opening));
		}
	}
	return err;
}

}  // namespace oracle
