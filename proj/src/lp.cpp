#include "blocklim/lp.hpp"

#include <ostream>

namespace blocklim::lp
{
template struct Problem<double>;
template Solution<double> solve<double>(Problem<double> const &, Tolerances const &);

const char * to_string(Status status)
{
	switch (status)
	{
	case Status::Optimal: return "Optimal";
	case Status::Infeasible: return "Infeasible";
	case Status::Unbounded: return "Unbounded";
	case Status::IterationLimit: return "IterationLimit";
	case Status::NumericalFailure: return "NumericalFailure";
	}
	return "Unknown";
}

Solution<double> SimplexBackend::solve(Problem<double> const & problem, Tolerances const & tol) const
{
	return lp::solve(problem, tol);
}

Backend const & default_backend()
{
	static SimplexBackend const backend;
	return backend;
}

namespace
{
void write_row(std::ostream & out, Eigen::Ref<const Eigen::RowVectorXd> row)
{
	bool first = true;
	for (Index j = 0; j < row.size(); ++j)
	{
		if (row(j) == 0)
			continue;
		out << (row(j) < 0 ? " - " : (first ? " " : " + ")) << std::abs(row(j)) << " x" << j;
		first = false;
	}
	if (first)
		out << " 0 x0";
}
}  // namespace

void write_lp_format(std::ostream & out, Problem<double> const & problem)
{
	auto const precision = out.precision(17);
	out << (problem.sense == Sense::Maximize ? "Maximize\n" : "Minimize\n") << " obj:";
	write_row(out, problem.objective.transpose());
	out << "\nSubject To\n";
	for (Index i = 0; i < problem.eq_matrix.rows(); ++i)
	{
		out << " e" << i << ":";
		write_row(out, problem.eq_matrix.row(i));
		out << " = " << problem.eq_rhs(i) << '\n';
	}
	for (Index i = 0; i < problem.ineq_matrix.rows(); ++i)
	{
		out << " i" << i << ":";
		write_row(out, problem.ineq_matrix.row(i));
		out << " <= " << problem.ineq_rhs(i) << '\n';
	}
	out << "Bounds\n";
	for (Index j = 0; j < problem.num_variables(); ++j)
	{
		double const l = problem.lower(j);
		double const u = problem.upper(j);
		if (std::isinf(l) && std::isinf(u))
			out << " x" << j << " free\n";
		else if (std::isinf(u))
			out << ' ' << l << " <= x" << j << '\n';
		else if (std::isinf(l))
			out << " -inf <= x" << j << " <= " << u << '\n';
		else
			out << ' ' << l << " <= x" << j << " <= " << u << '\n';
	}
	out << "End\n";
	out.precision(precision);
}

}  // namespace blocklim::lp
