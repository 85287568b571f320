#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace blocklim
{
template <typename Scalar>
using Point2 = Eigen::Matrix<Scalar, 2, 1>;

using Vector2 = Eigen::Vector2d;
using Vector3 = Eigen::Vector3d;
using VectorX = Eigen::VectorXd;
using MatrixX = Eigen::MatrixXd;
using Index = Eigen::Index;

enum class ErrorCode
{
	DegeneratePolygon,
	ZeroLengthInterface,
	NoFixedBlock,
	DanglingReference,
	InvalidModel,
	UnknownInterface,
	InvalidEnd,
	Infeasible,
	NumericalFailure,
	AboveCollapse,
	UnboundedEnergy,
	NoOpening,
	TargetUnreachable,
	ParseError,
};

const char * to_string(ErrorCode code);

/// Every failure raised by the library carries a machine-readable code.
class Error : public std::runtime_error
{
public:
	Error(ErrorCode code, const std::string & what) : std::runtime_error(what), code_(code) {}
	ErrorCode code() const noexcept { return code_; }

private:
	ErrorCode code_;
};

/// Interface extremity: End1 sits at xi = -L/2, End2 at xi = +L/2 (xi runs along t).
enum class End
{
	End1 = 1,
	End2 = 2,
};

inline int end_index(End end) { return end == End::End1 ? 0 : 1; }

}  // namespace blocklim
