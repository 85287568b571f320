#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>

#include "blocklim/types.hpp"

namespace blocklim
{
template <typename Scalar>
struct PolygonProperties
{
	Scalar area;
	Point2<Scalar> centroid;
	bool reoriented;  // input was clockwise
};

/// Shoelace area and centroid. Clockwise input is accepted; the returned area is
/// always positive and `reoriented` reports the flip.
template <typename Scalar>
PolygonProperties<Scalar> polygon_properties(std::span<const Point2<Scalar>> vertices, Scalar tol)
{
	if (vertices.size() < 3)
		throw Error(ErrorCode::DegeneratePolygon, "polygon needs at least 3 vertices");

	Scalar twice_area = 0;
	Point2<Scalar> moment = Point2<Scalar>::Zero();
	// Accumulate relative to the first vertex to keep cancellation small.
	Point2<Scalar> const origin = vertices[0];
	for (std::size_t i = 0; i < vertices.size(); ++i)
	{
		Point2<Scalar> const a = vertices[i] - origin;
		Point2<Scalar> const b = vertices[(i + 1) % vertices.size()] - origin;
		Scalar const cross = a.x() * b.y() - b.x() * a.y();
		twice_area += cross;
		moment += cross * (a + b);
	}
	if (std::abs(twice_area) / 2 < tol)
		throw Error(ErrorCode::DegeneratePolygon, "polygon has (near) zero area");

	Point2<Scalar> const centroid = origin + moment / (3 * twice_area);
	return {std::abs(twice_area) / 2, centroid, twice_area < 0};
}

template <typename Scalar>
struct InterfaceFrame
{
	Point2<Scalar> t;
	Point2<Scalar> n;
	Point2<Scalar> center;
	Scalar rho;
};

/// Local frame of a straight interface from p1 (xi = -rho) to p2 (xi = +rho);
/// n is t rotated counter-clockwise.
template <typename Scalar>
InterfaceFrame<Scalar> interface_frame(Point2<Scalar> const & p1, Point2<Scalar> const & p2, Scalar tol)
{
	Point2<Scalar> const d = p2 - p1;
	Scalar const length = d.norm();
	if (!(length > tol))
		throw Error(ErrorCode::ZeroLengthInterface, "interface endpoints coincide");
	Point2<Scalar> const t = d / length;
	return {t, Point2<Scalar>(-t.y(), t.x()), (p1 + p2) / 2, length / 2};
}

/// Maps the rigid motions (U, V, Phi) of blocks j and k to the relative displacement
/// (tangential, normal, rotation) of k with respect to j at the interface center.
template <typename Scalar>
Eigen::Matrix<Scalar, 3, 6> interface_compatibility(
	InterfaceFrame<Scalar> const & frame, Point2<Scalar> const & centroid_j, Point2<Scalar> const & centroid_k)
{
	Eigen::Matrix<Scalar, 3, 6> lever;
	Point2<Scalar> const cj = frame.center - centroid_j;
	Point2<Scalar> const ck = frame.center - centroid_k;
	// clang-format off
	lever << -1,  0,  cj.y(), 1, 0, -ck.y(),
	          0, -1, -cj.x(), 0, 1,  ck.x(),
	          0,  0,      -1, 0, 0,       1;
	// clang-format on
	Eigen::Matrix<Scalar, 3, 3> rotation = Eigen::Matrix<Scalar, 3, 3>::Identity();
	rotation.template block<1, 2>(0, 0) = frame.t.transpose();
	rotation.template block<1, 2>(1, 0) = frame.n.transpose();
	return rotation * lever;
}

/// Flow / admissibility matrix of one interface. Rows (du, dv, theta), columns
/// (s, du+, du-, theta+, theta-). `coeff` is mu for N_i and the dilatancy for N~_i.
template <typename Scalar>
Eigen::Matrix<Scalar, 3, 5> flow_matrix(Scalar coeff, Scalar rho)
{
	Eigen::Matrix<Scalar, 3, 5> m;
	// clang-format off
	m << 0,     1,     -1,   0,    0,
	     1, coeff,  coeff, rho,  rho,
	     0,     0,      0,   1,   -1;
	// clang-format on
	return m;
}

/// Normal opening of the interface at `point` (an extremity) in terms of the two block motions.
template <typename Scalar>
Eigen::Matrix<Scalar, 1, 6> opening_row(
	Point2<Scalar> const & point,
	Point2<Scalar> const & normal,
	Point2<Scalar> const & centroid_j,
	Point2<Scalar> const & centroid_k)
{
	Eigen::Matrix<Scalar, 2, 6> lever;
	Point2<Scalar> const pj = point - centroid_j;
	Point2<Scalar> const pk = point - centroid_k;
	// clang-format off
	lever << -1,  0,  pj.y(), 1, 0, -pk.y(),
	          0, -1, -pj.x(), 0, 1,  pk.x();
	// clang-format on
	return normal.transpose() * lever;
}

/// Displacement of `point` when its block translates by (u, v) and rotates by phi about `centroid`,
/// linearised for small rotations.
template <typename Scalar>
Point2<Scalar> rigid_displacement(Eigen::Matrix<Scalar, 3, 1> const & motion, Point2<Scalar> const & centroid, Point2<Scalar> const & point)
{
	Point2<Scalar> const r = point - centroid;
	return {motion(0) - motion(2) * r.y(), motion(1) + motion(2) * r.x()};
}

template <typename Scalar>
Scalar distance_to_segment(Point2<Scalar> const & p, Point2<Scalar> const & a, Point2<Scalar> const & b)
{
	Point2<Scalar> const ab = b - a;
	Scalar const len2 = ab.squaredNorm();
	Scalar s = len2 > 0 ? (p - a).dot(ab) / len2 : Scalar(0);
	s = std::clamp(s, Scalar(0), Scalar(1));
	return (a + s * ab - p).norm();
}

template <typename Scalar>
Scalar distance_to_boundary(Point2<Scalar> const & p, std::span<const Point2<Scalar>> polygon)
{
	Scalar best = std::numeric_limits<Scalar>::infinity();
	for (std::size_t i = 0; i < polygon.size(); ++i)
		best = std::min(best, distance_to_segment<Scalar>(p, polygon[i], polygon[(i + 1) % polygon.size()]));
	return best;
}

/// True when no two non-adjacent edges intersect.
bool is_simple_polygon(std::span<const Vector2> polygon);

}  // namespace blocklim
