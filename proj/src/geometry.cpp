#include "blocklim/geometry.hpp"

namespace blocklim
{
namespace
{
double orient(Vector2 const & a, Vector2 const & b, Vector2 const & c)
{
	return (b - a).x() * (c - a).y() - (b - a).y() * (c - a).x();
}

bool segments_cross(Vector2 const & a, Vector2 const & b, Vector2 const & c, Vector2 const & d)
{
	double const o1 = orient(a, b, c);
	double const o2 = orient(a, b, d);
	double const o3 = orient(c, d, a);
	double const o4 = orient(c, d, b);
	return ((o1 > 0) != (o2 > 0)) && ((o3 > 0) != (o4 > 0)) && o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0;
}
}  // namespace

const char * to_string(ErrorCode code)
{
	switch (code)
	{
	case ErrorCode::DegeneratePolygon: return "DegeneratePolygon";
	case ErrorCode::ZeroLengthInterface: return "ZeroLengthInterface";
	case ErrorCode::NoFixedBlock: return "NoFixedBlock";
	case ErrorCode::DanglingReference: return "DanglingReference";
	case ErrorCode::InvalidModel: return "InvalidModel";
	case ErrorCode::UnknownInterface: return "UnknownInterface";
	case ErrorCode::InvalidEnd: return "InvalidEnd";
	case ErrorCode::Infeasible: return "Infeasible";
	case ErrorCode::NumericalFailure: return "NumericalFailure";
	case ErrorCode::AboveCollapse: return "AboveCollapse";
	case ErrorCode::UnboundedEnergy: return "UnboundedEnergy";
	case ErrorCode::NoOpening: return "NoOpening";
	case ErrorCode::TargetUnreachable: return "TargetUnreachable";
	case ErrorCode::ParseError: return "ParseError";
	}
	return "Unknown";
}

bool is_simple_polygon(std::span<const Vector2> polygon)
{
	std::size_t const n = polygon.size();
	for (std::size_t i = 0; i < n; ++i)
	{
		for (std::size_t j = i + 1; j < n; ++j)
		{
			if (j == i + 1 || (i == 0 && j == n - 1))
				continue;
			if (segments_cross(polygon[i], polygon[(i + 1) % n], polygon[j], polygon[(j + 1) % n]))
				return false;
		}
	}
	return true;
}

}  // namespace blocklim
