#pragma once

#include <vector>

#include "blocklim/sla.hpp"

namespace blocklim
{
/// Prescribed inelastic relative displacement (t, n, rotation) at an interface center.
struct Distortion
{
	int interface_id = 0;
	Vector3 delta = Vector3::Zero();
};

struct Hinge
{
	int interface_id = 0;
	End end = End::End1;  // pivot edge

	bool operator==(Hinge const &) const = default;
};

struct Mechanism
{
	VectorX U;
	VectorX beta;
	VectorX openings;  // 2 N_I, entry 2 i + (end - 1): normal opening at that extremity
	VectorX slidings;  // N_I, du+ - du-
	std::vector<Hinge> hinges;
	std::vector<int> opened;   // interfaces with s > tol
	std::vector<int> sliding;  // interfaces with du+ + du- > tol
	double tolerance = 0;

	double opening(Index interface_index, End end) const { return openings(2 * interface_index + end_index(end)); }
};

struct KlaOptions
{
	int max_outer_iterations = 100;
	double objective_tol = 1e-6;
	lp::Tolerances lp_tolerances;
	lp::Backend const * backend = nullptr;
};

struct KlaOutput
{
	LimitResult result;
	Mechanism mechanism;
};

/// Assembled distortion vector (3 N_I). Throws InvalidModel when a distortion opens a reinforced end.
VectorX distortion_vector(SystemMatrices const & system, std::vector<Distortion> const & distortions);

/// min (C^T Rlim - F_d)^T U + h^T X*  s.t.  B U - N beta = h,  F_l^T U = 1,  beta >= 0,
/// h = delta - dN beta* - B_fixed u. X* and lambda are the duals of the compatibility and normalisation rows.
KlaOutput run_kla(SystemMatrices const & system, std::vector<Distortion> const & distortions = {}, KlaOptions const & options = {});

/// Opening, sliding and hinge sets from (U, beta). Openings are measured from the distortion state.
Mechanism extract_mechanism(
	LimitResult const & result, SystemMatrices const & system, std::vector<Distortion> const & distortions = {});

}  // namespace blocklim
