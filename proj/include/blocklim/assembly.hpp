#pragma once

#include <map>
#include <vector>

#include "blocklim/model.hpp"

namespace blocklim
{
struct InterfaceGeometry
{
	int id = 0;
	int block_j = 0;  // after orientation fix-up: n points from j to k
	int block_k = 0;
	bool swapped = false;
	Vector2 p1, p2;
	Vector2 t, n, center;
	double rho = 0;
	double mu = 0;
	double mu_tilde = 0;
	std::array<std::string, 2> end_tags;

	Vector2 const & end_point(End end) const { return end == End::End1 ? p1 : p2; }
	/// Abscissa of an extremity along t, measured from the center.
	double xi(End end) const { return end == End::End1 ? -rho : rho; }
};

struct ReinforcementInfo
{
	int interface_index = 0;  // position in SystemMatrices::interfaces
	int interface_id = 0;
	End end = End::End1;
	int layers = 1;
	double yield_force = 0;  // per layer

	double limit() const { return layers * yield_force; }
};

/// Algebraic image of a StructuralModel. Fixed-block DOFs are eliminated: their columns live in
/// the *_fixed matrices and enter analyses through the prescribed displacements `u_fixed`.
struct SystemMatrices
{
	MatrixX B;        // 3 N_I x 3 N_free
	MatrixX B_fixed;  // 3 N_I x 3 N_fixed
	MatrixX C;        // N_R x 3 N_free
	MatrixX C_fixed;  // N_R x 3 N_fixed
	MatrixX N;        // 3 N_I x 5 N_I, friction mu
	MatrixX N_tilde;  // 3 N_I x 5 N_I, dilatancy mu~
	VectorX F_dead, F_live;              // free blocks
	VectorX F_dead_fixed, F_live_fixed;  // fixed blocks (reaction bookkeeping)
	VectorX u_fixed;
	VectorX R_hat;  // 5 N_I

	std::vector<int> free_blocks;   // ids, column order
	std::vector<int> fixed_blocks;  // ids, column order of the *_fixed matrices
	std::map<int, Index> dof_map;   // free block id -> first column
	std::map<int, Index> fixed_dof_map;
	std::vector<Vector2> centroids_free, centroids_fixed;
	std::vector<InterfaceGeometry> interfaces;
	std::vector<ReinforcementInfo> reinforcements;
	std::vector<std::string> notes;
	double geometric_tolerance = 0;

	Index num_free_dofs() const { return B.cols(); }
	Index num_interfaces() const { return static_cast<Index>(interfaces.size()); }
	Index num_reinforcements() const { return static_cast<Index>(reinforcements.size()); }
	MatrixX delta_N() const { return N - N_tilde; }
	bool associative() const { return delta_N().isZero(0); }

	/// Limit force per reinforcement (layers x R_y).
	VectorX reinforcement_limits() const;
	/// Total layer count, the N_R of the weighted static objective.
	int total_layers() const;
	/// Relative displacement at every interface center produced by the prescribed support motions.
	VectorX settlement_offset() const { return B_fixed * u_fixed; }
	/// Normal opening at one extremity of every interface (2 N_I rows), free-DOF part.
	MatrixX opening_rows() const;
	MatrixX opening_rows_fixed() const;
	Index interface_index(int id) const;
	/// Largest magnitude in the dead and live force vectors (equilibrium residual scale).
	double load_scale() const;
};

SystemMatrices assemble_system(StructuralModel const & model);

/// Relaxation of N^T X <= 0 when every reinforcement carries its limit force: R on the separation
/// row, mu R on both sliding rows and 2 rho R on the rotation row about the opposite end.
VectorX reinforcement_bounds_vector(std::vector<InterfaceGeometry> const & interfaces, std::vector<ReinforcementInfo> const & reinforcements);

/// Copy of `system` with the prescribed displacement of `block_id` replaced.
SystemMatrices with_settlement(SystemMatrices system, int block_id, Vector3 const & u);

}  // namespace blocklim
