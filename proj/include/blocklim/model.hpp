#pragma once

#include <array>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "blocklim/types.hpp"

namespace blocklim
{
struct Block
{
	int id = 0;
	std::vector<Vector2> vertices;  // counter-clockwise
	std::optional<double> density;  // mass per unit area; falls back to ModelDefaults::density
	Vector3 extra_dead_force = Vector3::Zero();  // (Fx, Fy, M) at the centroid
	Vector3 extra_live_force = Vector3::Zero();
	bool fixed = false;
};

struct Interface
{
	int id = 0;
	int block_j = 0;
	int block_k = 0;
	Vector2 p1 = Vector2::Zero();  // xi = -L/2
	Vector2 p2 = Vector2::Zero();  // xi = +L/2
	std::optional<double> mu;
	std::optional<double> mu_tilde;
	/// Optional side labels for (p1, p2), e.g. "extrados"/"intrados"; used by design eligibility.
	std::array<std::string, 2> end_tags;
};

struct Reinforcement
{
	int interface_id = 0;
	End end = End::End1;
	int layers = 1;
	std::optional<double> yield_force;  // per layer; falls back to ModelDefaults::yield_force
};

/// Support = fixed block with all three DOFs prescribed. Nonzero values model settlements.
struct Support
{
	int block_id = 0;
	Vector3 prescribed_u = Vector3::Zero();
};

/// Horizontal live force omega(y) * mass at each free block centroid, omega(y) = (y + offset) / divisor.
struct HorizontalMassLinear
{
	double divisor = 1;
	double offset = 0;
};

struct PointLoad
{
	int block_id = 0;
	Vector3 force = Vector3::Zero();
};

using LiveLoadRule = std::variant<HorizontalMassLinear, PointLoad>;

struct ModelDefaults
{
	double mu = 0.5;
	double mu_tilde = 0.5;
	double density = 1;
	double yield_force = 1;
	double alpha = 0;  // reinforcement weight of the explicit-force static objective
};

struct StructuralModel
{
	std::vector<Block> blocks;
	std::vector<Interface> interfaces;
	std::vector<Reinforcement> reinforcements;
	std::vector<Support> supports;
	Vector2 gravity{0, -1};
	std::vector<LiveLoadRule> live_load_rules;
	ModelDefaults defaults;

	Block const * find_block(int id) const;
	Interface const * find_interface(int id) const;
	Reinforcement * find_reinforcement(int interface_id, End end);

	double mu(Interface const & itf) const { return itf.mu.value_or(defaults.mu); }
	double mu_tilde(Interface const & itf) const { return itf.mu_tilde.value_or(defaults.mu_tilde); }
	double density(Block const & b) const { return b.density.value_or(defaults.density); }
	double yield_force(Reinforcement const & r) const { return r.yield_force.value_or(defaults.yield_force); }

	/// Adds one layer at (interface, end), creating the reinforcement if needed. Returns the new layer count.
	int add_reinforcement_layer(int interface_id, End end);

	/// Sets the prescribed displacement of a fixed block, creating its support entry if needed.
	void set_settlement(int block_id, Vector3 const & u);

	/// 1e-9 x bounding-box diagonal.
	double geometric_tolerance() const;
};

/// Structural checks shared by `validate` and assembly. Throws Error on the first violation.
void validate(StructuralModel const & model);

/// Non-fatal findings (clockwise polygons that will be reoriented, j/k swaps, ...).
std::vector<std::string> validation_notes(StructuralModel const & model);

}  // namespace blocklim
