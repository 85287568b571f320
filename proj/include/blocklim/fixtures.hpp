#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "blocklim/model.hpp"

namespace blocklim::fixtures
{
/// Free b x h block on a fixed ground block, weight W, unit horizontal live force at the centroid.
StructuralModel single_block(double b, double h, double weight, double mu, double mu_tilde);

/// Two three-block columns carrying a lintel, each column on its own fixed ground block.
/// Blocks 1-3 left column (bottom up), 4-6 right column, 7 lintel, 8/9 ground.
/// Interfaces 1-4 left base..lintel, 5-8 right base..lintel.
struct TrilithonGeometry
{
	double base_y = 0;
	double column_width = 0.44;
	double block_height = 0.8;
	double clear_span = 0.5;
	double lintel_height = 1.3;
	double lintel_overhang = 0.0;
	double density = 2;    // mass per unit area
	double gravity = 9.81; // dead load = mass x gravity, live load = mass x omega(y)
	double mu = 1;
	double mu_tilde = 0;
	double yield_force = 10;
	double alpha = 0.1;
};

StructuralModel trilithon(TrilithonGeometry const & g = {}, int reinforcements = 0);

/// Placement order: left base, right base, left second joint, right second joint (heel side).
std::vector<std::pair<int, End>> trilithon_reinforcement_order();

/// Circular arch on flat impost bricks with a point load at the center of `loaded_block`. Units N, mm.
/// Blocks left to right: 1 fixed impost brick, 2..voussoirs+1, fixed impost brick.
/// Interface i joins blocks i and i + 1; p1 lies on the extrados, p2 on the intrados.
struct ArchGeometry
{
	double r_int = 456;
	double thickness = 120;
	double impost_height = 74;
	int voussoirs = 21;
	int arc_segments = 4;  // polyline segments per voussoir arc
	double density = 1.6e-5 * 240;
	double mu = 1;
	double mu_tilde = 1;
	double yield_force = 100;
	double alpha = 25;
	int loaded_block = 14;
};

StructuralModel arch(ArchGeometry const & g = {});

/// Eight-placement sequences of the extrados (end 1) and intrados (end 2) designs.
std::vector<int> arch_extrados_sequence();
std::vector<int> arch_intrados_sequence();
StructuralModel arch_reinforced(std::vector<int> const & interfaces, End end, ArchGeometry const & g = {});

/// The impost bricks are the fixed blocks; settlements are prescribed on them.
inline int arch_left_springing(ArchGeometry const & = {}) { return 1; }
inline int arch_right_springing(ArchGeometry const & g = {}) { return g.voussoirs + 2; }

/// Stacks of rectangular blocks on one fixed ground block with horizontal live loads and a few
/// random reinforcements. 3-10 free blocks, deterministic in `seed`.
struct RandomOptions
{
	int min_blocks = 3;
	int max_blocks = 10;
	int max_reinforcements = 3;
	bool associative = true;
};

StructuralModel random_model(std::uint64_t seed, RandomOptions const & options = {});

}  // namespace blocklim::fixtures
