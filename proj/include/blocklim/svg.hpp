#pragma once

#include <string>
#include <vector>

#include "blocklim/kla.hpp"

namespace blocklim
{
struct SvgOptions
{
	double amplify = 1;
	double width_px = 800;
	bool label_hinges = true;
};

/// Original blocks in light grey, displaced blocks solid. U holds the free-block motions in
/// system column order (empty: no motion); fixed blocks move by their prescribed displacement.
/// Hinges are circles labelled with the interface id; reinforcements are ticks whose stroke
/// grows with the layer count.
std::string render_svg(StructuralModel const & model, VectorX const & U, std::vector<Hinge> const & hinges, SvgOptions const & options = {});

/// Displaced vertex positions of one block (same order as Block::vertices).
std::vector<Vector2> displaced_vertices(StructuralModel const & model, SystemMatrices const & system, VectorX const & U, int block_id, double amplify);

}  // namespace blocklim
