#pragma once

#include <string>
#include <vector>

#include "tilecoh/tiling.hpp"

namespace tilecoh {

/// Built-in systems: chair, penrose_triangles, pinwheel, pinwheel_2_3,
/// penrose_combinatorial, square_2x2. Geometric fixtures are returned exactly as
/// drawn (before split_edges).
TilingSystem fixture(const std::string& name);
std::vector<std::string> fixture_names();

}  // namespace tilecoh
