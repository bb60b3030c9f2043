#pragma once

#include <string>

#include "dendrotensor/level_forest.hpp"
#include "dendrotensor/tree.hpp"

namespace dendrotensor {

/// Graphviz rendering with the root at the bottom: vertices as dots, stumps
/// as filled squares, leaves as open circles, edges labelled by name.
std::string to_dot(const Forest& forest);

/// omega(A) drawn the same way, with the vertices of each level aligned on
/// a dashed line.
std::string to_dot(const FinSimplex& a);

}  // namespace dendrotensor
