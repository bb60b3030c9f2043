#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "dendrotensor/free_algebra.hpp"
#include "dendrotensor/operad.hpp"
#include "dendrotensor/tree.hpp"

namespace dendrotensor::checks {

/// Lattice paths through a box with the given side lengths, by dynamic
/// programming over the box.
std::size_t lattice_paths(const std::vector<std::size_t>& sides);

/// A name-free key of a forest's shape: two forests have equal keys exactly
/// when they are isomorphic. A leaf is "|", a vertex lists the sorted keys
/// of its inputs in parentheses, and components are sorted.
std::string shape_key(const Forest& forest);

/// The free algebra by brute force: every operation into d, every index
/// sequence over it and every labelling, reduced to the least element of
/// its orbit under all permutations.
std::vector<FreeAlgebraElement> free_algebra_by_orbits(const FiniteOperad& p, const std::vector<Color>& r,
                                                       const std::vector<std::size_t>& x_sizes, Color d);

}  // namespace dendrotensor::checks
