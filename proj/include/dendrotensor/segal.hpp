#pragma once

#include <string>

#include "dendrotensor/operad.hpp"
#include "dendrotensor/report.hpp"
#include "dendrotensor/tree.hpp"

namespace dendrotensor {

/// Hom(o(T), P) against the fiber product of Hom(o(lower), P) and
/// Hom(o(upper), P) over the color of the inner edge b, through restriction.
/// b may also be a non-root stump edge, split off as the null corolla b[].
/// Throws DomainError for any other edge.
Report segal_d1_check(const FiniteOperad& p, const Tree& tree, const std::string& edge,
                      const std::string& instance);

/// Hom(o(F), P) against the product of Hom(o(T_i), P) over the components.
Report d3_check(const FiniteOperad& p, const Forest& forest, const std::string& instance);

}  // namespace dendrotensor
