#pragma once

#include <compare>
#include <cstddef>
#include <vector>

#include "dendrotensor/operad.hpp"

namespace dendrotensor {

/// An orbit of the free algebra: a multiset gamma over I as a sorted index
/// sequence, labels x with x[t] in X_{gamma[t]}, and op in P(r o gamma; d).
/// Stored as the least representative of its Aut(gamma) orbit, comparing
/// x first and then op.
struct FreeAlgebraElement {
  std::vector<std::size_t> gamma;
  std::vector<std::size_t> x;
  Op op;

  friend auto operator<=>(const FreeAlgebraElement&, const FreeAlgebraElement&) = default;
};

/// The free P-algebra on X, recolored along r, at color d: the disjoint
/// union over multisets gamma of P(r o gamma, d) x prod X_{gamma(j)} modulo
/// Aut(gamma). `r` gives a color per element of I and `x_sizes` the size of
/// each X_i. Throws DomainError unless r is onto the colors of P.
std::vector<FreeAlgebraElement> free_algebra(const FiniteOperad& p, const std::vector<Color>& r,
                                             const std::vector<std::size_t>& x_sizes, Color d);

}  // namespace dendrotensor
