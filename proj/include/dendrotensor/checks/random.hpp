#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "dendrotensor/level_forest.hpp"
#include "dendrotensor/tree.hpp"

namespace dendrotensor::checks {

/// Seeded generator with draws that do not depend on the standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n);
  /// Uniform in [lo, hi].
  std::uint64_t between(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }
  /// True with probability p.
  bool chance(double p);

  /// The generator for instance `index` of a suite, independent of the
  /// order in which instances run.
  static Rng derive(std::uint64_t seed, std::string_view suite, std::uint64_t index);

 private:
  std::mt19937_64 engine_;
};

struct TreeShape {
  std::size_t max_edges = 8;
  double stump_probability = 0.2;
  std::size_t max_arity = 3;
};

/// A tree with between 1 and max_edges edges named prefix0, prefix1, ...
Tree random_tree(Rng& rng, const TreeShape& shape, const std::string& prefix = "e");
/// A tree with at least one inner edge; needs max_edges >= 3.
Tree random_tree_with_inner_edge(Rng& rng, const TreeShape& shape, const std::string& prefix = "e");
/// A forest of one to three trees with at most max_edges edges in total.
/// With `allow_empty`, the empty forest is drawn with probability 0.1.
Forest random_forest(Rng& rng, const TreeShape& shape, bool allow_empty = true);
/// A linear tree with n vertices, n + 1 edges.
Tree linear_tree(std::size_t vertices, const std::string& prefix);

/// Levels of size at most max_width, length at most max_length. Elements
/// are named 1, 2, ...
FinSimplex random_simplex(Rng& rng, std::size_t max_width, std::size_t max_length);
/// A random monotone map [m] -> [n] with m <= max_source.
SimplicialOperator random_operator(Rng& rng, std::size_t n, std::size_t max_source);

}  // namespace dendrotensor::checks
