#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "dendrotensor/operad_map.hpp"
#include "dendrotensor/tree.hpp"

namespace dendrotensor {

/// A map A_{i-1} -> A_i u {*} between consecutive levels, by position;
/// std::nullopt is the basepoint.
using LevelMap = std::vector<std::optional<std::size_t>>;

/// An object A: [n] -> Fin_* of the category of simplices of Fin_*: finite
/// sets A_0, ..., A_n and pointed maps alpha_i: A_{i-1} -> A_i.
class FinSimplex {
 public:
  FinSimplex() = default;
  /// Throws DomainError unless there is one map per consecutive pair of
  /// levels, each total and landing in the next level.
  FinSimplex(std::vector<std::vector<std::string>> levels, std::vector<LevelMap> maps);

  std::size_t length() const { return levels_.size() - 1; }
  const std::vector<std::string>& level(std::size_t i) const { return levels_[i]; }
  const std::vector<std::vector<std::string>>& levels() const { return levels_; }
  /// alpha_i for i in 1..n.
  const LevelMap& map(std::size_t i) const { return maps_[i - 1]; }
  const std::vector<LevelMap>& maps() const { return maps_; }

  /// alpha_{ij}: A_j -> A_i for j <= i, basepoint absorbing.
  LevelMap composite(std::size_t i, std::size_t j) const;

  friend bool operator==(const FinSimplex&, const FinSimplex&) = default;

 private:
  std::vector<std::vector<std::string>> levels_{{}};
  std::vector<LevelMap> maps_;
};

FinSimplex parse_fin_simplex(const std::string& json);
std::string to_json(const FinSimplex& a);

/// A monotone map [m] -> [n].
struct SimplicialOperator {
  std::vector<std::size_t> values;
  std::size_t target = 0;

  std::size_t source() const { return values.size() - 1; }
  static SimplicialOperator identity(std::size_t n);
  /// d_i: [n-1] -> [n], skipping i.
  static SimplicialOperator face(std::size_t i, std::size_t n);
  /// s_i: [n+1] -> [n], hitting i twice.
  static SimplicialOperator degeneracy(std::size_t i, std::size_t n);

  friend bool operator==(const SimplicialOperator&, const SimplicialOperator&) = default;
};

/// phi after psi.
SimplicialOperator compose(const SimplicialOperator& phi, const SimplicialOperator& psi);

/// A o phi.
FinSimplex restrict(const FinSimplex& a, const SimplicialOperator& phi);

/// Edge name of element `element` of level `level` in omega(A).
std::string level_edge_name(std::size_t level, const std::string& element);

/// The level forest omega(A). Components are ordered by the level of their
/// root, deepest first, then by position within the level.
Forest omega(const FinSimplex& a);

/// omega(phi): omega(A o phi) -> omega(A).
OperadMap omega(const SimplicialOperator& phi, const FinSimplex& a);

/// A forest F presented as a retract of a level forest.
struct RetractWitness {
  FinSimplex simplex;
  Forest padded;     // F with unary chains added above shallow leaves
  OperadMap section;     // F -> omega(A)
  OperadMap retraction;  // omega(A) -> F
};

RetractWitness retract_witness(const Forest& forest);

/// Level assignment used by retract_witness: for each component the height
/// of its root, leaves at height 0 and stump edges at height >= 1.
std::vector<std::size_t> component_heights(const Forest& forest);

}  // namespace dendrotensor
