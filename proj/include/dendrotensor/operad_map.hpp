#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dendrotensor/tree.hpp"

namespace dendrotensor {

/// An operation of the free operad o(F): an output edge together with a cut
/// above it. Indices are global edge indices of the host forest; inputs are
/// kept sorted, since the colors of a tree are distinct and every ordering
/// of the inputs names the same operation up to the symmetric action.
struct Operation {
  EdgeIndex output = 0;
  std::vector<EdgeIndex> inputs;

  friend auto operator<=>(const Operation&, const Operation&) = default;
};

/// All cuts above `edge` in `tree`, identity first; inputs are local indices.
/// Recursive product construction: a cut above e is {e} or, when a vertex
/// sits above e, a union of one cut above each of its inputs.
std::vector<std::vector<EdgeIndex>> cuts_above(const Tree& tree, EdgeIndex edge);

/// Same, as Operations with global indices of `forest`.
std::vector<Operation> operations(const Forest& forest, EdgeIndex edge);
/// Name-based convenience over a single tree.
std::vector<Operation> operations(const Tree& tree, std::string_view edge);

/// Whether `inputs` (global, any order, duplicates allowed) is a cut above
/// `output` in `forest`.
bool is_cut(const Forest& forest, EdgeIndex output, const std::vector<EdgeIndex>& inputs);

using ForestPtr = std::shared_ptr<const Forest>;

/// A morphism of Phi: an operad map o(S) -> o(T).
///
/// edge_map is indexed by global source edge; vertex_map is keyed by the
/// global output edge of each source vertex.
struct OperadMap {
  ForestPtr source;
  ForestPtr target;
  std::vector<EdgeIndex> edge_map;
  std::map<EdgeIndex, Operation> vertex_map;

  friend bool operator==(const OperadMap& a, const OperadMap& b);
};

ForestPtr share(Forest f);
ForestPtr share(Tree t);

/// Builds a map from its edge assignment; vertex images are the induced cuts.
/// Does not validate.
OperadMap from_edge_map(ForestPtr source, ForestPtr target, std::vector<EdgeIndex> edge_map);

OperadMap identity_map(ForestPtr forest);

/// Every operad map o(S) -> o(T), ordered lexicographically by edge_map.
std::vector<OperadMap> hom(const ForestPtr& source, const ForestPtr& target);
std::size_t hom_count(const Forest& source, const Forest& target);

/// g after f. Vertex images are obtained by substituting g's images into the
/// cut f assigns to each vertex. Throws DomainError when target(f) and
/// source(g) differ.
OperadMap compose(const OperadMap& f, const OperadMap& g);

struct Violation {
  std::string vertex;  // output edge name of the offending source vertex
  std::string message;
};

/// Empty when f is a well-formed operad map.
std::vector<Violation> validate(const OperadMap& f);

enum class Elementary { Iso, Degeneracy, InnerFace, OuterFace, EdgeOfCorolla, Other };
std::string to_string(Elementary e);

/// Matches f (between single trees) against the elementary shapes.
Elementary classify_elementary(const OperadMap& f);

/// Name-level view used for printing and for comparing maps with different
/// targets.
struct NamedMap {
  std::map<std::string, std::string> edge_map;
  std::map<std::string, std::pair<std::string, std::vector<std::string>>> vertex_map;

  friend auto operator<=>(const NamedMap&, const NamedMap&) = default;
};
NamedMap named(const OperadMap& f);

}  // namespace dendrotensor
