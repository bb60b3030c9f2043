#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dendrotensor/error.hpp"

namespace dendrotensor {

using EdgeIndex = std::uint32_t;

/// A vertex given by its outgoing edge and its (possibly empty) set of
/// incoming edges. An empty input set makes the vertex a stump.
struct VertexSpec {
  std::string out;
  std::vector<std::string> in;
};

/// Finite rooted tree with named edges, possibly with stumps.
///
/// Edges are indexed by the rank of their name, so two trees with the same
/// names and the same shape compare equal and serialize identically. A vertex
/// is identified with its outgoing edge: `has_vertex(e)` says whether some
/// vertex sits directly above `e`, and `inputs(e)` lists that vertex's
/// incoming edges in index order.
class Tree {
 public:
  /// Builds and validates a tree. Throws StructureError when the vertices do
  /// not form a tree rooted at `root`.
  static Tree make(std::string root, std::vector<VertexSpec> vertices);
  /// The unit tree: one edge, no vertices.
  static Tree unit(std::string name);
  /// The corolla with one vertex; `leaves` may be empty (null corolla).
  static Tree corolla(std::string root, std::vector<std::string> leaves);

  std::size_t edge_count() const { return names_.size(); }
  std::size_t vertex_count() const { return vertex_count_; }

  EdgeIndex root() const { return root_; }
  const std::string& name(EdgeIndex e) const { return names_[e]; }
  const std::vector<std::string>& names() const { return names_; }

  std::optional<EdgeIndex> find(std::string_view name) const;
  /// Like find, but throws DomainError for unknown names.
  EdgeIndex at(std::string_view name) const;

  bool has_vertex(EdgeIndex e) const { return has_vertex_[e] != 0; }
  std::span<const EdgeIndex> inputs(EdgeIndex e) const { return children_[e]; }
  std::optional<EdgeIndex> parent(EdgeIndex e) const {
    if (parent_[e] == kNone) return std::nullopt;
    return parent_[e];
  }

  bool is_leaf(EdgeIndex e) const { return !has_vertex(e); }
  bool is_stump(EdgeIndex e) const { return has_vertex(e) && children_[e].empty(); }
  bool is_maximal(EdgeIndex e) const { return is_leaf(e) || is_stump(e); }
  /// Not the root and the output of some vertex (stump edges included).
  bool is_inner(EdgeIndex e) const { return e != root_ && has_vertex(e); }
  /// Number of vertices between e and the root.
  std::size_t depth(EdgeIndex e) const;

  std::vector<EdgeIndex> leaves() const;
  std::vector<EdgeIndex> stumps() const;
  std::vector<EdgeIndex> max_edges() const;
  std::vector<EdgeIndex> inner_edges() const;
  /// All edges above e, e included, in preorder.
  std::vector<EdgeIndex> subtree(EdgeIndex e) const;

  /// Vertex list in the form accepted by make(), ordered by output edge.
  std::vector<VertexSpec> vertex_specs() const;

  bool is_open() const { return stumps().empty(); }
  bool is_linear() const;

  friend bool operator==(const Tree&, const Tree&) = default;

 private:
  static constexpr EdgeIndex kNone = static_cast<EdgeIndex>(-1);

  std::vector<std::string> names_;
  EdgeIndex root_ = 0;
  std::vector<std::uint8_t> has_vertex_;
  std::vector<std::vector<EdgeIndex>> children_;
  std::vector<EdgeIndex> parent_;
  std::size_t vertex_count_ = 0;
};

/// A finite sequence of trees with pairwise disjoint edge names.
///
/// Edges also carry a global index: components are laid out one after the
/// other in sequence order.
class Forest {
 public:
  Forest() = default;
  explicit Forest(std::vector<Tree> components);
  explicit Forest(Tree tree);

  std::size_t component_count() const { return components_.size(); }
  const Tree& component(std::size_t i) const { return components_[i]; }
  const std::vector<Tree>& components() const { return components_; }
  bool empty() const { return components_.empty(); }

  std::size_t edge_count() const { return component_of_.size(); }
  std::size_t vertex_count() const;

  EdgeIndex global(std::size_t component, EdgeIndex local) const {
    return static_cast<EdgeIndex>(offsets_[component] + local);
  }
  std::size_t component_of(EdgeIndex global) const { return component_of_[global]; }
  EdgeIndex local(EdgeIndex global) const {
    return static_cast<EdgeIndex>(global - offsets_[component_of_[global]]);
  }
  const std::string& name(EdgeIndex global) const {
    return components_[component_of(global)].name(local(global));
  }
  std::optional<EdgeIndex> find(std::string_view name) const;
  EdgeIndex at(std::string_view name) const;

  /// Global versions of the per-tree structure queries.
  bool has_vertex(EdgeIndex g) const { return tree_of(g).has_vertex(local(g)); }
  std::vector<EdgeIndex> inputs(EdgeIndex g) const;
  std::optional<EdgeIndex> parent(EdgeIndex g) const;
  EdgeIndex root_of(EdgeIndex g) const {
    return global(component_of(g), tree_of(g).root());
  }
  const Tree& tree_of(EdgeIndex g) const { return components_[component_of(g)]; }

  friend bool operator==(const Forest& a, const Forest& b) {
    return a.components_ == b.components_;
  }

 private:
  std::vector<Tree> components_;
  std::vector<std::size_t> offsets_;
  std::vector<std::size_t> component_of_;
  std::vector<std::pair<std::string, EdgeIndex>> by_name_;
};

// Text format: tree := NAME ('[' (tree (',' tree)*)? ']')?
//              forest := '{' (tree (';' tree)*)? '}'
// Names are runs of characters other than whitespace and "[],;{}".
Tree parse_tree(std::string_view text);
Forest parse_forest(std::string_view text);
std::string to_string(const Tree& tree);
std::string to_string(const Forest& forest);

/// Maps edges of one tree to edges of another by name.
using EdgeCorrespondence = std::vector<std::pair<std::string, std::string>>;

/// The interior: every stump vertex removed, so stump edges become leaves.
std::pair<Tree, EdgeCorrespondence> interior(const Tree& tree);

/// Adds a stump above every edge of `leaves`; each must be a leaf.
Tree add_stumps(const Tree& tree, const std::set<std::string>& leaves);

/// Cuts at an inner edge d: `lower` keeps d as a leaf, `upper` is rooted at d.
struct CutResult {
  Tree lower;
  Tree upper;
};
CutResult cut_at(const Tree& tree, std::string_view edge);

/// Grafts `upper` onto the leaf of `lower` that carries upper's root name.
Tree graft(const Tree& lower, std::string_view leaf, const Tree& upper);

/// Contracts a set of inner edges, merging the vertices at both ends of each.
/// The second member lists the surviving edges (identity names).
std::pair<Tree, std::vector<std::string>> contract_inner(
    const Tree& tree, const std::set<std::string>& edges);

std::set<std::string> max_edge_names(const Tree& tree);
std::set<std::string> leaf_names(const Tree& tree);

}  // namespace dendrotensor
