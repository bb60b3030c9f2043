#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "dendrotensor/operad_map.hpp"
#include "dendrotensor/tree.hpp"

namespace dendrotensor {

/// One coordinate per factor: a local edge index of that factor.
using TupleEdge = std::vector<EdgeIndex>;

/// "(e1|e2|...|en)".
std::string tuple_name(const std::vector<Tree>& factors, const TupleEdge& t);
std::string tuple_name(const std::vector<std::string>& coords);

/// A shuffle of trees S1, ..., Sn: a tree whose edges are tuples of factor
/// edges. coords[e] is the tuple carried by local edge e of `tree`.
struct Shuffle {
  Tree tree;
  std::vector<TupleEdge> coords;

  friend bool operator==(const Shuffle& a, const Shuffle& b) { return a.tree == b.tree; }
};

/// Every shuffle of the factors, sorted by serialized tree.
///
/// At a tuple (e1, ..., en): when every coordinate is maximal the tuple is a
/// leaf, or is closed by a single stump if some coordinate is a stump.
/// Otherwise one branches on a coordinate whose edge carries a vertex with
/// inputs, replacing it by each of those inputs.
std::vector<Shuffle> shuffles(const std::vector<Tree>& factors);

/// Problems with a purported shuffle: the root law, vertices that advance
/// anything but one factor vertex, and the maximal-edge law.
std::vector<std::string> check_shuffle(const std::vector<Tree>& factors, const Shuffle& a);

/// The maximal edges a shuffle must have: the product of max(Si), as names.
std::set<std::string> expected_max_edges(const std::vector<Tree>& factors);

/// The intersection of a nonempty family of shuffles of the same factors:
/// the tree on their common edges. Throws DomainError on an empty family
/// and StructureError when the common edges are not tree shaped.
Shuffle intersect(const std::vector<const Shuffle*>& family);

/// The name-preserving map from `sub` into `super`. Does not validate.
OperadMap name_inclusion(const Tree& sub, const Tree& super);

/// Empty when f is injective on edges, preserves the root and all maximal
/// edges, and misses only inner edges of its target.
std::vector<std::string> check_inner_face_inclusion(const OperadMap& f);

/// Two enumerated families and a map between them, by index.
struct Pairing {
  std::vector<Shuffle> source;
  std::vector<Shuffle> target;
  std::vector<std::optional<std::size_t>> forward;

  bool is_bijection() const;
};

/// A -> A[E_i]: stumps over every tuple leaf whose i-th coordinate is e.
/// Pairs shuffles of `factors` with shuffles of the factors where S_i is
/// replaced by S_i[e]. Throws DomainError unless e is a leaf of S_i.
Pairing stump_transport(const std::vector<Tree>& factors, std::size_t i, const std::string& leaf);

struct InteriorDecomposition {
  /// Tuples of leaves of the interiors with at least one stump coordinate.
  std::vector<std::string> stumped;
  /// Shuffles of the interiors paired with shuffles of the factors.
  Pairing pairing;
};
InteriorDecomposition interior_decomposition(const std::vector<Tree>& factors);

/// A nested grouping of factor indices 0..n-1 in order.
struct Bracketing {
  std::optional<std::size_t> factor;  // set for a single factor
  std::vector<Bracketing> parts;      // otherwise a group
};

/// Parses e.g. "(0,(1,2))" or "((0,1),2)". Throws ParseError.
Bracketing parse_bracketing(std::string_view text);
std::string to_string(const Bracketing& b);

struct AssocInclusion {
  std::vector<std::string> k;  // serialized shuffles from the bracketed product
  std::vector<std::string> j;  // serialized shuffles of the flat product
  /// k index -> j index; nullopt would witness K not contained in J.
  std::vector<std::optional<std::size_t>> injection;

  bool is_inclusion() const;
};

/// Throws ParseError when the bracketing does not list 0..n-1 in order.
AssocInclusion assoc_inclusion(const std::vector<Tree>& factors, const Bracketing& bracketing);

/// Maps o(F) into the Boardman-Vogt tensor of the factors: the union over
/// shuffles A of hom(F, A), deduplicated on names and sorted.
std::vector<NamedMap> tensor_hom(const Forest& source, const std::vector<Tree>& factors);

/// Renames every tuple coordinate by a permutation: coordinate k of the
/// result is coordinate perm[k] of the input. Factor edge names must not
/// contain '|'.
std::string permute_tuple_name(const std::string& name, const std::vector<std::size_t>& perm);

}  // namespace dendrotensor
