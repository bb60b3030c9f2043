#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "dendrotensor/operad_map.hpp"
#include "dendrotensor/tree.hpp"

namespace dendrotensor {

using Color = std::size_t;

/// A sequence-level operation of a finite operad: an element of
/// P(inputs; output). `tag` tells apart operations with the same profile.
struct Op {
  Color output = 0;
  std::vector<Color> inputs;
  std::size_t tag = 0;

  friend auto operator<=>(const Op&, const Op&) = default;
};

struct MapToOperad;

/// A colored symmetric operad in sets with finitely many operations per
/// output color.
class FiniteOperad {
 public:
  virtual ~FiniteOperad() = default;

  virtual std::size_t color_count() const = 0;
  virtual std::string color_name(Color c) const = 0;

  /// P(inputs; output).
  virtual std::vector<Op> operations(const std::vector<Color>& inputs, Color output) const = 0;
  /// All operations with the given input sequence, any output.
  virtual std::vector<Op> operations_from(const std::vector<Color>& inputs) const;
  /// All operations with the given output, every arity.
  virtual std::vector<Op> operations_to(Color output) const = 0;

  virtual Op identity(Color c) const = 0;
  /// f(g_1, ..., g_k); inputs of the result are the concatenated inputs of
  /// the g_i. Throws DomainError on a color mismatch.
  virtual Op compose(const Op& f, const std::vector<Op>& gs) const = 0;
  /// Right action: input t of the result is input sigma[t] of f.
  virtual Op permute(const Op& f, const std::vector<std::size_t>& sigma) const;

  /// Every operad map o(F) -> P, determined by edge colors and one
  /// operation per vertex.
  virtual std::vector<MapToOperad> maps_from(const ForestPtr& forest) const;

  std::string describe(const Op& op) const;
};

/// An operad map o(F) -> P. vertex_ops is keyed by the output edge of each
/// vertex; the inputs of each operation follow the vertex's inputs in
/// index order.
struct MapToOperad {
  ForestPtr source;
  std::vector<Color> colors;
  std::map<EdgeIndex, Op> vertex_ops;

  friend bool operator==(const MapToOperad& a, const MapToOperad& b);
  friend bool operator<(const MapToOperad& a, const MapToOperad& b);
};

std::vector<std::string> validate(const MapToOperad& m, const FiniteOperad& p);

/// The value of m on the operation (output; inputs) of o(F), inputs taken
/// in the given order.
Op evaluate(const MapToOperad& m, const FiniteOperad& p, EdgeIndex output,
            const std::vector<EdgeIndex>& inputs);

/// m o g for g: o(S) -> o(F).
MapToOperad precompose(const MapToOperad& m, const OperadMap& g, const FiniteOperad& p);

/// Restriction to a forest whose edges and vertices appear, by name, in
/// m's source. Throws DomainError otherwise.
MapToOperad restrict_to(const MapToOperad& m, const ForestPtr& sub);

/// An operad with at most one operation per (input set, output), all input
/// colors distinct; the symmetric group acts by reordering.
class ThinOperad : public FiniteOperad {
 public:
  std::size_t color_count() const override { return names_.size(); }
  std::string color_name(Color c) const override { return names_.at(c); }
  std::vector<Op> operations(const std::vector<Color>& inputs, Color output) const override;
  std::vector<Op> operations_from(const std::vector<Color>& inputs) const override;
  std::vector<Op> operations_to(Color output) const override;
  Op identity(Color c) const override { return Op{c, {c}, 0}; }
  Op compose(const Op& f, const std::vector<Op>& gs) const override;

  std::size_t profile_count() const;

 protected:
  ThinOperad() = default;
  void set_colors(std::vector<std::string> names);
  void add_profile(Color output, std::vector<Color> sorted_inputs);

 private:
  std::vector<std::string> names_;
  std::map<std::vector<Color>, std::set<Color>> outputs_by_inputs_;
  std::vector<std::vector<std::vector<Color>>> inputs_by_output_;
};

/// o(F): colors are the edges of F in global index order, operations the cuts.
class FreeForestOperad : public ThinOperad {
 public:
  explicit FreeForestOperad(ForestPtr forest);
  const ForestPtr& forest() const { return forest_; }
  /// Uses hom(source, F).
  std::vector<MapToOperad> maps_from(const ForestPtr& source) const override;

 private:
  ForestPtr forest_;
};

MapToOperad to_map_to_operad(const OperadMap& f);

/// o(S1) (x) ... (x) o(Sn): colors are tuples of factor edges, operations
/// the cuts occurring in some shuffle.
class BVTensorOperad : public ThinOperad {
 public:
  explicit BVTensorOperad(std::vector<Tree> factors);
  const std::vector<Tree>& factors() const { return factors_; }

 private:
  std::vector<Tree> factors_;
};

/// An operad given by explicit finite tables, with the symmetric group
/// acting trivially on operation names. JSON:
///   {"colors": [...],
///    "operations": [{"name", "inputs": [...], "output"}],
///    "compositions": [{"outer", "inner": [name or null, ...], "result"}]}
/// `inner` follows the outer operation's declared input order; null stands
/// for an identity. Every composite of non-identities must be listed.
class TableOperad : public FiniteOperad {
 public:
  static constexpr std::size_t kIdentityTag = static_cast<std::size_t>(-1);

  /// Throws ParseError on malformed input and StructureError when the
  /// tables are not closed, not symmetric, or not associative.
  static TableOperad parse(const std::string& json);

  std::size_t color_count() const override { return colors_.size(); }
  std::string color_name(Color c) const override { return colors_.at(c); }
  std::vector<Op> operations(const std::vector<Color>& inputs, Color output) const override;
  std::vector<Op> operations_to(Color output) const override;
  Op identity(Color c) const override { return Op{c, {c}, kIdentityTag}; }
  Op compose(const Op& f, const std::vector<Op>& gs) const override;

  const std::string& operation_name(std::size_t tag) const { return entries_.at(tag).name; }

 private:
  struct Entry {
    std::string name;
    std::vector<Color> inputs;
    std::vector<Color> sorted_inputs;
    Color output = 0;
  };
  using Key = std::pair<std::size_t, std::vector<std::size_t>>;

  void check_laws() const;

  std::vector<std::string> colors_;
  std::vector<Entry> entries_;
  std::map<Key, std::size_t> compositions_;
};

}  // namespace dendrotensor
