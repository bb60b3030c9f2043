#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "dendrotensor/fin_pointed.hpp"
#include "dendrotensor/level_forest.hpp"
#include "dendrotensor/operad.hpp"
#include "dendrotensor/report.hpp"

namespace dendrotensor {

/// An object of l(P) over <n>: one color per element.
using Coloring = std::vector<Color>;

/// A morphism of l(P) over a pointed map: components[j] is an operation of
/// P from the colors of the fiber over j, in increasing order, to target[j].
struct EllMorphism {
  FinMap over;
  Coloring source;
  Coloring target;
  std::vector<Op> components;

  friend auto operator<=>(const EllMorphism&, const EllMorphism&) = default;
};

/// l(P) as a category over Fin_*, computed on demand. Virtual so that test
/// fixtures can inject defects.
class EllCategory {
 public:
  explicit EllCategory(const FiniteOperad& p) : p_(p) {}
  virtual ~EllCategory() = default;

  const FiniteOperad& operad() const { return p_; }

  /// Every morphism over alpha out of c, any target, in lexicographic order
  /// of the component choices.
  virtual std::vector<EllMorphism> out(const FinMap& alpha, const Coloring& c) const;
  /// The morphisms over alpha from c to d.
  std::vector<EllMorphism> hom(const FinMap& alpha, const Coloring& c, const Coloring& d) const;
  /// g after f. Throws DomainError on a boundary mismatch.
  virtual EllMorphism compose(const EllMorphism& g, const EllMorphism& f) const;
  EllMorphism identity(const Coloring& c) const;
  /// The lift of an inert alpha at c with identity components. Throws
  /// DomainError unless alpha is inert.
  virtual EllMorphism inert_lift(const FinMap& alpha, const Coloring& c) const;

 protected:
  /// P.operations_from, memoized.
  const std::vector<Op>& operations_from(const Coloring& seq) const;

 private:
  const FiniteOperad& p_;
  mutable std::mutex memo_mutex_;
  mutable std::map<Coloring, std::vector<Op>> memo_;
};

std::vector<EllMorphism> ell_hom(const FiniteOperad& p, const FinMap& alpha, const Coloring& c,
                                 const Coloring& d);
EllMorphism ell_compose(const FiniteOperad& p, const EllMorphism& g, const EllMorphism& f);

/// A chain of composable morphisms of l(P) lying over a FinSimplex.
struct Chain {
  std::vector<Coloring> objects;
  std::vector<EllMorphism> arrows;

  friend auto operator<=>(const Chain&, const Chain&) = default;
};

/// alpha_i as a pointed map <|A_{i-1}|> -> <|A_i|>.
FinMap level_map(const FinSimplex& a, std::size_t i);

/// Every chain over A, in lexicographic order of choices.
std::vector<Chain> nerve_over(const EllCategory& cat, const FinSimplex& a);
std::vector<Chain> nerve_over(const FiniteOperad& p, const FinSimplex& a);

/// The chain sending edge l_i:a to c_i(a) and vertex v_a to the component
/// of alpha_i over a.
MapToOperad chain_to_map(const Chain& chain, const FinSimplex& a, const ForestPtr& omega_a);
/// The inverse. Throws DomainError when m is not defined on omega(A).
Chain map_to_chain(const MapToOperad& m, const FinSimplex& a);

/// The chain over A o phi obtained by composing arrows along phi.
Chain restrict(const EllCategory& cat, const Chain& chain, const FinSimplex& a,
               const SimplicialOperator& phi);

struct ChainBijection {
  std::vector<Chain> chains;
  std::vector<MapToOperad> maps;
  /// chains index -> maps index.
  std::vector<std::optional<std::size_t>> forward;
  /// maps index -> chains index.
  std::vector<std::optional<std::size_t>> backward;

  bool is_bijection() const;
};

ChainBijection chain_bijection(const FiniteOperad& p, const FinSimplex& a);

/// Round trips in both directions and sizes.
Report check_chain_bijection(const FiniteOperad& p, const FinSimplex& a, const std::string& instance);

/// For every chain over A: restricting along phi then mapping equals
/// mapping then precomposing with omega(phi, A).
Report check_naturality(const FiniteOperad& p, const FinSimplex& a, const SimplicialOperator& phi,
                        const std::string& instance);

/// Fib1, Fib2 and Fib3 over the skeleton <0>, ..., <N>. Fib1 is checked
/// against every beta with target <0> or <1>; a beta with a larger target
/// splits into its rho^j beta by Fib3, which is checked for every map.
Report check_fibrous(const EllCategory& cat, std::size_t truncation, const std::string& instance);

/// The defect fixtures: l(P) with one deliberate fault each.
enum class EllDefect {
  DropBinaryFamilies,
  DuplicateMorphism,
  UnorderedCompose,
  FakeUnary,
  NonIdentityLift,
};
std::vector<EllDefect> all_defects();
std::string to_string(EllDefect d);
std::unique_ptr<EllCategory> make_defective(const FiniteOperad& p, EllDefect d);

}  // namespace dendrotensor
