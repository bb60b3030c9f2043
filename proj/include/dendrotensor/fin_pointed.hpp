#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace dendrotensor {

/// A pointed map <m> -> <n> on the skeleton; elements are 0-based here and
/// 1-based in text. nullopt is the basepoint.
struct FinMap {
  std::size_t source = 0;
  std::size_t target = 0;
  std::vector<std::optional<std::size_t>> values;

  static FinMap identity(std::size_t n);
  /// rho^i: <n> -> <1>, keeping only element i.
  static FinMap rho(std::size_t i, std::size_t n);
  /// Throws DomainError unless the values fit the declared sizes.
  static FinMap make(std::size_t source, std::size_t target,
                     std::vector<std::optional<std::size_t>> values);

  bool is_inert() const;
  bool is_active() const;
  /// Preimage of each target element, in increasing order.
  std::vector<std::vector<std::size_t>> fibers() const;

  friend auto operator<=>(const FinMap&, const FinMap&) = default;
};

enum class FinKind { Inert, Active, Both, Neither };
std::string to_string(FinKind k);
FinKind classify(const FinMap& f);

/// g after f.
FinMap compose(const FinMap& g, const FinMap& f);

/// f = active o inert, through the surviving elements in increasing order.
struct Factorization {
  FinMap inert;
  FinMap active;
};
Factorization factorize(const FinMap& f);

/// <m> smash <n> = <mn>, with (i, j) at position i*n + j.
std::size_t smash(std::size_t m, std::size_t n);
FinMap smash(const FinMap& f, const FinMap& g);

/// Every pointed map <m> -> <n>, lexicographic in the values with the
/// basepoint first.
std::vector<FinMap> all_fin_maps(std::size_t m, std::size_t n);
std::vector<FinMap> inert_maps(std::size_t m, std::size_t n);

/// "1>1,2>*" style: one entry per source element, 1-based.
std::string to_string(const FinMap& f);
/// Parses "m:n:v1,v2,..." where each v is a 1-based target or '*'.
FinMap parse_fin_map(const std::string& text);

}  // namespace dendrotensor
