#include "dendrotensor/free_algebra.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "counter.hpp"
#include "dendrotensor/error.hpp"

namespace dendrotensor {

namespace {

// Permutations of 0..k-1 that fix a sorted sequence.
std::vector<std::vector<std::size_t>> stabilizer(const std::vector<std::size_t>& gamma) {
  std::vector<std::vector<std::size_t>> out{{}};
  std::size_t start = 0;
  while (start < gamma.size()) {
    std::size_t end = start;
    while (end < gamma.size() && gamma[end] == gamma[start]) ++end;
    std::vector<std::size_t> block(end - start);
    for (std::size_t t = 0; t < block.size(); ++t) block[t] = start + t;
    std::vector<std::vector<std::size_t>> next;
    for (const auto& prefix : out) {
      auto b = block;
      do {
        auto s = prefix;
        s.insert(s.end(), b.begin(), b.end());
        next.push_back(std::move(s));
      } while (std::next_permutation(b.begin(), b.end()));
    }
    out = std::move(next);
    start = end;
  }
  return out;
}

}  // namespace

std::vector<FreeAlgebraElement> free_algebra(const FiniteOperad& p, const std::vector<Color>& r,
                                             const std::vector<std::size_t>& x_sizes, Color d) {
  if (x_sizes.size() != r.size()) throw DomainError("X and r have different index sets");
  std::set<Color> image(r.begin(), r.end());
  for (Color c = 0; c < p.color_count(); ++c)
    if (!image.count(c)) throw DomainError("recoloring misses color " + p.color_name(c));
  if (d >= p.color_count()) throw DomainError("color out of range");

  std::size_t max_arity = 0;
  for (const auto& op : p.operations_to(d)) max_arity = std::max(max_arity, op.inputs.size());

  std::set<FreeAlgebraElement> out;
  std::vector<std::size_t> gamma;
  std::function<void(std::size_t)> visit = [&](std::size_t from) {
    std::vector<Color> colors;
    for (auto i : gamma) colors.push_back(r[i]);
    const auto ops = p.operations(colors, d);
    if (!ops.empty()) {
      const auto autos = stabilizer(gamma);
      std::vector<std::size_t> radix;
      for (auto i : gamma) radix.push_back(x_sizes[i]);
      const bool inhabited = std::all_of(radix.begin(), radix.end(), [](auto n) { return n > 0; });
      if (inhabited) {
        std::vector<std::size_t> x(gamma.size(), 0);
        do {
          for (const auto& op : ops) {
            std::optional<FreeAlgebraElement> best;
            for (const auto& sigma : autos) {
              FreeAlgebraElement e{gamma, {}, p.permute(op, sigma)};
              for (auto s : sigma) e.x.push_back(x[s]);
              if (!best || e < *best) best = std::move(e);
            }
            out.insert(std::move(*best));
          }
        } while (detail::next_tuple(x, radix));
      }
    }
    if (gamma.size() == max_arity) return;
    for (std::size_t i = from; i < r.size(); ++i) {
      gamma.push_back(i);
      visit(i);
      gamma.pop_back();
    }
  };
  visit(0);
  return {out.begin(), out.end()};
}

}  // namespace dendrotensor
