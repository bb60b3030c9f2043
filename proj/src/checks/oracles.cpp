#include "dendrotensor/checks/oracles.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <string>

namespace dendrotensor::checks {

std::size_t lattice_paths(const std::vector<std::size_t>& sides) {
  std::map<std::vector<std::size_t>, std::size_t> memo;
  std::function<std::size_t(const std::vector<std::size_t>&)> count = [&](const std::vector<std::size_t>& at) {
    if (std::all_of(at.begin(), at.end(), [](auto v) { return v == 0; })) return std::size_t{1};
    if (auto it = memo.find(at); it != memo.end()) return it->second;
    std::size_t total = 0;
    for (std::size_t i = 0; i < at.size(); ++i) {
      if (at[i] == 0) continue;
      auto prev = at;
      --prev[i];
      total += count(prev);
    }
    memo.emplace(at, total);
    return total;
  };
  return count(sides);
}

std::string shape_key(const Forest& forest) {
  std::function<std::string(const Tree&, EdgeIndex)> key = [&](const Tree& t, EdgeIndex e) -> std::string {
    if (!t.has_vertex(e)) return "|";
    std::vector<std::string> parts;
    for (auto c : t.inputs(e)) parts.push_back(key(t, c));
    std::sort(parts.begin(), parts.end());
    std::string out = "(";
    for (const auto& s : parts) out += s;
    return out + ")";
  };
  std::vector<std::string> parts;
  for (const auto& t : forest.components()) parts.push_back(key(t, t.root()));
  std::sort(parts.begin(), parts.end());
  std::string out = "{";
  for (const auto& s : parts) out += s + ";";
  return out + "}";
}

std::vector<FreeAlgebraElement> free_algebra_by_orbits(const FiniteOperad& p, const std::vector<Color>& r,
                                                       const std::vector<std::size_t>& x_sizes, Color d) {
  std::set<FreeAlgebraElement> out;
  for (const auto& op : p.operations_to(d)) {
    const std::size_t k = op.inputs.size();
    std::vector<std::vector<std::size_t>> choices(k);
    for (std::size_t t = 0; t < k; ++t)
      for (std::size_t i = 0; i < r.size(); ++i)
        if (r[i] == op.inputs[t]) choices[t].push_back(i);
    std::vector<std::size_t> idx(k), x(k);
    std::function<void(std::size_t)> pick_index, pick_label;
    pick_label = [&](std::size_t t) {
      if (t == k) {
        std::vector<std::size_t> sigma(k);
        std::iota(sigma.begin(), sigma.end(), 0);
        std::optional<std::tuple<std::vector<std::size_t>, std::vector<std::size_t>, Op>> best;
        do {
          std::vector<std::size_t> i2, x2;
          for (auto s : sigma) {
            i2.push_back(idx[s]);
            x2.push_back(x[s]);
          }
          auto candidate = std::make_tuple(std::move(i2), std::move(x2), p.permute(op, sigma));
          if (!best || candidate < *best) best = std::move(candidate);
        } while (std::next_permutation(sigma.begin(), sigma.end()));
        auto& [g, xs, o] = *best;
        out.insert(FreeAlgebraElement{g, xs, o});
        return;
      }
      for (std::size_t v = 0; v < x_sizes[idx[t]]; ++v) {
        x[t] = v;
        pick_label(t + 1);
      }
    };
    pick_index = [&](std::size_t t) {
      if (t == k) {
        pick_label(0);
        return;
      }
      for (auto i : choices[t]) {
        idx[t] = i;
        pick_index(t + 1);
      }
    };
    pick_index(0);
  }
  return {out.begin(), out.end()};
}

}  // namespace dendrotensor::checks
