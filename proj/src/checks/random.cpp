#include "dendrotensor/checks/random.hpp"

#include <algorithm>
#include <limits>

namespace dendrotensor::checks {

std::uint64_t Rng::below(std::uint64_t n) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x;
  do x = engine_();
  while (x >= limit);
  return x % n;
}

bool Rng::chance(double p) {
  constexpr std::uint64_t kScale = std::uint64_t{1} << 53;
  return static_cast<double>(engine_() >> 11) < p * static_cast<double>(kScale);
}

namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

}  // namespace

Rng Rng::derive(std::uint64_t seed, std::string_view suite, std::uint64_t index) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (unsigned char ch : suite) h = (h ^ ch) * 0x100000001B3ull;
  return Rng(splitmix(splitmix(seed ^ h) ^ index));
}

Tree random_tree(Rng& rng, const TreeShape& shape, const std::string& prefix) {
  const std::size_t target = rng.between(1, std::max<std::size_t>(1, shape.max_edges));
  std::size_t count = 1;
  auto fresh = [&] { return prefix + std::to_string(count++); };
  const std::string root = prefix + "0";
  std::vector<std::string> open{root};
  std::vector<VertexSpec> vertices;
  while (!open.empty()) {
    const std::size_t room = target - count;
    const std::size_t k = rng.below(open.size());
    const std::string e = open[k];
    if (room == 0) {
      if (!rng.chance(shape.stump_probability)) break;
      open.erase(open.begin() + static_cast<std::ptrdiff_t>(k));
      vertices.push_back({e, {}});
      continue;
    }
    open.erase(open.begin() + static_cast<std::ptrdiff_t>(k));
    if (rng.chance(shape.stump_probability)) {
      vertices.push_back({e, {}});
      continue;
    }
    const std::size_t arity = rng.between(1, std::min(shape.max_arity, room));
    VertexSpec v{e, {}};
    for (std::size_t i = 0; i < arity; ++i) {
      v.in.push_back(fresh());
      open.push_back(v.in.back());
    }
    vertices.push_back(std::move(v));
  }
  return Tree::make(root, std::move(vertices));
}

Tree random_tree_with_inner_edge(Rng& rng, const TreeShape& shape, const std::string& prefix) {
  while (true) {
    Tree t = random_tree(rng, shape, prefix);
    if (!t.inner_edges().empty()) return t;
  }
}

Forest random_forest(Rng& rng, const TreeShape& shape, bool allow_empty) {
  if (allow_empty && rng.chance(0.1)) return Forest();
  const std::size_t components = rng.between(1, 3);
  std::vector<Tree> trees;
  std::size_t budget = shape.max_edges;
  for (std::size_t c = 0; c < components && budget > 0; ++c) {
    TreeShape s = shape;
    s.max_edges = budget;
    trees.push_back(random_tree(rng, s, std::string(1, static_cast<char>('a' + c))));
    budget -= trees.back().edge_count();
  }
  return Forest(std::move(trees));
}

Tree linear_tree(std::size_t vertices, const std::string& prefix) {
  std::vector<VertexSpec> specs;
  for (std::size_t i = 0; i < vertices; ++i)
    specs.push_back({prefix + std::to_string(i), {prefix + std::to_string(i + 1)}});
  return Tree::make(prefix + "0", std::move(specs));
}

FinSimplex random_simplex(Rng& rng, std::size_t max_width, std::size_t max_length) {
  const std::size_t length = rng.below(max_length + 1);
  std::vector<std::vector<std::string>> levels;
  for (std::size_t i = 0; i <= length; ++i) {
    levels.emplace_back();
    const std::size_t width = rng.below(max_width + 1);
    for (std::size_t x = 1; x <= width; ++x) levels.back().push_back(std::to_string(x));
  }
  std::vector<LevelMap> maps;
  for (std::size_t i = 1; i <= length; ++i) {
    LevelMap m;
    for (std::size_t x = 0; x < levels[i - 1].size(); ++x) {
      const std::size_t v = rng.below(levels[i].size() + 1);
      m.push_back(v == levels[i].size() ? std::nullopt : std::optional<std::size_t>(v));
    }
    maps.push_back(std::move(m));
  }
  return FinSimplex(std::move(levels), std::move(maps));
}

SimplicialOperator random_operator(Rng& rng, std::size_t n, std::size_t max_source) {
  const std::size_t m = rng.below(max_source + 1);
  SimplicialOperator phi{{}, n};
  for (std::size_t j = 0; j <= m; ++j) phi.values.push_back(rng.below(n + 1));
  std::sort(phi.values.begin(), phi.values.end());
  return phi;
}

}  // namespace dendrotensor::checks
