#include "dendrotensor/level_forest.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "json.hpp"

namespace dendrotensor {

FinSimplex::FinSimplex(std::vector<std::vector<std::string>> levels, std::vector<LevelMap> maps)
    : levels_(std::move(levels)), maps_(std::move(maps)) {
  if (levels_.empty()) throw DomainError("a simplex needs at least one level");
  if (maps_.size() + 1 != levels_.size()) {
    throw DomainError("expected " + std::to_string(levels_.size() - 1) + " maps, got " +
                      std::to_string(maps_.size()));
  }
  for (std::size_t i = 0; i < levels_.size(); ++i) {
    std::set<std::string> seen;
    for (const auto& x : levels_[i]) {
      if (x.empty()) throw DomainError("empty element name in level " + std::to_string(i));
      if (x == "*") throw DomainError("'*' is reserved for the basepoint");
      if (!seen.insert(x).second) {
        throw DomainError("duplicate element '" + x + "' in level " + std::to_string(i));
      }
    }
  }
  for (std::size_t i = 0; i < maps_.size(); ++i) {
    if (maps_[i].size() != levels_[i].size()) {
      throw DomainError("map " + std::to_string(i + 1) + " is not total");
    }
    for (const auto& v : maps_[i]) {
      if (v && *v >= levels_[i + 1].size()) {
        throw DomainError("map " + std::to_string(i + 1) + " lands outside its target");
      }
    }
  }
}

LevelMap FinSimplex::composite(std::size_t i, std::size_t j) const {
  LevelMap out(levels_[j].size());
  for (std::size_t p = 0; p < out.size(); ++p) out[p] = p;
  for (std::size_t k = j + 1; k <= i; ++k) {
    for (auto& v : out)
      if (v) v = maps_[k - 1][*v];
  }
  return out;
}

FinSimplex parse_fin_simplex(const std::string& text) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), e.byte);
  }
  auto element = [](const json& j) -> std::string {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_number_integer()) return std::to_string(j.get<long long>());
    throw ParseError("level elements must be strings or integers");
  };
  if (!doc.is_object() || !doc.contains("levels") || !doc["levels"].is_array()) {
    throw ParseError("expected an object with a \"levels\" array");
  }
  std::vector<std::vector<std::string>> levels;
  for (const auto& lv : doc["levels"]) {
    if (!lv.is_array()) throw ParseError("each level must be an array");
    std::vector<std::string> names;
    for (const auto& x : lv) names.push_back(element(x));
    levels.push_back(std::move(names));
  }
  if (levels.empty()) throw ParseError("\"levels\" must not be empty");
  json maps_json = doc.value("maps", json::array());
  if (!maps_json.is_array()) throw ParseError("\"maps\" must be an array");
  if (maps_json.size() + 1 != levels.size()) {
    throw ParseError("expected " + std::to_string(levels.size() - 1) + " maps");
  }
  std::vector<LevelMap> maps;
  for (std::size_t i = 0; i < maps_json.size(); ++i) {
    const auto& m = maps_json[i];
    if (!m.is_object()) throw ParseError("each map must be an object");
    LevelMap lm(levels[i].size());
    std::vector<std::uint8_t> seen(levels[i].size(), 0);
    for (auto it = m.begin(); it != m.end(); ++it) {
      auto src = std::find(levels[i].begin(), levels[i].end(), it.key());
      if (src == levels[i].end()) {
        throw ParseError("map " + std::to_string(i + 1) + ": unknown source '" + it.key() + "'");
      }
      const auto p = static_cast<std::size_t>(src - levels[i].begin());
      const std::string dst = element(it.value());
      if (dst != "*") {
        auto d = std::find(levels[i + 1].begin(), levels[i + 1].end(), dst);
        if (d == levels[i + 1].end()) {
          throw ParseError("map " + std::to_string(i + 1) + ": unknown target '" + dst + "'");
        }
        lm[p] = static_cast<std::size_t>(d - levels[i + 1].begin());
      }
      seen[p] = 1;
    }
    for (std::size_t p = 0; p < seen.size(); ++p) {
      if (!seen[p]) {
        throw ParseError("map " + std::to_string(i + 1) + " is undefined on '" +
                         levels[i][p] + "'");
      }
    }
    maps.push_back(std::move(lm));
  }
  try {
    return FinSimplex(std::move(levels), std::move(maps));
  } catch (const DomainError& e) {
    throw ParseError(e.what());
  }
}

std::string to_json(const FinSimplex& a) {
  nlohmann::ordered_json doc;
  doc["levels"] = a.levels();
  auto maps = nlohmann::ordered_json::array();
  for (std::size_t i = 1; i <= a.length(); ++i) {
    nlohmann::ordered_json m = nlohmann::ordered_json::object();
    const auto& lm = a.map(i);
    for (std::size_t p = 0; p < lm.size(); ++p)
      m[a.level(i - 1)[p]] = lm[p] ? a.level(i)[*lm[p]] : std::string("*");
    maps.push_back(std::move(m));
  }
  doc["maps"] = std::move(maps);
  return doc.dump();
}

// ---------------------------------------------------------------------------

SimplicialOperator SimplicialOperator::identity(std::size_t n) {
  SimplicialOperator op{{}, n};
  for (std::size_t i = 0; i <= n; ++i) op.values.push_back(i);
  return op;
}

SimplicialOperator SimplicialOperator::face(std::size_t i, std::size_t n) {
  if (n == 0 || i > n) throw DomainError("face d_" + std::to_string(i) + " into [" +
                                         std::to_string(n) + "] does not exist");
  SimplicialOperator op{{}, n};
  for (std::size_t k = 0; k <= n; ++k)
    if (k != i) op.values.push_back(k);
  return op;
}

SimplicialOperator SimplicialOperator::degeneracy(std::size_t i, std::size_t n) {
  if (i > n) throw DomainError("degeneracy s_" + std::to_string(i) + " onto [" +
                               std::to_string(n) + "] does not exist");
  SimplicialOperator op{{}, n};
  for (std::size_t k = 0; k <= n; ++k) {
    op.values.push_back(k);
    if (k == i) op.values.push_back(k);
  }
  return op;
}

SimplicialOperator compose(const SimplicialOperator& phi, const SimplicialOperator& psi) {
  if (psi.target != phi.source()) throw DomainError("simplicial operators are not composable");
  SimplicialOperator out{{}, phi.target};
  for (auto v : psi.values) out.values.push_back(phi.values[v]);
  return out;
}

FinSimplex restrict(const FinSimplex& a, const SimplicialOperator& phi) {
  if (phi.target != a.length()) {
    throw DomainError("operator lands in [" + std::to_string(phi.target) +
                      "] but the simplex has length " + std::to_string(a.length()));
  }
  for (std::size_t j = 1; j < phi.values.size(); ++j) {
    if (phi.values[j] < phi.values[j - 1]) throw DomainError("operator is not monotone");
  }
  std::vector<std::vector<std::string>> levels;
  std::vector<LevelMap> maps;
  for (std::size_t j = 0; j < phi.values.size(); ++j) {
    levels.push_back(a.level(phi.values[j]));
    if (j > 0) maps.push_back(a.composite(phi.values[j], phi.values[j - 1]));
  }
  return FinSimplex(std::move(levels), std::move(maps));
}

std::string level_edge_name(std::size_t level, const std::string& element) {
  return "\xE2\x84\x93" + std::to_string(level) + ":" + element;  // U+2113 script l
}

Forest omega(const FinSimplex& a) {
  const std::size_t n = a.length();
  // parent[i][p]: position in level i+1 of the edge below, if any.
  struct Root {
    std::size_t level, pos;
  };
  std::vector<Root> roots;
  for (std::size_t p = 0; p < a.level(n).size(); ++p) roots.push_back({n, p});
  for (std::size_t i = n; i-- > 0;) {
    const auto& lm = a.map(i + 1);
    for (std::size_t p = 0; p < lm.size(); ++p)
      if (!lm[p]) roots.push_back({i, p});
  }

  std::vector<Tree> trees;
  for (const auto& r : roots) {
    std::vector<VertexSpec> vertices;
    // Walk up level by level from the root.
    std::vector<std::size_t> frontier{r.pos};
    for (std::size_t i = r.level; i > 0; --i) {
      const auto& lm = a.map(i);
      std::vector<std::size_t> next;
      for (auto p : frontier) {
        VertexSpec v{level_edge_name(i, a.level(i)[p]), {}};
        for (std::size_t q = 0; q < lm.size(); ++q) {
          if (lm[q] && *lm[q] == p) {
            v.in.push_back(level_edge_name(i - 1, a.level(i - 1)[q]));
            next.push_back(q);
          }
        }
        vertices.push_back(std::move(v));
      }
      frontier = std::move(next);
    }
    trees.push_back(Tree::make(level_edge_name(r.level, a.level(r.level)[r.pos]),
                               std::move(vertices)));
  }
  return Forest(std::move(trees));
}

OperadMap omega(const SimplicialOperator& phi, const FinSimplex& a) {
  const FinSimplex b = restrict(a, phi);
  auto source = share(omega(b));
  auto target = share(omega(a));
  OperadMap f{source, target, std::vector<EdgeIndex>(source->edge_count()), {}};
  for (std::size_t j = 0; j < b.levels().size(); ++j) {
    const std::size_t i = phi.values[j];
    for (const auto& x : b.level(j)) {
      f.edge_map[source->at(level_edge_name(j, x))] = target->at(level_edge_name(i, x));
    }
  }
  for (std::size_t j = 1; j < b.levels().size(); ++j) {
    const std::size_t i = phi.values[j], i0 = phi.values[j - 1];
    const auto lm = a.composite(i, i0);
    for (std::size_t p = 0; p < b.level(j).size(); ++p) {
      Operation op{target->at(level_edge_name(i, a.level(i)[p])), {}};
      for (std::size_t q = 0; q < lm.size(); ++q) {
        if (lm[q] && *lm[q] == p) op.inputs.push_back(target->at(level_edge_name(i0, a.level(i0)[q])));
      }
      std::sort(op.inputs.begin(), op.inputs.end());
      f.vertex_map.emplace(source->at(level_edge_name(j, b.level(j)[p])), std::move(op));
    }
  }
  return f;
}

// ---------------------------------------------------------------------------

std::vector<std::size_t> component_heights(const Forest& forest) {
  std::vector<std::size_t> out;
  for (const auto& t : forest.components()) {
    std::size_t h = 0;
    for (EdgeIndex e = 0; e < t.edge_count(); ++e) {
      const auto d = t.depth(e);
      if (t.is_leaf(e)) h = std::max(h, d);
      if (t.is_stump(e)) h = std::max(h, d + 1);
    }
    out.push_back(h);
  }
  return out;
}

RetractWitness retract_witness(const Forest& forest) {
  const auto heights = component_heights(forest);
  const std::size_t n = heights.empty() ? 0 : *std::max_element(heights.begin(), heights.end());

  std::set<std::string> used;
  for (EdgeIndex g = 0; g < forest.edge_count(); ++g) used.insert(forest.name(g));
  std::size_t gen = 0;
  auto fresh = [&](const std::string& base, std::size_t k) {
    std::string candidate = base + std::to_string(k);
    while (used.count(candidate)) candidate = "gen" + std::to_string(gen++);
    used.insert(candidate);
    return candidate;
  };

  // Pad every shallow leaf with a unary chain down to level 0.
  std::vector<Tree> padded_trees;
  std::map<std::string, std::size_t> level_of;
  std::map<std::string, std::string> collapse;  // padded edge -> edge of F
  for (std::size_t c = 0; c < forest.component_count(); ++c) {
    const Tree& t = forest.component(c);
    auto specs = t.vertex_specs();
    for (EdgeIndex e = 0; e < t.edge_count(); ++e) {
      const auto level = heights[c] - t.depth(e);
      level_of[t.name(e)] = level;
      collapse[t.name(e)] = t.name(e);
      if (!t.is_leaf(e)) continue;
      std::string below = t.name(e);
      for (std::size_t k = 1; k <= level; ++k) {
        std::string above = fresh(t.name(e), k);
        specs.push_back(VertexSpec{below, {above}});
        level_of[above] = level - k;
        collapse[above] = t.name(e);
        below = above;
      }
    }
    padded_trees.push_back(Tree::make(t.name(t.root()), std::move(specs)));
  }
  Forest padded(std::move(padded_trees));

  std::vector<std::vector<std::string>> levels(n + 1);
  std::map<std::string, std::size_t> position;
  for (EdgeIndex g = 0; g < padded.edge_count(); ++g) {
    const auto& name = padded.name(g);
    auto& lv = levels[level_of.at(name)];
    position[name] = lv.size();
    lv.push_back(name);
  }
  std::vector<LevelMap> maps;
  for (std::size_t i = 1; i <= n; ++i) {
    LevelMap lm;
    for (const auto& x : levels[i - 1]) {
      auto p = padded.parent(padded.at(x));
      if (p)
        lm.push_back(position.at(padded.name(*p)));
      else
        lm.push_back(std::nullopt);
    }
    maps.push_back(std::move(lm));
  }
  FinSimplex simplex(std::move(levels), std::move(maps));

  auto source = share(forest);
  auto level_forest = share(omega(simplex));
  std::vector<EdgeIndex> s_map(forest.edge_count());
  for (EdgeIndex g = 0; g < forest.edge_count(); ++g) {
    const auto& x = forest.name(g);
    s_map[g] = level_forest->at(level_edge_name(level_of.at(x), x));
  }
  std::vector<EdgeIndex> r_map(level_forest->edge_count());
  for (EdgeIndex g = 0; g < padded.edge_count(); ++g) {
    const auto& x = padded.name(g);
    r_map[level_forest->at(level_edge_name(level_of.at(x), x))] = forest.at(collapse.at(x));
  }
  return RetractWitness{simplex, std::move(padded),
                        from_edge_map(source, level_forest, std::move(s_map)),
                        from_edge_map(level_forest, source, std::move(r_map))};
}

}  // namespace dendrotensor
