#include "dendrotensor/segal.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "dendrotensor/error.hpp"

namespace dendrotensor {

namespace {

CutResult split(const Tree& tree, const std::string& edge) {
  const auto b = tree.find(edge);
  if (b && tree.is_inner(*b)) return cut_at(tree, edge);
  if (!b || *b == tree.root() || !tree.is_stump(*b))
    throw DomainError(edge + " is neither an inner edge nor a stump edge");
  auto specs = tree.vertex_specs();
  std::erase_if(specs, [&](const VertexSpec& v) { return v.out == edge; });
  return {Tree::make(tree.name(tree.root()), std::move(specs)), Tree::make(edge, {VertexSpec{edge, {}}})};
}

}  // namespace

Report segal_d1_check(const FiniteOperad& p, const Tree& tree, const std::string& edge,
                      const std::string& instance) {
  const auto [lower_tree, upper_tree] = split(tree, edge);
  Report r("segal", instance);
  try {
    const ForestPtr whole = share(tree), lower = share(lower_tree), upper = share(upper_tree);
    const auto maps = p.maps_from(whole);
    const auto lower_maps = p.maps_from(lower);
    const auto upper_maps = p.maps_from(upper);
    const EdgeIndex lower_b = *lower->find(edge);
    const EdgeIndex upper_b = *upper->find(edge);

    std::map<Color, std::size_t> upper_by_color;
    for (const auto& u : upper_maps) ++upper_by_color[u.colors[upper_b]];
    std::size_t fiber_product = 0;
    for (const auto& l : lower_maps) {
      auto it = upper_by_color.find(l.colors[lower_b]);
      if (it != upper_by_color.end()) fiber_product += it->second;
    }
    const std::set<MapToOperad> lower_set(lower_maps.begin(), lower_maps.end());
    const std::set<MapToOperad> upper_set(upper_maps.begin(), upper_maps.end());

    std::set<std::pair<MapToOperad, MapToOperad>> image;
    for (std::size_t k = 0; k < maps.size(); ++k) {
      auto l = restrict_to(maps[k], lower);
      auto u = restrict_to(maps[k], upper);
      if (!lower_set.count(l) || !upper_set.count(u) || l.colors[lower_b] != u.colors[upper_b])
        r.fail({{"reason", "restriction leaves the fiber product"}, {"map", k}});
      image.emplace(std::move(l), std::move(u));
    }
    r.note("maps", maps.size());
    r.note("fiber_product", fiber_product);
    if (image.size() != maps.size())
      r.fail({{"reason", "restriction is not injective"}, {"maps", maps.size()}, {"image", image.size()}});
    if (maps.size() != fiber_product)
      r.fail({{"reason", "cardinality mismatch"}, {"maps", maps.size()}, {"fiber_product", fiber_product}});
  } catch (const Error& e) {
    r.fail({{"reason", "exception"}, {"what", e.what()}});
  }
  return r;
}

Report d3_check(const FiniteOperad& p, const Forest& forest, const std::string& instance) {
  Report r("d3", instance);
  try {
    const ForestPtr whole = share(forest);
    const auto maps = p.maps_from(whole);
    std::vector<ForestPtr> parts;
    std::vector<std::set<MapToOperad>> part_maps;
    std::size_t product = 1;
    for (const auto& t : forest.components()) {
      parts.push_back(share(t));
      const auto ms = p.maps_from(parts.back());
      part_maps.emplace_back(ms.begin(), ms.end());
      product *= ms.size();
    }
    std::set<std::vector<MapToOperad>> image;
    for (std::size_t k = 0; k < maps.size(); ++k) {
      std::vector<MapToOperad> tuple;
      for (std::size_t c = 0; c < parts.size(); ++c) {
        tuple.push_back(restrict_to(maps[k], parts[c]));
        if (!part_maps[c].count(tuple.back()))
          r.fail({{"reason", "restriction is not a map"}, {"map", k}, {"component", c}});
      }
      image.insert(std::move(tuple));
    }
    r.note("maps", maps.size());
    r.note("product", product);
    if (image.size() != maps.size())
      r.fail({{"reason", "restriction is not injective"}, {"maps", maps.size()}, {"image", image.size()}});
    if (maps.size() != product)
      r.fail({{"reason", "cardinality mismatch"}, {"maps", maps.size()}, {"product", product}});
  } catch (const Error& e) {
    r.fail({{"reason", "exception"}, {"what", e.what()}});
  }
  return r;
}

}  // namespace dendrotensor
