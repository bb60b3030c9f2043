#include "dendrotensor/ell.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <set>

#include "counter.hpp"
#include "dendrotensor/error.hpp"

namespace dendrotensor {

namespace {

EllMorphism compose_components(const FiniteOperad& p, const EllMorphism& g, const EllMorphism& f,
                               bool reorder) {
  if (f.over.target != g.over.source || f.target != g.source)
    throw DomainError("morphisms are not composable");
  EllMorphism out{compose(g.over, f.over), f.source, g.target, {}};
  const auto gfib = g.over.fibers();
  const auto ffib = f.over.fibers();
  out.components.reserve(gfib.size());
  std::vector<Op> gs;
  std::vector<std::size_t> concat;
  gs.reserve(f.components.size());
  concat.reserve(f.over.source);
  for (std::size_t k = 0; k < gfib.size(); ++k) {
    gs.clear();
    concat.clear();
    for (auto j : gfib[k]) {
      gs.push_back(f.components[j]);
      concat.insert(concat.end(), ffib[j].begin(), ffib[j].end());
    }
    Op op = p.compose(g.components[k], gs);
    if (reorder && !std::is_sorted(concat.begin(), concat.end())) {
      auto sorted = concat;
      std::sort(sorted.begin(), sorted.end());
      std::vector<std::size_t> sigma;
      for (auto i : sorted)
        sigma.push_back(static_cast<std::size_t>(std::find(concat.begin(), concat.end(), i) - concat.begin()));
      op = p.permute(op, sigma);
    }
    out.components.push_back(std::move(op));
  }
  return out;
}

Json fin_json(const FinMap& f) { return to_string(f); }

Json coloring_json(const FiniteOperad& p, const Coloring& c) {
  Json j = Json::array();
  for (auto x : c) j.push_back(p.color_name(x));
  return j;
}

std::vector<Coloring> colorings(std::size_t colors, std::size_t n) {
  std::vector<Coloring> out;
  if (colors == 0 && n > 0) return out;
  Coloring c(n, 0);
  const std::vector<std::size_t> radix(n, colors);
  do out.push_back(c);
  while (detail::next_tuple(c, radix));
  return out;
}

}  // namespace

std::vector<EllMorphism> EllCategory::out(const FinMap& alpha, const Coloring& c) const {
  if (c.size() != alpha.source) throw DomainError("coloring does not lie over the source");
  std::vector<const std::vector<Op>*> options;
  std::vector<std::size_t> radix;
  std::size_t total = 1;
  for (const auto& fiber : alpha.fibers()) {
    Coloring seq;
    seq.reserve(fiber.size());
    for (auto i : fiber) seq.push_back(c[i]);
    const auto& ops = operations_from(seq);
    if (ops.empty()) return {};
    options.push_back(&ops);
    radix.push_back(ops.size());
    total *= ops.size();
  }
  std::vector<EllMorphism> result;
  result.reserve(total);
  std::vector<std::size_t> pick(options.size(), 0);
  do {
    EllMorphism m{alpha, c, {}, {}};
    m.components.reserve(options.size());
    m.target.reserve(options.size());
    for (std::size_t j = 0; j < options.size(); ++j) {
      const Op& op = (*options[j])[pick[j]];
      m.components.push_back(op);
      m.target.push_back(op.output);
    }
    result.push_back(std::move(m));
  } while (detail::next_tuple(pick, radix));
  return result;
}

const std::vector<Op>& EllCategory::operations_from(const Coloring& seq) const {
  std::lock_guard lock(memo_mutex_);
  auto it = memo_.find(seq);
  if (it == memo_.end()) it = memo_.emplace(seq, p_.operations_from(seq)).first;
  return it->second;
}

std::vector<EllMorphism> EllCategory::hom(const FinMap& alpha, const Coloring& c,
                                          const Coloring& d) const {
  if (d.size() != alpha.target) throw DomainError("coloring does not lie over the target");
  auto all = out(alpha, c);
  std::erase_if(all, [&](const EllMorphism& m) { return m.target != d; });
  return all;
}

EllMorphism EllCategory::compose(const EllMorphism& g, const EllMorphism& f) const {
  return compose_components(p_, g, f, true);
}

EllMorphism EllCategory::identity(const Coloring& c) const {
  EllMorphism m{FinMap::identity(c.size()), c, c, {}};
  for (auto x : c) m.components.push_back(p_.identity(x));
  return m;
}

EllMorphism EllCategory::inert_lift(const FinMap& alpha, const Coloring& c) const {
  if (!alpha.is_inert()) throw DomainError("lifts exist only for inert maps");
  if (c.size() != alpha.source) throw DomainError("coloring does not lie over the source");
  EllMorphism m{alpha, c, {}, {}};
  m.target.reserve(alpha.target);
  m.components.reserve(alpha.target);
  for (const auto& fiber : alpha.fibers()) {
    m.target.push_back(c[fiber.front()]);
    m.components.push_back(p_.identity(c[fiber.front()]));
  }
  return m;
}

std::vector<EllMorphism> ell_hom(const FiniteOperad& p, const FinMap& alpha, const Coloring& c,
                                 const Coloring& d) {
  return EllCategory(p).hom(alpha, c, d);
}

EllMorphism ell_compose(const FiniteOperad& p, const EllMorphism& g, const EllMorphism& f) {
  return EllCategory(p).compose(g, f);
}

// ---------------------------------------------------------------------------

FinMap level_map(const FinSimplex& a, std::size_t i) {
  return FinMap::make(a.level(i - 1).size(), a.level(i).size(), a.map(i));
}

std::vector<Chain> nerve_over(const EllCategory& cat, const FinSimplex& a) {
  std::vector<Chain> out;
  std::vector<FinMap> maps;
  for (std::size_t i = 1; i <= a.length(); ++i) maps.push_back(level_map(a, i));
  Chain chain;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == maps.size()) {
      out.push_back(chain);
      return;
    }
    for (auto& m : cat.out(maps[i], chain.objects.back())) {
      chain.objects.push_back(m.target);
      chain.arrows.push_back(std::move(m));
      rec(i + 1);
      chain.arrows.pop_back();
      chain.objects.pop_back();
    }
  };
  for (auto& c : colorings(cat.operad().color_count(), a.level(0).size())) {
    chain.objects = {std::move(c)};
    rec(0);
  }
  return out;
}

std::vector<Chain> nerve_over(const FiniteOperad& p, const FinSimplex& a) {
  return nerve_over(EllCategory(p), a);
}

namespace {

// Edge index of each (level, position) of A in a forest shaped like omega(A).
std::vector<std::vector<EdgeIndex>> level_edges(const FinSimplex& a, const Forest& f) {
  std::vector<std::vector<EdgeIndex>> out;
  for (std::size_t i = 0; i <= a.length(); ++i) {
    out.emplace_back();
    for (const auto& x : a.level(i)) {
      const auto e = f.find(level_edge_name(i, x));
      if (!e) throw DomainError("edge " + level_edge_name(i, x) + " is missing");
      out.back().push_back(*e);
    }
  }
  return out;
}

// sigma with tree input t = fiber input sigma[t].
std::vector<std::size_t> fiber_to_tree(const Forest& f, EdgeIndex v,
                                       const std::vector<EdgeIndex>& fiber_edges) {
  std::vector<std::size_t> sigma;
  for (auto t : f.inputs(v)) {
    auto it = std::find(fiber_edges.begin(), fiber_edges.end(), t);
    if (it == fiber_edges.end()) throw DomainError("vertex " + f.name(v) + " does not match its fiber");
    sigma.push_back(static_cast<std::size_t>(it - fiber_edges.begin()));
  }
  if (sigma.size() != fiber_edges.size()) throw DomainError("vertex " + f.name(v) + " does not match its fiber");
  return sigma;
}

std::vector<std::size_t> invert(const std::vector<std::size_t>& sigma) {
  std::vector<std::size_t> inv(sigma.size());
  for (std::size_t t = 0; t < sigma.size(); ++t) inv[sigma[t]] = t;
  return inv;
}

Op reorder(const Op& op, const std::vector<std::size_t>& sigma) {
  Op out{op.output, {}, op.tag};
  for (auto s : sigma) out.inputs.push_back(op.inputs.at(s));
  return out;
}

}  // namespace

MapToOperad chain_to_map(const Chain& chain, const FinSimplex& a, const ForestPtr& omega_a) {
  const Forest& f = *omega_a;
  const auto edges = level_edges(a, f);
  MapToOperad m{omega_a, std::vector<Color>(f.edge_count()), {}};
  for (std::size_t i = 0; i <= a.length(); ++i)
    for (std::size_t x = 0; x < edges[i].size(); ++x) m.colors[edges[i][x]] = chain.objects.at(i).at(x);
  for (std::size_t i = 1; i <= a.length(); ++i) {
    const auto fibers = chain.arrows.at(i - 1).over.fibers();
    for (std::size_t x = 0; x < edges[i].size(); ++x) {
      std::vector<EdgeIndex> fiber_edges;
      for (auto y : fibers[x]) fiber_edges.push_back(edges[i - 1][y]);
      const EdgeIndex v = edges[i][x];
      m.vertex_ops.emplace(v, reorder(chain.arrows[i - 1].components[x], fiber_to_tree(f, v, fiber_edges)));
    }
  }
  return m;
}

Chain map_to_chain(const MapToOperad& m, const FinSimplex& a) {
  const Forest& f = *m.source;
  const auto edges = level_edges(a, f);
  Chain chain;
  for (std::size_t i = 0; i <= a.length(); ++i) {
    Coloring c;
    for (auto e : edges[i]) c.push_back(m.colors.at(e));
    chain.objects.push_back(std::move(c));
  }
  for (std::size_t i = 1; i <= a.length(); ++i) {
    EllMorphism arrow{level_map(a, i), chain.objects[i - 1], chain.objects[i], {}};
    const auto fibers = arrow.over.fibers();
    for (std::size_t x = 0; x < edges[i].size(); ++x) {
      std::vector<EdgeIndex> fiber_edges;
      for (auto y : fibers[x]) fiber_edges.push_back(edges[i - 1][y]);
      const EdgeIndex v = edges[i][x];
      auto it = m.vertex_ops.find(v);
      if (it == m.vertex_ops.end()) throw DomainError("no operation at " + f.name(v));
      arrow.components.push_back(reorder(it->second, invert(fiber_to_tree(f, v, fiber_edges))));
    }
    chain.arrows.push_back(std::move(arrow));
  }
  return chain;
}

Chain restrict(const EllCategory& cat, const Chain& chain, const FinSimplex& a,
               const SimplicialOperator& phi) {
  if (phi.target != a.length()) throw DomainError("operator does not land in the simplex");
  Chain out;
  for (auto v : phi.values) out.objects.push_back(chain.objects.at(v));
  for (std::size_t j = 1; j < phi.values.size(); ++j) {
    const auto lo = phi.values[j - 1], hi = phi.values[j];
    EllMorphism acc = cat.identity(chain.objects[lo]);
    for (auto k = lo + 1; k <= hi; ++k) acc = cat.compose(chain.arrows[k - 1], acc);
    out.arrows.push_back(std::move(acc));
  }
  return out;
}

bool ChainBijection::is_bijection() const {
  if (chains.size() != maps.size()) return false;
  for (std::size_t i = 0; i < forward.size(); ++i) {
    if (!forward[i] || backward.at(*forward[i]) != i) return false;
  }
  for (std::size_t k = 0; k < backward.size(); ++k) {
    if (!backward[k] || forward.at(*backward[k]) != k) return false;
  }
  return true;
}

ChainBijection chain_bijection(const FiniteOperad& p, const FinSimplex& a) {
  ChainBijection b;
  b.chains = nerve_over(p, a);
  const ForestPtr omega_a = share(omega(a));
  b.maps = p.maps_from(omega_a);
  std::map<Chain, std::size_t> chain_index;
  for (std::size_t i = 0; i < b.chains.size(); ++i) chain_index.emplace(b.chains[i], i);
  std::map<MapToOperad, std::size_t> map_index;
  for (std::size_t k = 0; k < b.maps.size(); ++k) map_index.emplace(b.maps[k], k);
  for (const auto& c : b.chains) {
    auto it = map_index.find(chain_to_map(c, a, omega_a));
    b.forward.push_back(it == map_index.end() ? std::nullopt : std::optional(it->second));
  }
  for (const auto& m : b.maps) {
    std::optional<std::size_t> hit;
    try {
      auto it = chain_index.find(map_to_chain(m, a));
      if (it != chain_index.end()) hit = it->second;
    } catch (const DomainError&) {
    }
    b.backward.push_back(hit);
  }
  return b;
}

Report check_chain_bijection(const FiniteOperad& p, const FinSimplex& a, const std::string& instance) {
  Report r("nerve", instance);
  try {
    const auto b = chain_bijection(p, a);
    r.note("chains", b.chains.size());
    r.note("maps", b.maps.size());
    if (b.chains.size() != b.maps.size())
      r.fail({{"reason", "cardinality mismatch"}, {"chains", b.chains.size()}, {"maps", b.maps.size()}});
    for (std::size_t i = 0; i < b.chains.size(); ++i) {
      if (!b.forward[i]) r.fail({{"reason", "chain maps outside hom"}, {"chain", i}});
      else if (b.backward[*b.forward[i]] != i) r.fail({{"reason", "chain round trip differs"}, {"chain", i}});
    }
    for (std::size_t k = 0; k < b.maps.size(); ++k) {
      if (!b.backward[k]) r.fail({{"reason", "map has no chain"}, {"map", k}});
      else if (b.forward[*b.backward[k]] != k) r.fail({{"reason", "map round trip differs"}, {"map", k}});
    }
  } catch (const Error& e) {
    r.fail({{"reason", "exception"}, {"what", e.what()}});
  }
  return r;
}

Report check_naturality(const FiniteOperad& p, const FinSimplex& a, const SimplicialOperator& phi,
                        const std::string& instance) {
  Report r("nerve-naturality", instance);
  try {
    const EllCategory cat(p);
    const FinSimplex b = restrict(a, phi);
    const OperadMap g = omega(phi, a);
    const auto chains = nerve_over(cat, a);
    r.note("chains", chains.size());
    for (std::size_t i = 0; i < chains.size(); ++i) {
      const auto left = chain_to_map(restrict(cat, chains[i], a, phi), b, g.source);
      const auto right = precompose(chain_to_map(chains[i], a, g.target), g, p);
      if (!(left == right)) r.fail({{"reason", "square does not commute"}, {"chain", i}});
    }
  } catch (const Error& e) {
    r.fail({{"reason", "exception"}, {"what", e.what()}});
  }
  return r;
}

// ---------------------------------------------------------------------------

namespace {

// Morphisms over maps with at most one target element, memoized per
// coloring and fiber. Every set is sorted.
class SingleTargetCache {
 public:
  explicit SingleTargetCache(const EllCategory& cat) : cat_(cat) {}

  static FinMap map(std::size_t m, std::uint32_t mask, bool to_one) {
    FinMap f{m, to_one ? 1u : 0u, {}};
    for (std::size_t i = 0; i < m; ++i)
      f.values.push_back(to_one && (mask >> i & 1u) ? std::optional<std::size_t>(0) : std::nullopt);
    return f;
  }

  const std::vector<EllMorphism>& get(const Coloring& c, std::uint32_t mask, bool to_one) {
    const auto key = std::make_pair(c, to_one ? static_cast<std::int64_t>(mask) : -1);
    auto it = memo_.find(key);
    if (it == memo_.end()) {
      auto set = cat_.out(map(c.size(), mask, to_one), c);
      std::sort(set.begin(), set.end());
      it = memo_.emplace(key, std::move(set)).first;
    }
    return it->second;
  }

 private:
  const EllCategory& cat_;
  std::map<std::pair<Coloring, std::int64_t>, std::vector<EllMorphism>> memo_;
};

bool has_duplicates(const std::vector<EllMorphism>& sorted) {
  return std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end();
}

}  // namespace

Report check_fibrous(const EllCategory& cat, std::size_t truncation, const std::string& instance) {
  const FiniteOperad& p = cat.operad();
  const std::size_t n_max = truncation;
  if (n_max > 16) throw DomainError("truncation is too large");
  Report r("fibrous", instance);
  r.note("verified", "up to <" + std::to_string(n_max) + ">");
  r.note("fib1_targets", "<0>, <1>");

  std::vector<std::vector<Coloring>> objects;
  for (std::size_t n = 0; n <= n_max; ++n) objects.push_back(colorings(p.color_count(), n));
  SingleTargetCache single(cat);

  auto witness = [&](const char* axiom, const std::string& reason) {
    return Json{{"axiom", axiom}, {"reason", reason}};
  };

  // Fib1: composing with the lift of an inert alpha is a bijection
  // out(beta, alpha_! c) -> out(beta alpha, c).
  std::size_t fib1 = 0;
  for (std::size_t m = 0; m <= n_max; ++m) {
    for (std::size_t n = 0; n <= m; ++n) {
      for (const auto& alpha : inert_maps(m, n)) {
        for (const auto& c : objects[m]) {
          auto base = [&] { return Json{{"alpha", fin_json(alpha)}, {"c", coloring_json(p, c)}}; };
          try {
            const EllMorphism a = cat.inert_lift(alpha, c);
            if (a.over != alpha || a.source != c) {
              auto w = witness("Fib1", "lift does not lie over alpha");
              w.update(base());
              r.fail(w);
              continue;
            }
            for (std::uint32_t beta_mask = 0; beta_mask < (2u << n); ++beta_mask) {
              const bool to_one = beta_mask < (1u << n);
              if (!to_one && beta_mask != (1u << n)) continue;
              ++fib1;
              std::uint32_t pulled = 0;
              for (std::size_t i = 0; i < m; ++i)
                if (alpha.values[i] && (beta_mask >> *alpha.values[i] & 1u)) pulled |= 1u << i;
              const auto& lhs = single.get(a.target, beta_mask, to_one);
              const auto& rhs = single.get(c, pulled, to_one);
              if (lhs.empty() && rhs.empty()) continue;
              std::vector<EllMorphism> image;
              std::string problem;
              for (const auto& g : lhs) {
                auto h = cat.compose(g, a);
                if (!std::binary_search(rhs.begin(), rhs.end(), h)) problem = "composite is not a morphism over beta alpha";
                image.push_back(std::move(h));
              }
              std::sort(image.begin(), image.end());
              if (problem.empty() && has_duplicates(image)) problem = "composition with the lift is not injective";
              if (problem.empty() && (image.size() != rhs.size() || has_duplicates(rhs)))
                problem = "composition with the lift is not surjective";
              if (!problem.empty()) {
                auto w = witness("Fib1", problem);
                w.update(base());
                w["beta"] = fin_json(SingleTargetCache::map(n, beta_mask, to_one));
                w["lhs"] = lhs.size();
                w["rhs"] = rhs.size();
                r.fail(w);
              }
            }
          } catch (const Error& e) {
            auto w = witness("Fib1", e.what());
            w.update(base());
            r.fail(w);
          }
        }
      }
    }
  }

  // Fib2: morphisms over id<n> out of c biject with tuples of morphisms over
  // id<1> out of the c_i, via the lifts of the rho^i.
  std::size_t fib2 = 0;
  for (std::size_t n = 0; n <= n_max; ++n) {
    for (const auto& c : objects[n]) {
      ++fib2;
      auto base = [&] { return Json{{"c", coloring_json(p, c)}}; };
      try {
        const auto total = cat.out(FinMap::identity(n), c);
        std::vector<std::vector<EllMorphism>> factors;
        std::size_t product = 1;
        for (std::size_t i = 0; i < n; ++i) {
          factors.push_back(cat.out(FinMap::identity(1), {c[i]}));
          product *= factors.back().size();
        }
        std::set<std::vector<std::size_t>> tuples;
        for (const auto& g : total) {
          std::vector<std::size_t> tuple;
          for (std::size_t i = 0; i < n; ++i) {
            const auto rho = FinMap::rho(i, n);
            const auto along = cat.compose(cat.inert_lift(rho, g.target), g);
            const auto lift_c = cat.inert_lift(rho, c);
            std::vector<std::size_t> hits;
            for (std::size_t h = 0; h < factors[i].size(); ++h)
              if (cat.compose(factors[i][h], lift_c) == along) hits.push_back(h);
            if (hits.size() != 1) {
              auto w = witness("Fib2", hits.empty() ? "no factor component" : "factor component is not unique");
              w.update(base());
              w["i"] = i + 1;
              r.fail(w);
              tuple.push_back(factors[i].size());
            } else {
              tuple.push_back(hits.front());
            }
          }
          tuples.insert(std::move(tuple));
        }
        if (tuples.size() != total.size() || total.size() != product) {
          auto w = witness("Fib2", "not a product");
          w.update(base());
          w["morphisms"] = total.size();
          w["product"] = product;
          r.fail(w);
        }
      } catch (const Error& e) {
        auto w = witness("Fib2", e.what());
        w.update(base());
        r.fail(w);
      }
    }
  }

  // Fib3: out(f, y) -> prod_i out(rho^i f, y), g -> lift(rho^i) g, is a bijection.
  std::size_t fib3 = 0;
  for (std::size_t m = 0; m <= n_max; ++m) {
    for (std::size_t n = 0; n <= n_max; ++n) {
      const auto fs = all_fin_maps(m, n);
      std::vector<FinMap> rhos;
      for (std::size_t i = 0; i < n; ++i) rhos.push_back(FinMap::rho(i, n));
      for (const auto& f : fs) {
        std::vector<std::uint32_t> masks(n, 0);
        for (std::size_t j = 0; j < m; ++j)
          if (f.values[j]) masks[*f.values[j]] |= 1u << j;
        for (const auto& y : objects[m]) {
          ++fib3;
          auto base = [&] { return Json{{"f", fin_json(f)}, {"y", coloring_json(p, y)}}; };
          try {
            std::vector<const std::vector<EllMorphism>*> factors;
            std::size_t product = 1;
            for (std::size_t i = 0; i < n && product > 0; ++i) {
              factors.push_back(&single.get(y, masks[i], true));
              product *= factors.back()->size();
            }
            const auto total = cat.out(f, y);
            if (total.empty() && product == 0) continue;
            std::vector<std::vector<EllMorphism>> tuples;
            std::string problem;
            for (const auto& g : total) {
              std::vector<EllMorphism> tuple;
              for (std::size_t i = 0; i < n; ++i) {
                auto h = cat.compose(cat.inert_lift(rhos[i], g.target), g);
                if (i >= factors.size() || !std::binary_search(factors[i]->begin(), factors[i]->end(), h))
                  problem = "projection is not a morphism over rho^i f";
                tuple.push_back(std::move(h));
              }
              tuples.push_back(std::move(tuple));
            }
            std::sort(tuples.begin(), tuples.end());
            if (problem.empty() && std::adjacent_find(tuples.begin(), tuples.end()) != tuples.end())
              problem = "projection is not injective";
            if (problem.empty() && total.size() != product) problem = "projection is not surjective";
            if (!problem.empty()) {
              auto w = witness("Fib3", problem);
              w.update(base());
              w["morphisms"] = total.size();
              w["product"] = product;
              r.fail(w);
            }
          } catch (const Error& e) {
            auto w = witness("Fib3", e.what());
            w.update(base());
            r.fail(w);
          }
        }
      }
    }
  }
  r.note("fib1_cases", fib1);
  r.note("fib2_cases", fib2);
  r.note("fib3_cases", fib3);
  return r;
}

// ---------------------------------------------------------------------------

namespace {

class DropBinaryFamilies : public EllCategory {
 public:
  using EllCategory::EllCategory;
  std::vector<EllMorphism> out(const FinMap& alpha, const Coloring& c) const override {
    auto all = EllCategory::out(alpha, c);
    if (alpha.target < 2) return all;
    std::erase_if(all, [](const EllMorphism& m) {
      return std::any_of(m.components.begin(), m.components.end(),
                         [](const Op& op) { return op.inputs.size() == 2; });
    });
    return all;
  }
};

class DuplicateMorphism : public EllCategory {
 public:
  using EllCategory::EllCategory;
  std::vector<EllMorphism> out(const FinMap& alpha, const Coloring& c) const override {
    auto all = EllCategory::out(alpha, c);
    if (!all.empty()) all.push_back(all.front());
    return all;
  }
};

class UnorderedCompose : public EllCategory {
 public:
  using EllCategory::EllCategory;
  EllMorphism compose(const EllMorphism& g, const EllMorphism& f) const override {
    return compose_components(operad(), g, f, false);
  }
};

class FakeUnary : public EllCategory {
 public:
  using EllCategory::EllCategory;
  std::vector<EllMorphism> out(const FinMap& alpha, const Coloring& c) const override {
    auto all = EllCategory::out(alpha, c);
    if (alpha == FinMap::identity(1)) {
      constexpr std::size_t kFakeTag = 7919;
      all.push_back(EllMorphism{alpha, c, c, {Op{c[0], {c[0]}, kFakeTag}}});
    }
    return all;
  }
};

class NonIdentityLift : public EllCategory {
 public:
  using EllCategory::EllCategory;
  EllMorphism inert_lift(const FinMap& alpha, const Coloring& c) const override {
    auto m = EllCategory::inert_lift(alpha, c);
    for (std::size_t j = 0; j < m.components.size(); ++j) {
      for (const auto& op : operad().operations_from({m.target[j]})) {
        if (op.output != m.target[j]) {
          m.components[j] = op;
          m.target[j] = op.output;
          return m;
        }
      }
    }
    return m;
  }
};

}  // namespace

std::vector<EllDefect> all_defects() {
  return {EllDefect::DropBinaryFamilies, EllDefect::DuplicateMorphism, EllDefect::UnorderedCompose,
          EllDefect::FakeUnary, EllDefect::NonIdentityLift};
}

std::string to_string(EllDefect d) {
  switch (d) {
    case EllDefect::DropBinaryFamilies: return "drop-binary-families";
    case EllDefect::DuplicateMorphism: return "duplicate-morphism";
    case EllDefect::UnorderedCompose: return "unordered-compose";
    case EllDefect::FakeUnary: return "fake-unary";
    case EllDefect::NonIdentityLift: return "non-identity-lift";
  }
  return "unknown";
}

std::unique_ptr<EllCategory> make_defective(const FiniteOperad& p, EllDefect d) {
  switch (d) {
    case EllDefect::DropBinaryFamilies: return std::make_unique<DropBinaryFamilies>(p);
    case EllDefect::DuplicateMorphism: return std::make_unique<DuplicateMorphism>(p);
    case EllDefect::UnorderedCompose: return std::make_unique<UnorderedCompose>(p);
    case EllDefect::FakeUnary: return std::make_unique<FakeUnary>(p);
    case EllDefect::NonIdentityLift: return std::make_unique<NonIdentityLift>(p);
  }
  throw DomainError("unknown defect");
}

}  // namespace dendrotensor
