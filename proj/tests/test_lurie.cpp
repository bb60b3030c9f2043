#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "dendrotensor/checks/oracles.hpp"
#include "dendrotensor/checks/random.hpp"
#include "dendrotensor/ell.hpp"
#include "dendrotensor/error.hpp"
#include "dendrotensor/fin_pointed.hpp"
#include "dendrotensor/free_algebra.hpp"
#include "dendrotensor/level_forest.hpp"
#include "dendrotensor/operad.hpp"
#include "dendrotensor/segal.hpp"

using namespace dendrotensor;

namespace {

const char* kFigure =
    R"({"levels":[["1","2","3","4"],["1","2","3"],["1"]],)"
    R"("maps":[{"1":"1","2":"1","3":"3","4":"3"},{"1":"1","2":"1","3":"*"}]})";

FinMap fin(std::size_t m, std::size_t n, std::vector<int> v) {
  std::vector<std::optional<std::size_t>> values;
  for (int x : v) values.push_back(x == 0 ? std::nullopt : std::optional<std::size_t>(x - 1));
  return FinMap::make(m, n, values);
}

Color color(const FreeForestOperad& p, const std::string& name) { return *p.forest()->find(name); }

std::vector<Coloring> all_colorings(std::size_t colors, std::size_t n) {
  std::vector<Coloring> out{{}};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Coloring> next;
    for (const auto& c : out)
      for (Color x = 0; x < colors; ++x) {
        auto d = c;
        d.push_back(x);
        next.push_back(std::move(d));
      }
    out = std::move(next);
  }
  return out;
}

// |o(F)(seq; d)| from the definition: distinct inputs forming a cut above d.
std::size_t free_count(const Forest& f, const std::vector<Color>& seq, Color d) {
  std::set<Color> distinct(seq.begin(), seq.end());
  if (distinct.size() != seq.size()) return 0;
  return is_cut(f, d, std::vector<EdgeIndex>(seq.begin(), seq.end())) ? 1 : 0;
}

const char* kCorollaWithUnits = R"({
  "colors": ["x", "y", "z"],
  "operations": [
    {"name": "m", "inputs": ["x", "y"], "output": "z"},
    {"name": "ux", "inputs": [], "output": "x"},
    {"name": "uy", "inputs": [], "output": "y"},
    {"name": "mx", "inputs": ["x"], "output": "z"},
    {"name": "my", "inputs": ["y"], "output": "z"},
    {"name": "mxy", "inputs": [], "output": "z"}
  ],
  "compositions": [
    {"outer": "m", "inner": ["ux", null], "result": "my"},
    {"outer": "m", "inner": [null, "uy"], "result": "mx"},
    {"outer": "m", "inner": ["ux", "uy"], "result": "mxy"},
    {"outer": "mx", "inner": ["ux"], "result": "mxy"},
    {"outer": "my", "inner": ["uy"], "result": "mxy"}
  ]})";

const char* kSquareWithUnit = R"({
  "colors": ["x", "y"],
  "operations": [
    {"name": "c", "inputs": ["x", "x"], "output": "y"},
    {"name": "u", "inputs": [], "output": "x"},
    {"name": "c1", "inputs": ["x"], "output": "y"},
    {"name": "c0", "inputs": [], "output": "y"}
  ],
  "compositions": [
    {"outer": "c", "inner": ["u", null], "result": "c1"},
    {"outer": "c", "inner": [null, "u"], "result": "c1"},
    {"outer": "c", "inner": ["u", "u"], "result": "c0"},
    {"outer": "c1", "inner": ["u"], "result": "c0"}
  ]})";

}  // namespace

TEST_CASE("classify pointed maps") {
  CHECK(classify(FinMap::rho(0, 2)) == FinKind::Inert);
  CHECK(classify(fin(2, 1, {1, 1})) == FinKind::Active);
  for (std::size_t n = 0; n <= 4; ++n) CHECK(classify(FinMap::identity(n)) == FinKind::Both);
  CHECK(classify(fin(3, 1, {1, 0, 1})) == FinKind::Neither);
  CHECK(FinMap::rho(1, 2).values == std::vector<std::optional<std::size_t>>{std::nullopt, 0});
}

TEST_CASE("factorize is unique and recomposes") {
  const auto f = fin(3, 1, {1, 0, 1});
  const auto fa = factorize(f);
  CHECK(fa.inert == fin(3, 2, {1, 0, 2}));
  CHECK(fa.active == fin(2, 1, {1, 1}));

  for (std::size_t m = 0; m <= 5; ++m) {
    for (std::size_t n = 0; n <= 5; ++n) {
      for (const auto& g : all_fin_maps(m, n)) {
        const auto [inert, active] = factorize(g);
        REQUIRE(inert.is_inert());
        REQUIRE(active.is_active());
        REQUIRE(compose(active, inert) == g);
        if (g.is_inert()) REQUIRE(classify(active) == FinKind::Both);
        if (g.is_active()) REQUIRE(inert == FinMap::identity(m));
      }
    }
  }
  // Every factorization through <k> differs from the canonical one by a
  // permutation of <k>: there are exactly k! of them.
  for (std::size_t m = 0; m <= 3; ++m) {
    for (std::size_t n = 0; n <= 3; ++n) {
      for (const auto& g : all_fin_maps(m, n)) {
        const std::size_t k = factorize(g).inert.target;
        std::size_t found = 0;
        for (const auto& i : inert_maps(m, k))
          for (const auto& a : all_fin_maps(k, n))
            if (a.is_active() && compose(a, i) == g) ++found;
        std::size_t factorial = 1;
        for (std::size_t t = 2; t <= k; ++t) factorial *= t;
        REQUIRE(found == factorial);
      }
    }
  }
}

TEST_CASE("smash product") {
  CHECK(smash(1, 1) == 1);
  CHECK(smash(4, 0) == 0);
  CHECK(smash(2, 3) == 6);
  CHECK(smash(FinMap::identity(2), FinMap::identity(3)) == FinMap::identity(6));
  for (std::size_t a = 0; a <= 2; ++a)
    for (std::size_t b = 0; b <= 2; ++b)
      for (std::size_t c = 0; c <= 2; ++c)
        for (const auto& f : all_fin_maps(a, b))
          for (const auto& g : all_fin_maps(b, c))
            for (const auto& f2 : all_fin_maps(2, 1))
              for (const auto& g2 : all_fin_maps(1, 2))
                REQUIRE(smash(compose(g, f), compose(g2, f2)) == compose(smash(g, g2), smash(f, f2)));
}

TEST_CASE("pointed map text") {
  const auto f = parse_fin_map("3:2:1,*,2");
  CHECK(f == fin(3, 2, {1, 0, 2}));
  CHECK(to_string(f) == "3:2:1,*,2");
  CHECK(parse_fin_map("0:2:") == FinMap{0, 2, {}});
  CHECK_THROWS_AS(parse_fin_map("2:1:1,3"), ParseError);
  CHECK_THROWS_AS(parse_fin_map("2:1:1"), ParseError);
  CHECK_THROWS_AS(parse_fin_map("x"), ParseError);
  CHECK(all_fin_maps(2, 2).size() == 9);
  CHECK(inert_maps(3, 2).size() == 6);
}

TEST_CASE("table operads") {
  const auto p = TableOperad::parse(kCorollaWithUnits);
  CHECK(p.color_count() == 3);
  const Color x = 0, y = 1, z = 2;
  CHECK(p.operations({x, y}, z).size() == 1);
  CHECK(p.operations({y, x}, z).size() == 1);
  CHECK(p.operations({x, x}, z).empty());
  const Op m = p.operations({x, y}, z).front();
  const Op ux = p.operations({}, x).front();
  const Op my = p.compose(m, {ux, p.identity(y)});
  CHECK(p.operation_name(my.tag) == "my");
  CHECK(my.inputs == std::vector<Color>{y});
  // Substituting into the swapped operation finds the same slot.
  const Op swapped = p.permute(m, {1, 0});
  CHECK(p.compose(swapped, {p.identity(y), ux}) == my);

  CHECK_NOTHROW(TableOperad::parse(kSquareWithUnit));
  CHECK_THROWS_AS(TableOperad::parse("{"), ParseError);
  CHECK_THROWS_AS(TableOperad::parse(R"({"colors":["x"],"operations":[{"name":"u","inputs":[],"output":"y"}],"compositions":[]})"),
                  ParseError);
  // A missing composite breaks closure.
  CHECK_THROWS_AS(TableOperad::parse(R"({"colors":["x","y"],
      "operations":[{"name":"c","inputs":["x"],"output":"y"},{"name":"u","inputs":[],"output":"x"}],
      "compositions":[]})"),
                  StructureError);
  // Different results for the two equal-colored slots break symmetry.
  CHECK_THROWS_AS(TableOperad::parse(R"({"colors":["x","y"],
      "operations":[{"name":"c","inputs":["x","x"],"output":"y"},{"name":"u","inputs":[],"output":"x"},
                    {"name":"a","inputs":["x"],"output":"y"},{"name":"b","inputs":["x"],"output":"y"},
                    {"name":"c0","inputs":[],"output":"y"}],
      "compositions":[{"outer":"c","inner":["u",null],"result":"a"},{"outer":"c","inner":[null,"u"],"result":"b"},
                      {"outer":"c","inner":["u","u"],"result":"c0"},{"outer":"a","inner":["u"],"result":"c0"},
                      {"outer":"b","inner":["u"],"result":"c0"}]})"),
                  StructureError);
}

TEST_CASE("generic maps_from agrees with hom for free operads") {
  auto rng = checks::Rng::derive(11, "maps-from", 0);
  for (int k = 0; k < 30; ++k) {
    checks::TreeShape shape;
    shape.max_edges = 5;
    const auto target = share(checks::random_forest(rng, shape));
    const auto source = share(checks::random_forest(rng, shape));
    const FreeForestOperad p(target);
    auto generic = p.FiniteOperad::maps_from(source);
    auto via_hom = p.maps_from(source);
    std::sort(generic.begin(), generic.end());
    REQUIRE(generic.size() == hom_count(*source, *target));
    REQUIRE(generic == via_hom);
    for (const auto& m : generic) REQUIRE(validate(m, p).empty());
  }
}

TEST_CASE("Boardman-Vogt tensor operad is closed under composition") {
  const BVTensorOperad p({parse_tree("r[a,b]"), parse_tree("s[c,d]")});
  CHECK(p.color_count() == 9);
  std::size_t composites = 0;
  for (Color out = 0; out < p.color_count(); ++out) {
    for (const auto& f : p.operations_to(out)) {
      std::vector<std::vector<Op>> choices;
      for (auto c : f.inputs) choices.push_back(p.operations_to(c));
      std::vector<Op> gs(f.inputs.size());
      std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == gs.size()) {
          REQUIRE_NOTHROW(p.compose(f, gs));
          ++composites;
          return;
        }
        for (const auto& g : choices[i]) {
          gs[i] = g;
          rec(i + 1);
        }
      };
      rec(0);
    }
  }
  CHECK(composites > 0);
  // The root pair reaches all four leaf pairs in one operation.
  bool found = false;
  for (Color c = 0; c < p.color_count(); ++c)
    for (const auto& op : p.operations_to(c)) found = found || op.inputs.size() == 4;
  CHECK(found);
}

TEST_CASE("ell_hom examples") {
  const FreeForestOperad eta(share(parse_forest("{e}")));
  CHECK(ell_hom(eta, FinMap::rho(0, 2), {0, 0}, {0}).size() == 1);
  CHECK(ell_hom(eta, fin(2, 1, {1, 1}), {0, 0}, {0}).empty());

  const FreeForestOperad c2(share(parse_forest("{r[a,b]}")));
  const Color a = color(c2, "a"), b = color(c2, "b"), r = color(c2, "r");
  const auto active = fin(2, 1, {1, 1});
  const auto ab = ell_hom(c2, active, {a, b}, {r});
  const auto ba = ell_hom(c2, active, {b, a}, {r});
  CHECK(ab.size() == 1);
  CHECK(ba.size() == 1);
  CHECK(ab.size() + ba.size() == 2);
  CHECK(ab.front().components.front().inputs == std::vector<Color>{a, b});
  CHECK(ell_hom(c2, active, {a, a}, {r}).empty());
}

TEST_CASE("ell_hom cardinality is the product over fibers") {
  const auto f = share(parse_forest("{r[a,b[c,d[]]];s[t]}"));
  const FreeForestOperad p(f);
  const EllCategory cat(p);
  for (std::size_t m = 0; m <= 3; ++m) {
    for (std::size_t n = 0; n <= 2; ++n) {
      for (const auto& alpha : all_fin_maps(m, n)) {
        for (const auto& c : all_colorings(p.color_count(), m)) {
          for (const auto& d : all_colorings(p.color_count(), n)) {
            std::size_t expected = 1;
            for (std::size_t j = 0; j < n; ++j) {
              std::vector<Color> seq;
              for (std::size_t i = 0; i < m; ++i)
                if (alpha.values[i] == j) seq.push_back(c[i]);
              expected *= free_count(*f, seq, d[j]);
            }
            REQUIRE(cat.hom(alpha, c, d).size() == expected);
          }
        }
      }
    }
  }
}

TEST_CASE("composition in l(P) is unital and associative") {
  const FreeForestOperad p(share(parse_forest("{r[a,b[c]];s[]}")));
  const EllCategory cat(p);
  std::size_t triples = 0;
  for (std::size_t m = 0; m <= 2; ++m) {
    for (const auto& c : all_colorings(p.color_count(), m)) {
      for (std::size_t n = 0; n <= 2; ++n) {
        for (const auto& alpha : all_fin_maps(m, n)) {
          for (const auto& f : cat.out(alpha, c)) {
            REQUIRE(cat.compose(f, cat.identity(c)) == f);
            REQUIRE(cat.compose(cat.identity(f.target), f) == f);
            for (std::size_t k = 0; k <= 2; ++k) {
              for (const auto& beta : all_fin_maps(n, k)) {
                for (const auto& g : cat.out(beta, f.target)) {
                  const auto gf = cat.compose(g, f);
                  REQUIRE(gf.over == compose(beta, alpha));
                  for (const auto& gamma : all_fin_maps(k, 2)) {
                    for (const auto& h : cat.out(gamma, g.target)) {
                      REQUIRE(cat.compose(h, gf) == cat.compose(cat.compose(h, g), f));
                      ++triples;
                    }
                  }
                }
              }
            }
          }
        }
      }
    }
  }
  CHECK(triples > 1000);

  // inert after inert is the evident restriction.
  const Coloring c{0, 1, 2};
  const auto a1 = cat.inert_lift(fin(3, 2, {2, 0, 1}), c);
  const auto a2 = cat.inert_lift(fin(2, 1, {0, 1}), a1.target);
  const auto both = cat.compose(a2, a1);
  CHECK(both.over == fin(3, 1, {1, 0, 0}));
  CHECK(both.target == Coloring{0});
  CHECK(both.components == std::vector<Op>{p.identity(0)});
}

TEST_CASE("nerve over small simplices") {
  const FreeForestOperad p(share(parse_forest("{r[a,b]}")));
  const FinSimplex point({{"1", "2"}}, {});
  CHECK(nerve_over(p, point).size() == 9);

  const FreeForestOperad eta(share(parse_forest("{e}")));
  CHECK(nerve_over(eta, parse_fin_simplex(kFigure)).empty());
  const FinSimplex unary({{"1", "2"}, {"1", "2"}, {"1"}}, {{1, 0}, {std::nullopt, 0}});
  CHECK(nerve_over(eta, unary).size() == 1);
}

TEST_CASE("the canonical section corresponds to the identity map") {
  const auto a = parse_fin_simplex(kFigure);
  const auto omega_a = share(omega(a));
  const FreeForestOperad p(omega_a);
  const auto b = chain_bijection(p, a);
  REQUIRE(b.is_bijection());
  const auto id = to_map_to_operad(identity_map(omega_a));
  Chain canonical;
  for (std::size_t i = 0; i <= a.length(); ++i) {
    Coloring c;
    for (const auto& x : a.level(i)) c.push_back(*omega_a->find(level_edge_name(i, x)));
    canonical.objects.push_back(std::move(c));
  }
  const EllCategory cat(p);
  for (std::size_t i = 1; i <= a.length(); ++i) {
    const auto arrows = cat.hom(level_map(a, i), canonical.objects[i - 1], canonical.objects[i]);
    REQUIRE(arrows.size() == 1);
    canonical.arrows.push_back(arrows.front());
  }
  const auto at = std::find(b.chains.begin(), b.chains.end(), canonical);
  REQUIRE(at != b.chains.end());
  const auto k = *b.forward[static_cast<std::size_t>(at - b.chains.begin())];
  CHECK(b.maps[k] == id);
  CHECK(map_to_chain(id, a) == canonical);
}

TEST_CASE("chain bijection and naturality on random instances") {
  for (std::uint64_t k = 0; k < 20; ++k) {
    auto rng = checks::Rng::derive(5, "nerve-test", k);
    checks::TreeShape shape;
    shape.max_edges = 5;
    const FreeForestOperad p(share(checks::random_forest(rng, shape)));
    const auto a = checks::random_simplex(rng, 3, 3);
    const auto r = check_chain_bijection(p, a, std::to_string(k));
    REQUIRE_MESSAGE(r.passed(), r.to_json().dump());
    for (std::size_t j = 0; j < 3; ++j) {
      const auto phi = checks::random_operator(rng, a.length(), 3);
      const auto n = check_naturality(p, a, phi, std::to_string(k));
      REQUIRE_MESSAGE(n.passed(), n.to_json().dump());
    }
  }
  const auto a = parse_fin_simplex(kFigure);
  const FreeForestOperad p(share(parse_forest("{r[a,b[]];s[t]}")));
  CHECK(check_chain_bijection(p, a, "figure").passed());
  for (std::size_t i = 0; i <= 2; ++i) CHECK(check_naturality(p, a, SimplicialOperator::face(i, 2), "d").passed());
  for (std::size_t i = 0; i <= 2; ++i)
    CHECK(check_naturality(p, a, SimplicialOperator::degeneracy(i, 2), "s").passed());
}

TEST_CASE("fibrous axioms and defect fixtures") {
  const FreeForestOperad eta(share(parse_forest("{e}")));
  CHECK(check_fibrous(EllCategory(eta), 3, "eta").passed());
  const FreeForestOperad p(share(parse_forest("{r[a[x,y],b[]];s[t]}")));
  const auto good = check_fibrous(EllCategory(p), 2, "fixture");
  CHECK_MESSAGE(good.passed(), good.to_json().dump());
  for (auto d : all_defects()) {
    const auto bad = make_defective(p, d);
    const auto r = check_fibrous(*bad, 2, to_string(d));
    CHECK_MESSAGE(!r.passed(), to_string(d));
    CHECK(!r.witnesses().empty());
  }
  const auto drop = check_fibrous(*make_defective(p, EllDefect::DropBinaryFamilies), 2, "drop");
  bool fib3 = false;
  for (const auto& w : drop.witnesses()) fib3 = fib3 || w["axiom"] == "Fib3";
  CHECK(fib3);
}

TEST_CASE("Segal decomposition at an inner edge") {
  const FreeForestOperad c2(share(parse_forest("{r[a,b]}")));
  const Tree chain = parse_tree("e0[e1[e2[e3]]]");
  for (const char* b : {"e1", "e2"}) {
    const auto r = segal_d1_check(c2, chain, b, b);
    CHECK(r.passed());
    CHECK(r.stats()["maps"] == 3);
    CHECK(r.stats()["fiber_product"] == 3);
  }
  const Tree stumped = parse_tree("r[b[c[]],d]");
  CHECK(segal_d1_check(c2, stumped, "b", "b").passed());
  const auto split = segal_d1_check(FreeForestOperad(share(parse_forest("{r[a,s[]]}"))), stumped, "c", "c");
  CHECK(split.passed());
  CHECK(split.stats()["maps"] == hom_count(Forest(stumped), parse_forest("{r[a,s[]]}")));
  const FreeForestOperad eta(share(parse_forest("{e}")));
  const auto r = segal_d1_check(eta, chain, "e1", "eta");
  CHECK(r.passed());
  CHECK(r.stats()["maps"] == 1);
  CHECK_THROWS_AS(segal_d1_check(c2, chain, "e0", "root"), DomainError);
  CHECK_THROWS_AS(segal_d1_check(c2, chain, "e3", "leaf"), DomainError);
}

TEST_CASE("d3 decomposition over components") {
  const FreeForestOperad c2(share(parse_forest("{r[a,b]}")));
  const auto two = d3_check(c2, parse_forest("{x[y,z];u[v,w]}"), "two");
  CHECK(two.passed());
  CHECK(two.stats()["maps"] == 4);
  const auto empty = d3_check(c2, Forest(), "empty");
  CHECK(empty.passed());
  CHECK(empty.stats()["maps"] == 1);
  CHECK(d3_check(c2, parse_forest("{x[y]}"), "single").passed());
}

TEST_CASE("free algebra examples") {
  const FreeForestOperad eta(share(parse_forest("{e}")));
  CHECK(free_algebra(eta, {0}, {4}, 0).size() == 4);

  const FreeForestOperad stump(share(parse_forest("{r[s[]]}")));
  const Color r = color(stump, "r"), s = color(stump, "s");
  const auto nullary = free_algebra(stump, {r, s}, {0, 0}, r);
  REQUIRE(nullary.size() == 1);
  CHECK(nullary.front().gamma.empty());

  const FreeForestOperad c2(share(parse_forest("{r[a,b]}")));
  const Color a = color(c2, "a"), b = color(c2, "b"), root = color(c2, "r");
  std::vector<Color> recolor(3);
  recolor[0] = root;
  recolor[1] = a;
  recolor[2] = b;
  CHECK(free_algebra(c2, recolor, {0, 2, 3}, root).size() == 6);
  CHECK_THROWS_AS(free_algebra(c2, {a, b}, {1, 1}, root), DomainError);

  const auto sq = TableOperad::parse(kSquareWithUnit);
  const auto elems = free_algebra(sq, {0, 1}, {2, 0}, 1);
  CHECK(elems.size() == 6);
  CHECK(elems == checks::free_algebra_by_orbits(sq, {0, 1}, {2, 0}, 1));
}

TEST_CASE("free algebra agrees with the orbit oracle") {
  for (std::uint64_t k = 0; k < 25; ++k) {
    auto rng = checks::Rng::derive(3, "freealg-test", k);
    checks::TreeShape shape;
    shape.max_edges = 5;
    const FreeForestOperad p(share(checks::random_forest(rng, shape, false)));
    std::vector<Color> r;
    for (Color c = 0; c < p.color_count(); ++c) r.push_back(c);
    for (std::size_t extra = rng.below(3); extra > 0; --extra) r.push_back(rng.below(p.color_count()));
    std::vector<std::size_t> sizes;
    for (std::size_t i = 0; i < r.size(); ++i) sizes.push_back(rng.below(4));
    for (Color d = 0; d < p.color_count(); ++d)
      REQUIRE(free_algebra(p, r, sizes, d) == checks::free_algebra_by_orbits(p, r, sizes, d));
  }
  const auto units = TableOperad::parse(kCorollaWithUnits);
  for (Color d = 0; d < 3; ++d)
    CHECK(free_algebra(units, {0, 1, 2}, {2, 3, 1}, d) ==
          checks::free_algebra_by_orbits(units, {0, 1, 2}, {2, 3, 1}, d));
}

TEST_CASE("lattice path oracle") {
  CHECK(checks::lattice_paths({2, 1}) == 3);
  CHECK(checks::lattice_paths({2, 2}) == 6);
  CHECK(checks::lattice_paths({1, 1, 1}) == 6);
  CHECK(checks::lattice_paths({}) == 1);
}
