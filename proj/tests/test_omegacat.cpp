#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "dendrotensor/operad_map.hpp"

using namespace dendrotensor;

namespace {

using NameSet = std::set<std::string>;

// Closure oracle: start from {e} and repeatedly expand one member through
// the vertex above it (a stump expands to nothing).
std::set<NameSet> cut_closure(const Tree& t, const std::string& e) {
  std::set<NameSet> seen{{e}};
  std::vector<NameSet> queue{{e}};
  while (!queue.empty()) {
    auto cut = queue.back();
    queue.pop_back();
    for (const auto& x : cut) {
      auto idx = t.at(x);
      if (!t.has_vertex(idx)) continue;
      auto next = cut;
      next.erase(x);
      for (auto c : t.inputs(idx)) next.insert(t.name(c));
      if (seen.insert(next).second) queue.push_back(next);
    }
  }
  return seen;
}

std::set<NameSet> cut_names(const Tree& t, const std::string& e) {
  std::set<NameSet> out;
  for (const auto& op : operations(t, e)) {
    NameSet s;
    for (auto i : op.inputs) s.insert(t.name(i));
    out.insert(s);
  }
  return out;
}

const std::vector<std::string> kSmallTrees = {
    "e", "r[]", "r[a]", "r[a,b]", "r[a[b]]", "r[a[],b]", "r[a[x,y],b[]]", "r[a[b[c]]]",
    "r[a,b,c]", "r[a[x],b[]]",
};

}  // namespace

TEST_CASE("operations match the closure oracle") {
  CHECK(cut_names(parse_tree("e"), "e") == std::set<NameSet>{{"e"}});
  CHECK(cut_names(parse_tree("r[a,b]"), "r") == std::set<NameSet>{{"r"}, {"a", "b"}});
  CHECK(cut_names(parse_tree("r[a[x,y],b[]]"), "r") ==
        std::set<NameSet>{{"r"}, {"a", "b"}, {"a"}, {"x", "y", "b"}, {"x", "y"}});
  for (const auto& s : kSmallTrees) {
    auto t = parse_tree(s);
    for (const auto& n : t.names()) {
      CHECK(cut_names(t, n) == cut_closure(t, n));
      CHECK(operations(t, n).size() == cut_closure(t, n).size());
    }
  }
}

TEST_CASE("hom counts") {
  for (const auto& s : kSmallTrees) {
    auto t = share(parse_tree(s));
    CHECK(hom(share(parse_tree("e")), t).size() == t->edge_count());
  }
  auto c2 = share(parse_tree("r[a,b]"));
  CHECK(hom(c2, c2).size() == 2);
  CHECK(hom(share(parse_tree("r[a]")), share(parse_tree("r[x,y]"))).size() == 3);
  CHECK(hom_count(Forest{}, Forest{}) == 1);
  CHECK(hom_count(parse_forest("{e}"), Forest{}) == 0);
}

TEST_CASE("hom of forests is the product of coproducts over components") {
  const std::vector<std::string> forests = {"{}", "{e}", "{r[a,b];s}", "{r[a];s[]}",
                                            "{r[a[x,y],b[]]}", "{p[q];r[a,b]}"};
  for (const auto& fs : forests) {
    for (const auto& gs : forests) {
      auto f = parse_forest(fs);
      auto g = parse_forest(gs);
      std::size_t expected = 1;
      for (const auto& s : f.components()) {
        std::size_t sum = 0;
        for (const auto& t : g.components()) sum += hom_count(Forest(s), Forest(t));
        expected *= sum;
      }
      CHECK(hom_count(f, g) == expected);
      for (const auto& m : hom(share(f), share(g))) {
        CHECK(validate(m).empty());
        for (std::size_t c = 0; c < f.component_count(); ++c) {
          std::set<std::size_t> hit;
          for (EdgeIndex e = 0; e < f.component(c).edge_count(); ++e)
            hit.insert(g.component_of(m.edge_map[f.global(c, e)]));
          CHECK(hit.size() == 1);
        }
      }
    }
  }
}

TEST_CASE("vertex images are operations of the target") {
  for (const auto& ss : kSmallTrees) {
    for (const auto& ts : kSmallTrees) {
      auto s = share(parse_tree(ss));
      auto t = share(parse_tree(ts));
      for (const auto& m : hom(s, t)) {
        for (const auto& [v, op] : m.vertex_map) {
          auto ops = operations(*t, op.output);
          CHECK(std::find(ops.begin(), ops.end(), op) != ops.end());
        }
      }
    }
  }
}

TEST_CASE("composition is unital, associative and closed") {
  std::vector<ForestPtr> trees;
  for (const auto& s : {"e", "r[]", "r[a]", "r[a,b]", "r[a[b]]", "r[a[],b]", "r[a[x,y],b[]]"})
    trees.push_back(share(parse_tree(s)));
  for (const auto& a : trees) {
    for (const auto& b : trees) {
      auto ab = hom(a, b);
      for (const auto& f : ab) {
        CHECK(compose(identity_map(a), f) == f);
        CHECK(compose(f, identity_map(b)) == f);
      }
      for (const auto& c : trees) {
        auto bc = hom(b, c);
        auto ac = hom(a, c);
        for (const auto& f : ab) {
          for (const auto& g : bc) {
            auto gf = compose(f, g);
            CHECK(validate(gf).empty());
            CHECK(std::find(ac.begin(), ac.end(), gf) != ac.end());
          }
        }
      }
    }
  }
  // Associativity on a smaller range, every triple.
  std::vector<ForestPtr> small(trees.begin(), trees.begin() + 5);
  for (const auto& a : small)
    for (const auto& b : small)
      for (const auto& c : small)
        for (const auto& d : small)
          for (const auto& f : hom(a, b))
            for (const auto& g : hom(b, c))
              for (const auto& h : hom(c, d))
                CHECK(compose(compose(f, g), h) == compose(f, compose(g, h)));
}

TEST_CASE("composing a degeneracy with an edge inclusion") {
  auto lin = share(parse_tree("r[a]"));
  auto eta = share(parse_tree("e"));
  auto c2 = share(parse_tree("r[x,y]"));
  auto targets = hom(lin, c2);
  REQUIRE(hom(lin, eta).size() == 1);
  auto degeneracy = hom(lin, eta).front();
  for (const auto& edge : hom(eta, c2)) {
    auto composite = compose(degeneracy, edge);
    CHECK(std::find(targets.begin(), targets.end(), composite) != targets.end());
  }
}

TEST_CASE("validate reports the offending vertex") {
  auto t = share(parse_tree("r[a[x,y],b[]]"));
  auto id = identity_map(t);
  CHECK(validate(id).empty());
  auto broken = id;
  broken.edge_map[t->at("x")] = t->at("b");
  auto v = validate(broken);
  REQUIRE(!v.empty());
  CHECK(v.front().vertex == "a");
}

TEST_CASE("classify_elementary") {
  auto t = share(parse_tree("r[a[x,y],b]"));
  CHECK(classify_elementary(identity_map(t)) == Elementary::Iso);
  auto face_src = share(parse_tree("r[x,y,b]"));
  auto face = from_edge_map(face_src, t,
                            {t->at("b"), t->at("r"), t->at("x"), t->at("y")});
  CHECK(validate(face).empty());
  CHECK(classify_elementary(face) == Elementary::InnerFace);
  auto lin = share(parse_tree("r[a]"));
  auto eta = share(parse_tree("e"));
  CHECK(classify_elementary(hom(lin, eta).front()) == Elementary::Degeneracy);
  auto outer = from_edge_map(share(parse_tree("r[a,b]")), t, {t->at("a"), t->at("b"), t->at("r")});
  CHECK(classify_elementary(outer) == Elementary::OuterFace);
  CHECK(classify_elementary(hom(eta, share(parse_tree("r[a,b]"))).front()) ==
        Elementary::EdgeOfCorolla);
}
