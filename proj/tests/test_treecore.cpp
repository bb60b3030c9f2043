#include <set>
#include <string>

#include "doctest.h"
#include "dendrotensor/tree.hpp"

using namespace dendrotensor;

namespace {

std::set<std::string> names_of(const Tree& t, const std::vector<EdgeIndex>& es) {
  std::set<std::string> out;
  for (auto e : es) out.insert(t.name(e));
  return out;
}

}  // namespace

TEST_CASE("parse_tree builds the grammar's shapes") {
  auto eta = parse_tree("e");
  CHECK(eta.edge_count() == 1);
  CHECK(eta.vertex_count() == 0);

  auto c2 = parse_tree("r[a,b]");
  CHECK(c2.vertex_count() == 1);
  CHECK(names_of(c2, c2.leaves()) == std::set<std::string>{"a", "b"});

  auto t = parse_tree("r[a[x,y],b[]]");
  CHECK(t.edge_count() == 5);
  CHECK(t.vertex_count() == 3);
  CHECK(names_of(t, t.leaves()) == std::set<std::string>{"x", "y"});
  CHECK(names_of(t, t.stumps()) == std::set<std::string>{"b"});
  CHECK(max_edge_names(t) == std::set<std::string>{"x", "y", "b"});
}

TEST_CASE("parse errors carry positions and duplicates are rejected") {
  CHECK_THROWS_AS(parse_tree("r[a,"), ParseError);
  CHECK_THROWS_AS(parse_tree("r[a,a]"), ParseError);
  CHECK_THROWS_AS(parse_tree("r[a]]"), ParseError);
  try {
    parse_tree("r[a,]");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("at position") != std::string::npos);
  }
}

TEST_CASE("serialization round-trips canonical forms") {
  for (const char* s : {"e", "r[]", "r[a,b]", "r[a[x,y],b[]]", "r[b,a[y,x]]"}) {
    auto t = parse_tree(s);
    CHECK(parse_tree(to_string(t)) == t);
  }
  CHECK(to_string(parse_tree("r[b,a[y,x]]")) == "r[a[x,y],b]");
  auto f = parse_forest("{r[a,b];s[]}");
  CHECK(f.component_count() == 2);
  CHECK(parse_forest(to_string(f)) == f);
  CHECK(parse_forest("{}").empty());
  CHECK(to_string(Forest{}) == "{}");
  CHECK_THROWS_AS(parse_forest("{r[a];a}"), ParseError);
}

TEST_CASE("interior removes stumps and keeps edges") {
  CHECK(to_string(interior(parse_tree("r[a[x,y],b[]]")).first) == "r[a[x,y],b]");
  auto open = parse_tree("r[a[x,y],b]");
  CHECK(interior(open).first == open);
  CHECK(to_string(interior(parse_tree("r[]")).first) == "r");
  auto [i, corr] = interior(parse_tree("r[a[x,y],b[]]"));
  CHECK(corr.size() == 5);
  CHECK(interior(i).first == i);
}

TEST_CASE("add_stumps") {
  CHECK(to_string(add_stumps(parse_tree("e"), {"e"})) == "e[]");
  CHECK(to_string(add_stumps(parse_tree("r[a,b]"), {"a"})) == "r[a[],b]");
  auto t = parse_tree("r[a[x,y],b]");
  auto s = add_stumps(t, {"x", "b"});
  CHECK(interior(s).first == t);
  CHECK(max_edge_names(s) == max_edge_names(t));
  CHECK_THROWS_AS(add_stumps(t, {"a"}), DomainError);
}

TEST_CASE("cut_at and graft") {
  auto t = parse_tree("r[a[x,y],b[]]");
  auto cut = cut_at(t, "a");
  CHECK(to_string(cut.lower) == "r[a,b[]]");
  CHECK(to_string(cut.upper) == "a[x,y]");
  CHECK(graft(cut.lower, "a", cut.upper) == t);
  for (auto d : t.inner_edges()) {
    auto c = cut_at(t, t.name(d));
    CHECK(graft(c.lower, t.name(d), c.upper) == t);
  }
  auto stump_cut = cut_at(t, "b");
  CHECK(to_string(stump_cut.upper) == "b[]");
  CHECK_THROWS_AS(cut_at(t, "r"), DomainError);
  CHECK_THROWS_AS(cut_at(t, "x"), DomainError);

  auto u = parse_tree("a[x,y]");
  CHECK(graft(parse_tree("a"), "a", u) == u);
  CHECK(to_string(graft(parse_tree("r[a,b]"), "a", u)) == "r[a[x,y],b]");
  auto base = parse_tree("r[a,b]");
  CHECK(graft(base, "a", parse_tree("a[]")) == add_stumps(base, {"a"}));
  CHECK_THROWS_AS(graft(base, "a", parse_tree("a[b]")), StructureError);
}

TEST_CASE("contract_inner") {
  auto t = parse_tree("r[a[x,y],b]");
  CHECK(to_string(contract_inner(t, {"a"}).first) == "r[b,x,y]");
  CHECK(contract_inner(t, {}).first == t);
  CHECK_THROWS_AS(contract_inner(t, {"x"}), DomainError);
  for (int n = 1; n <= 5; ++n) {
    std::string text = "e0";
    std::string close;
    std::set<std::string> inner;
    for (int k = 1; k <= n; ++k) {
      text += "[e" + std::to_string(k);
      close += "]";
      if (k < n) inner.insert("e" + std::to_string(k));
    }
    auto chain = parse_tree(text + close);
    CHECK(chain.is_linear());
    auto c = contract_inner(chain, inner).first;
    CHECK(to_string(c) == "e0[e" + std::to_string(n) + "]");
  }
}

TEST_CASE("max_edges") {
  CHECK(max_edge_names(parse_tree("e")) == std::set<std::string>{"e"});
  CHECK(max_edge_names(parse_tree("r[]")) == std::set<std::string>{"r"});
}
