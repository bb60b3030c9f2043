#include "dendrotensor/shuffle.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <set>

namespace dendrotensor {

namespace {

using NameFn = std::function<std::string(const std::vector<std::string>&)>;

std::string join_coords(const std::vector<std::string>& coords) {
  std::string out = "(";
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (i) out += '|';
    out += coords[i];
  }
  return out + ")";
}

std::string strip_parens(const std::string& s) {
  if (s.size() >= 2 && s.front() == '(' && s.back() == ')') return s.substr(1, s.size() - 2);
  return s;
}

std::string join_flattened(const std::vector<std::string>& coords) {
  std::vector<std::string> inner;
  for (const auto& c : coords) inner.push_back(strip_parens(c));
  return join_coords(inner);
}

// A partial shuffle above some tuple: its vertices as (output, inputs).
using VertexList = std::vector<std::pair<TupleEdge, std::vector<TupleEdge>>>;

class Generator {
 public:
  explicit Generator(const std::vector<Tree>& factors) : factors_(factors) {}

  const std::vector<VertexList>& above(const TupleEdge& t) {
    if (auto it = memo_.find(t); it != memo_.end()) return it->second;
    std::vector<VertexList> out;
    bool all_max = true, some_stump = false;
    for (std::size_t i = 0; i < t.size(); ++i) {
      all_max = all_max && factors_[i].is_maximal(t[i]);
      some_stump = some_stump || factors_[i].is_stump(t[i]);
    }
    if (all_max) {
      if (some_stump)
        out.push_back(VertexList{{t, {}}});
      else
        out.push_back(VertexList{});
    } else {
      for (std::size_t i = 0; i < t.size(); ++i) {
        const Tree& s = factors_[i];
        if (!s.has_vertex(t[i]) || s.is_stump(t[i])) continue;
        std::vector<TupleEdge> children;
        for (auto c : s.inputs(t[i])) {
          TupleEdge child = t;
          child[i] = c;
          children.push_back(std::move(child));
        }
        std::vector<const std::vector<VertexList>*> options;
        for (const auto& c : children) options.push_back(&above(c));
        // Cartesian product of one partial shuffle per child.
        std::vector<std::size_t> pick(children.size(), 0);
        bool empty = std::any_of(options.begin(), options.end(),
                                 [](const auto* o) { return o->empty(); });
        while (!empty) {
          VertexList v{{t, children}};
          for (std::size_t k = 0; k < children.size(); ++k) {
            const auto& part = (*options[k])[pick[k]];
            v.insert(v.end(), part.begin(), part.end());
          }
          out.push_back(std::move(v));
          std::size_t k = 0;
          for (; k < pick.size(); ++k) {
            if (++pick[k] < options[k]->size()) break;
            pick[k] = 0;
          }
          if (k == pick.size()) break;
        }
      }
    }
    return memo_.emplace(t, std::move(out)).first->second;
  }

 private:
  const std::vector<Tree>& factors_;
  std::map<TupleEdge, std::vector<VertexList>> memo_;
};

std::vector<Shuffle> generate(const std::vector<Tree>& factors, const NameFn& name_fn) {
  if (factors.empty()) throw DomainError("shuffles need at least one factor");
  Generator gen(factors);
  TupleEdge root;
  for (const auto& s : factors) root.push_back(s.root());

  std::map<TupleEdge, std::string> names;
  auto name_of = [&](const TupleEdge& t) -> const std::string& {
    auto it = names.find(t);
    if (it != names.end()) return it->second;
    std::vector<std::string> coords;
    for (std::size_t i = 0; i < t.size(); ++i) coords.push_back(factors[i].name(t[i]));
    return names.emplace(t, name_fn(coords)).first->second;
  };

  std::vector<std::pair<std::string, Shuffle>> keyed;
  for (const auto& vertices : gen.above(root)) {
    std::vector<VertexSpec> specs;
    std::map<std::string, TupleEdge> by_name{{name_of(root), root}};
    for (const auto& [out, in] : vertices) {
      VertexSpec v{name_of(out), {}};
      for (const auto& c : in) {
        v.in.push_back(name_of(c));
        by_name.emplace(v.in.back(), c);
      }
      specs.push_back(std::move(v));
    }
    Shuffle a{Tree::make(name_of(root), std::move(specs)), {}};
    for (const auto& n : a.tree.names()) a.coords.push_back(by_name.at(n));
    keyed.emplace_back(to_string(a.tree), std::move(a));
  }
  std::sort(keyed.begin(), keyed.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  keyed.erase(std::unique(keyed.begin(), keyed.end(),
                          [](const auto& x, const auto& y) { return x.first == y.first; }),
              keyed.end());
  std::vector<Shuffle> out;
  for (auto& [k, a] : keyed) out.push_back(std::move(a));
  return out;
}

Tree rename(const Tree& t, const std::function<std::string(const std::string&)>& f) {
  auto specs = t.vertex_specs();
  for (auto& v : specs) {
    v.out = f(v.out);
    for (auto& x : v.in) x = f(x);
  }
  return Tree::make(f(t.name(t.root())), std::move(specs));
}

std::map<std::string, std::size_t> index_by_string(const std::vector<Shuffle>& family) {
  std::map<std::string, std::size_t> out;
  for (std::size_t i = 0; i < family.size(); ++i) out.emplace(to_string(family[i].tree), i);
  return out;
}

}  // namespace

std::string tuple_name(const std::vector<std::string>& coords) { return join_coords(coords); }

std::string tuple_name(const std::vector<Tree>& factors, const TupleEdge& t) {
  std::vector<std::string> coords;
  for (std::size_t i = 0; i < t.size(); ++i) coords.push_back(factors[i].name(t[i]));
  return join_coords(coords);
}

std::vector<Shuffle> shuffles(const std::vector<Tree>& factors) {
  return generate(factors, join_coords);
}

std::set<std::string> expected_max_edges(const std::vector<Tree>& factors) {
  std::set<std::string> out;
  std::vector<std::vector<EdgeIndex>> maxes;
  for (const auto& s : factors) maxes.push_back(s.max_edges());
  TupleEdge t(factors.size());
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == factors.size()) {
      out.insert(tuple_name(factors, t));
      return;
    }
    for (auto e : maxes[i]) {
      t[i] = e;
      rec(i + 1);
    }
  };
  rec(0);
  return out;
}

std::vector<std::string> check_shuffle(const std::vector<Tree>& factors, const Shuffle& a) {
  std::vector<std::string> problems;
  const Tree& t = a.tree;
  TupleEdge root;
  for (const auto& s : factors) root.push_back(s.root());
  if (a.coords.size() != t.edge_count()) return {"coordinate table has the wrong size"};
  if (a.coords[t.root()] != root) problems.push_back("root is not the tuple of roots");
  for (EdgeIndex e = 0; e < t.edge_count(); ++e) {
    if (t.name(e) != tuple_name(factors, a.coords[e])) {
      problems.push_back("edge " + t.name(e) + " is misnamed");
    }
    if (!t.has_vertex(e)) continue;
    const auto& out = a.coords[e];
    if (t.is_stump(e)) {
      bool all_max = true, some_stump = false;
      for (std::size_t i = 0; i < out.size(); ++i) {
        all_max = all_max && factors[i].is_maximal(out[i]);
        some_stump = some_stump || factors[i].is_stump(out[i]);
      }
      if (!all_max || !some_stump) problems.push_back("stump on " + t.name(e) + " fires nothing");
      continue;
    }
    std::set<std::size_t> moved;
    std::set<EdgeIndex> values;
    for (auto c : t.inputs(e)) {
      for (std::size_t i = 0; i < out.size(); ++i) {
        if (a.coords[c][i] != out[i]) {
          moved.insert(i);
          values.insert(a.coords[c][i]);
        }
      }
    }
    if (moved.size() != 1) {
      problems.push_back("vertex " + t.name(e) + " does not advance exactly one coordinate");
      continue;
    }
    const std::size_t i = *moved.begin();
    auto in = factors[i].inputs(out[i]);
    if (!factors[i].has_vertex(out[i]) ||
        std::set<EdgeIndex>(in.begin(), in.end()) != values ||
        in.size() != t.inputs(e).size()) {
      problems.push_back("vertex " + t.name(e) + " is not a factor vertex");
    }
  }
  if (max_edge_names(t) != expected_max_edges(factors)) {
    problems.push_back("maximal edges differ from the product of maximal edges");
  }
  return problems;
}

Shuffle intersect(const std::vector<const Shuffle*>& family) {
  if (family.empty()) throw DomainError("cannot intersect an empty family of shuffles");
  std::set<std::string> common(family[0]->tree.names().begin(), family[0]->tree.names().end());
  for (const auto* a : family) {
    std::set<std::string> mine(a->tree.names().begin(), a->tree.names().end());
    std::set<std::string> keep;
    std::set_intersection(common.begin(), common.end(), mine.begin(), mine.end(),
                          std::inserter(keep, keep.end()));
    common = std::move(keep);
  }
  // Nearest common ancestor below each common edge, and whether a vertex
  // sits above it; both must agree across the family.
  std::map<std::string, std::optional<std::string>> parent;
  std::map<std::string, bool> has_vertex;
  for (const auto* a : family) {
    const Tree& t = a->tree;
    for (const auto& n : common) {
      std::optional<std::string> p;
      auto cur = t.parent(t.at(n));
      while (cur && !common.count(t.name(*cur))) cur = t.parent(*cur);
      if (cur) p = t.name(*cur);
      const bool hv = t.has_vertex(t.at(n));
      auto [it, fresh] = parent.emplace(n, p);
      if (!fresh && it->second != p) {
        throw StructureError("shuffles disagree on the edge below " + n);
      }
      auto [jt, fresh2] = has_vertex.emplace(n, hv);
      if (!fresh2 && jt->second != hv) {
        throw StructureError("shuffles disagree on whether " + n + " is maximal");
      }
    }
  }
  std::optional<std::string> root;
  std::map<std::string, std::vector<std::string>> inputs;
  for (const auto& [n, p] : parent) {
    if (p)
      inputs[*p].push_back(n);
    else if (root)
      throw StructureError("common edges have two roots");
    else
      root = n;
  }
  if (!root) throw StructureError("common edges have no root");
  std::vector<VertexSpec> specs;
  for (const auto& [n, hv] : has_vertex) {
    if (hv) specs.push_back(VertexSpec{n, inputs[n]});
    else if (inputs.count(n)) throw StructureError("leaf " + n + " has edges above it");
  }
  Shuffle out{Tree::make(*root, std::move(specs)), {}};
  const auto& first = *family[0];
  for (const auto& n : out.tree.names()) out.coords.push_back(first.coords[first.tree.at(n)]);
  return out;
}

OperadMap name_inclusion(const Tree& sub, const Tree& super) {
  auto s = share(sub);
  auto t = share(super);
  std::vector<EdgeIndex> m;
  for (const auto& n : sub.names()) m.push_back(t->at(n));
  return from_edge_map(s, t, std::move(m));
}

std::vector<std::string> check_inner_face_inclusion(const OperadMap& f) {
  std::vector<std::string> problems;
  for (const auto& v : validate(f)) problems.push_back(v.vertex + ": " + v.message);
  const Forest& s = *f.source;
  const Forest& t = *f.target;
  std::set<EdgeIndex> image(f.edge_map.begin(), f.edge_map.end());
  if (image.size() != f.edge_map.size()) problems.push_back("not injective on edges");
  for (std::size_t c = 0; c < s.component_count(); ++c) {
    const EdgeIndex r = f.edge_map[s.global(c, s.component(c).root())];
    if (t.root_of(r) != r) problems.push_back("root of component " + std::to_string(c) + " is not sent to a root");
    for (auto e : s.component(c).max_edges()) {
      const EdgeIndex g = f.edge_map[s.global(c, e)];
      if (!t.tree_of(g).is_maximal(t.local(g))) {
        problems.push_back("maximal edge " + s.name(s.global(c, e)) + " is not sent to a maximal edge");
      }
    }
  }
  for (EdgeIndex g = 0; g < t.edge_count(); ++g) {
    if (image.count(g)) continue;
    if (!t.tree_of(g).is_inner(t.local(g)) || t.tree_of(g).is_maximal(t.local(g))) {
      problems.push_back("missed edge " + t.name(g) + " is not inner");
    }
  }
  return problems;
}

bool Pairing::is_bijection() const {
  if (source.size() != target.size() || forward.size() != source.size()) return false;
  std::set<std::size_t> hit;
  for (const auto& x : forward) {
    if (!x || !hit.insert(*x).second) return false;
  }
  return true;
}

Pairing stump_transport(const std::vector<Tree>& factors, std::size_t i, const std::string& leaf) {
  if (i >= factors.size()) throw DomainError("factor index out of range");
  const auto e = factors[i].find(leaf);
  if (!e || !factors[i].is_leaf(*e)) {
    throw DomainError("'" + leaf + "' is not a leaf of factor " + std::to_string(i));
  }
  auto stumped = factors;
  stumped[i] = add_stumps(factors[i], {leaf});
  Pairing p{shuffles(factors), shuffles(stumped), {}};
  const auto index = index_by_string(p.target);
  for (const auto& a : p.source) {
    std::set<std::string> over;
    for (auto x : a.tree.leaves())
      if (a.coords[x][i] == *e) over.insert(a.tree.name(x));
    auto it = index.find(to_string(add_stumps(a.tree, over)));
    p.forward.push_back(it == index.end() ? std::nullopt : std::optional<std::size_t>(it->second));
  }
  return p;
}

InteriorDecomposition interior_decomposition(const std::vector<Tree>& factors) {
  std::vector<Tree> interiors;
  for (const auto& s : factors) interiors.push_back(interior(s).first);

  InteriorDecomposition out;
  std::vector<std::vector<EdgeIndex>> leaves;
  for (const auto& s : interiors) leaves.push_back(s.leaves());
  TupleEdge t(factors.size());
  std::set<std::string> stumped;
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == factors.size()) {
      bool any = false;
      for (std::size_t i = 0; i < t.size(); ++i)
        any = any || factors[i].is_stump(factors[i].at(interiors[i].name(t[i])));
      if (any) stumped.insert(tuple_name(interiors, t));
      return;
    }
    for (auto e : leaves[k]) {
      t[k] = e;
      rec(k + 1);
    }
  };
  rec(0);
  out.stumped.assign(stumped.begin(), stumped.end());

  out.pairing.source = shuffles(interiors);
  out.pairing.target = shuffles(factors);
  const auto index = index_by_string(out.pairing.target);
  for (const auto& a : out.pairing.source) {
    std::set<std::string> over;
    for (auto x : a.tree.leaves())
      if (stumped.count(a.tree.name(x))) over.insert(a.tree.name(x));
    auto it = index.find(to_string(add_stumps(a.tree, over)));
    out.pairing.forward.push_back(it == index.end() ? std::nullopt
                                                    : std::optional<std::size_t>(it->second));
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

class BracketParser {
 public:
  explicit BracketParser(std::string_view text) : text_(text) {}

  Bracketing parse() {
    auto b = item();
    skip();
    if (pos_ != text_.size()) throw ParseError("trailing input in bracketing", pos_);
    return b;
  }

 private:
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  Bracketing item() {
    skip();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of bracketing", pos_);
    if (text_[pos_] == '(') {
      ++pos_;
      Bracketing group;
      group.parts.push_back(item());
      skip();
      while (pos_ < text_.size() && text_[pos_] == ',') {
        ++pos_;
        group.parts.push_back(item());
        skip();
      }
      if (pos_ >= text_.size() || text_[pos_] != ')') throw ParseError("expected ')'", pos_);
      ++pos_;
      return group;
    }
    const std::size_t start = pos_;
    std::size_t value = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      value = value * 10 + static_cast<std::size_t>(text_[pos_] - '0');
      ++pos_;
    }
    if (pos_ == start) throw ParseError("expected a factor index or '('", pos_);
    return Bracketing{value, {}};
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

void collect_factors(const Bracketing& b, std::vector<std::size_t>& out) {
  if (b.factor) {
    out.push_back(*b.factor);
    return;
  }
  for (const auto& p : b.parts) collect_factors(p, out);
}

std::vector<Tree> bracketed_shuffles(const std::vector<Tree>& factors, const Bracketing& b) {
  if (b.factor) {
    return {rename(factors[*b.factor], [](const std::string& n) { return "(" + n + ")"; })};
  }
  std::vector<std::vector<Tree>> parts;
  for (const auto& p : b.parts) parts.push_back(bracketed_shuffles(factors, p));
  std::map<std::string, Tree> out;
  std::vector<std::size_t> pick(parts.size(), 0);
  while (true) {
    std::vector<Tree> chosen;
    for (std::size_t k = 0; k < parts.size(); ++k) chosen.push_back(parts[k][pick[k]]);
    for (auto& a : generate(chosen, join_flattened)) out.emplace(to_string(a.tree), std::move(a.tree));
    std::size_t k = 0;
    for (; k < pick.size(); ++k) {
      if (++pick[k] < parts[k].size()) break;
      pick[k] = 0;
    }
    if (k == pick.size()) break;
  }
  std::vector<Tree> trees;
  for (auto& [s, t] : out) trees.push_back(std::move(t));
  return trees;
}

}  // namespace

Bracketing parse_bracketing(std::string_view text) { return BracketParser(text).parse(); }

std::string to_string(const Bracketing& b) {
  if (b.factor) return std::to_string(*b.factor);
  std::string out = "(";
  for (std::size_t i = 0; i < b.parts.size(); ++i) {
    if (i) out += ',';
    out += to_string(b.parts[i]);
  }
  return out + ")";
}

bool AssocInclusion::is_inclusion() const {
  std::set<std::size_t> hit;
  for (const auto& x : injection)
    if (!x || !hit.insert(*x).second) return false;
  return true;
}

AssocInclusion assoc_inclusion(const std::vector<Tree>& factors, const Bracketing& bracketing) {
  std::vector<std::size_t> order;
  collect_factors(bracketing, order);
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (order[i] != i) throw ParseError("bracketing must list the factors 0.." +
                                        std::to_string(factors.size() - 1) + " in order");
  }
  if (order.size() != factors.size()) {
    throw ParseError("bracketing names " + std::to_string(order.size()) + " factors, expected " +
                     std::to_string(factors.size()));
  }
  AssocInclusion out;
  for (const auto& t : bracketed_shuffles(factors, bracketing)) out.k.push_back(to_string(t));
  for (const auto& a : shuffles(factors)) out.j.push_back(to_string(a.tree));
  for (const auto& s : out.k) {
    auto it = std::lower_bound(out.j.begin(), out.j.end(), s);
    if (it != out.j.end() && *it == s)
      out.injection.emplace_back(static_cast<std::size_t>(it - out.j.begin()));
    else
      out.injection.emplace_back(std::nullopt);
  }
  return out;
}

std::vector<NamedMap> tensor_hom(const Forest& source, const std::vector<Tree>& factors) {
  auto s = share(source);
  std::set<NamedMap> out;
  for (const auto& a : shuffles(factors)) {
    for (const auto& f : hom(s, share(a.tree))) out.insert(named(f));
  }
  return {out.begin(), out.end()};
}

std::string permute_tuple_name(const std::string& name, const std::vector<std::size_t>& perm) {
  const std::string inner = strip_parens(name);
  std::vector<std::string> coords;
  std::size_t start = 0;
  while (true) {
    auto bar = inner.find('|', start);
    coords.push_back(inner.substr(start, bar - start));
    if (bar == std::string::npos) break;
    start = bar + 1;
  }
  if (coords.size() != perm.size()) throw DomainError("permutation has the wrong length for " + name);
  std::vector<std::string> out;
  for (auto k : perm) out.push_back(coords.at(k));
  return join_coords(out);
}

}  // namespace dendrotensor
