#include "dendrotensor/operad_map.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace dendrotensor {

namespace {

using Cut = std::vector<EdgeIndex>;

void cuts_rec(const Tree& t, EdgeIndex e, std::vector<std::vector<Cut>>& memo,
              std::vector<std::uint8_t>& done) {
  if (done[e]) return;
  std::vector<Cut> result{{e}};
  if (t.has_vertex(e)) {
    // Cartesian product of the cut lists of the inputs.
    std::vector<Cut> partial{{}};
    for (auto c : t.inputs(e)) {
      cuts_rec(t, c, memo, done);
      std::vector<Cut> next;
      for (const auto& p : partial) {
        for (const auto& q : memo[c]) {
          Cut merged = p;
          merged.insert(merged.end(), q.begin(), q.end());
          next.push_back(std::move(merged));
        }
      }
      partial = std::move(next);
    }
    for (auto& p : partial) {
      std::sort(p.begin(), p.end());
      result.push_back(std::move(p));
    }
    std::sort(result.begin() + 1, result.end());
  }
  memo[e] = std::move(result);
  done[e] = 1;
}

bool covers(const Tree& t, EdgeIndex e, const std::vector<std::uint8_t>& in_cut,
            std::size_t& hits) {
  if (in_cut[e]) {
    ++hits;
    return true;
  }
  if (!t.has_vertex(e)) return false;
  for (auto c : t.inputs(e))
    if (!covers(t, c, in_cut, hits)) return false;
  return true;
}

}  // namespace

std::vector<std::vector<EdgeIndex>> cuts_above(const Tree& tree, EdgeIndex edge) {
  std::vector<std::vector<Cut>> memo(tree.edge_count());
  std::vector<std::uint8_t> done(tree.edge_count(), 0);
  cuts_rec(tree, edge, memo, done);
  return memo[edge];
}

std::vector<Operation> operations(const Forest& forest, EdgeIndex edge) {
  const auto c = forest.component_of(edge);
  std::vector<Operation> out;
  for (auto& cut : cuts_above(forest.component(c), forest.local(edge))) {
    Operation op{edge, {}};
    for (auto l : cut) op.inputs.push_back(forest.global(c, l));
    out.push_back(std::move(op));
  }
  return out;
}

std::vector<Operation> operations(const Tree& tree, std::string_view edge) {
  Forest f(tree);
  return operations(f, f.at(edge));
}

bool is_cut(const Forest& forest, EdgeIndex output, const std::vector<EdgeIndex>& inputs) {
  const auto c = forest.component_of(output);
  const Tree& t = forest.component(c);
  std::vector<std::uint8_t> in_cut(t.edge_count(), 0);
  for (auto g : inputs) {
    if (g >= forest.edge_count() || forest.component_of(g) != c) return false;
    auto l = forest.local(g);
    if (in_cut[l]) return false;
    in_cut[l] = 1;
  }
  std::size_t hits = 0;
  return covers(t, forest.local(output), in_cut, hits) && hits == inputs.size();
}

ForestPtr share(Forest f) { return std::make_shared<const Forest>(std::move(f)); }
ForestPtr share(Tree t) { return share(Forest(std::move(t))); }

bool operator==(const OperadMap& a, const OperadMap& b) {
  if (a.edge_map != b.edge_map || a.vertex_map != b.vertex_map) return false;
  auto same = [](const ForestPtr& x, const ForestPtr& y) {
    return x == y || (x && y && *x == *y);
  };
  return same(a.source, b.source) && same(a.target, b.target);
}

OperadMap from_edge_map(ForestPtr source, ForestPtr target, std::vector<EdgeIndex> edge_map) {
  OperadMap f{std::move(source), std::move(target), std::move(edge_map), {}};
  const Forest& s = *f.source;
  for (EdgeIndex e = 0; e < s.edge_count(); ++e) {
    if (!s.has_vertex(e)) continue;
    Operation op{f.edge_map[e], {}};
    for (auto i : s.inputs(e)) op.inputs.push_back(f.edge_map[i]);
    std::sort(op.inputs.begin(), op.inputs.end());
    f.vertex_map.emplace(e, std::move(op));
  }
  return f;
}

OperadMap identity_map(ForestPtr forest) {
  std::vector<EdgeIndex> em(forest->edge_count());
  std::iota(em.begin(), em.end(), EdgeIndex{0});
  return from_edge_map(forest, forest, std::move(em));
}

namespace {

// Enumerates the maps of one source component, as vectors of global target
// indices indexed by local source edge.
class ComponentHom {
 public:
  ComponentHom(const Tree& source, const Forest& target) : s_(source), t_(target) {
    cuts_.resize(target.edge_count());
    cut_done_.assign(target.edge_count(), 0);
    order_ = s_.subtree(s_.root());
  }

  std::vector<std::vector<EdgeIndex>> run() {
    std::vector<EdgeIndex> assign(s_.edge_count(), kUnset);
    for (EdgeIndex g = 0; g < t_.edge_count(); ++g) {
      assign[s_.root()] = g;
      extend(0, assign);
    }
    std::sort(results_.begin(), results_.end());
    return std::move(results_);
  }

 private:
  static constexpr EdgeIndex kUnset = static_cast<EdgeIndex>(-1);

  const std::vector<Operation>& cuts(EdgeIndex g) {
    if (!cut_done_[g]) {
      cuts_[g] = operations(t_, g);
      cut_done_[g] = 1;
    }
    return cuts_[g];
  }

  // order_ is a preorder, so the output of each vertex is assigned before it
  // is visited.
  void extend(std::size_t pos, std::vector<EdgeIndex>& assign) {
    while (pos < order_.size() && !s_.has_vertex(order_[pos])) ++pos;
    if (pos == order_.size()) {
      results_.push_back(assign);
      return;
    }
    const EdgeIndex e = order_[pos];
    const auto ins = s_.inputs(e);
    for (const auto& op : cuts(assign[e])) {
      if (op.inputs.size() != ins.size()) continue;
      std::vector<EdgeIndex> perm = op.inputs;  // sorted
      do {
        for (std::size_t i = 0; i < ins.size(); ++i) assign[ins[i]] = perm[i];
        extend(pos + 1, assign);
      } while (std::next_permutation(perm.begin(), perm.end()));
      for (auto i : ins) assign[i] = kUnset;
    }
  }

  const Tree& s_;
  const Forest& t_;
  std::vector<std::vector<Operation>> cuts_;
  std::vector<std::uint8_t> cut_done_;
  std::vector<EdgeIndex> order_;
  std::vector<std::vector<EdgeIndex>> results_;
};

}  // namespace

std::vector<OperadMap> hom(const ForestPtr& source, const ForestPtr& target) {
  const Forest& s = *source;
  std::vector<std::vector<EdgeIndex>> partial{{}};
  for (std::size_t c = 0; c < s.component_count(); ++c) {
    auto maps = ComponentHom(s.component(c), *target).run();
    std::vector<std::vector<EdgeIndex>> next;
    next.reserve(partial.size() * maps.size());
    for (const auto& p : partial) {
      for (const auto& m : maps) {
        auto merged = p;
        merged.insert(merged.end(), m.begin(), m.end());
        next.push_back(std::move(merged));
      }
    }
    partial = std::move(next);
  }
  std::vector<OperadMap> out;
  out.reserve(partial.size());
  for (auto& em : partial) out.push_back(from_edge_map(source, target, std::move(em)));
  return out;
}

std::size_t hom_count(const Forest& source, const Forest& target) {
  std::size_t n = 1;
  for (std::size_t c = 0; c < source.component_count(); ++c)
    n *= ComponentHom(source.component(c), target).run().size();
  return n;
}

OperadMap compose(const OperadMap& f, const OperadMap& g) {
  if (!(f.target == g.source || *f.target == *g.source)) {
    throw DomainError("compose: target of the first map is not the source of the second");
  }
  const Forest& mid = *f.target;
  OperadMap h{f.source, g.target, {}, {}};
  h.edge_map.reserve(f.edge_map.size());
  for (auto e : f.edge_map) h.edge_map.push_back(g.edge_map.at(e));

  for (const auto& [v, op] : f.vertex_map) {
    std::vector<std::uint8_t> in_cut(mid.edge_count(), 0);
    for (auto x : op.inputs) in_cut[x] = 1;
    // Substitute g's image of every mid vertex between the output and the cut.
    std::vector<EdgeIndex> inputs;
    std::function<void(EdgeIndex)> expand = [&](EdgeIndex x) {
      if (in_cut[x]) {
        inputs.push_back(g.edge_map[x]);
        return;
      }
      const auto it = g.vertex_map.find(x);
      if (it == g.vertex_map.end()) {
        throw DomainError("compose: cut of '" + f.source->name(v) +
                          "' is not closed in the middle forest");
      }
      for (auto i : mid.inputs(x)) expand(i);
    };
    expand(op.output);
    std::sort(inputs.begin(), inputs.end());
    h.vertex_map.emplace(v, Operation{g.edge_map[op.output], std::move(inputs)});
  }
  return h;
}

std::vector<Violation> validate(const OperadMap& f) {
  std::vector<Violation> out;
  const Forest& s = *f.source;
  const Forest& t = *f.target;
  if (f.edge_map.size() != s.edge_count()) {
    out.push_back({"", "edge_map has " + std::to_string(f.edge_map.size()) +
                           " entries for " + std::to_string(s.edge_count()) + " edges"});
    return out;
  }
  for (EdgeIndex e = 0; e < s.edge_count(); ++e) {
    if (f.edge_map[e] >= t.edge_count()) {
      out.push_back({"", "edge '" + s.name(e) + "' maps outside the target"});
      return out;
    }
  }
  for (std::size_t c = 0; c < s.component_count(); ++c) {
    const auto& tree = s.component(c);
    const auto home = t.component_of(f.edge_map[s.global(c, tree.root())]);
    for (EdgeIndex l = 0; l < tree.edge_count(); ++l) {
      if (t.component_of(f.edge_map[s.global(c, l)]) != home) {
        out.push_back({"", "component of '" + tree.name(tree.root()) +
                               "' is split across target components"});
        break;
      }
    }
  }
  for (EdgeIndex e = 0; e < s.edge_count(); ++e) {
    if (!s.has_vertex(e)) continue;
    const auto it = f.vertex_map.find(e);
    if (it == f.vertex_map.end()) {
      out.push_back({s.name(e), "vertex has no image"});
      continue;
    }
    const Operation& op = it->second;
    if (op.output != f.edge_map[e]) {
      out.push_back({s.name(e), "expected output '" + t.name(f.edge_map[e]) + "', got '" +
                                    t.name(op.output) + "'"});
      continue;
    }
    std::vector<EdgeIndex> expected;
    for (auto i : s.inputs(e)) expected.push_back(f.edge_map[i]);
    std::sort(expected.begin(), expected.end());
    if (std::adjacent_find(expected.begin(), expected.end()) != expected.end()) {
      out.push_back({s.name(e), "inputs are not mapped injectively"});
      continue;
    }
    if (expected != op.inputs) {
      out.push_back({s.name(e), "image inputs differ from the images of the vertex inputs"});
      continue;
    }
    if (!is_cut(t, op.output, op.inputs)) {
      out.push_back({s.name(e), "image is not a cut above '" + t.name(op.output) + "'"});
    }
  }
  for (const auto& [v, op] : f.vertex_map) {
    if (v >= s.edge_count() || !s.has_vertex(v)) {
      out.push_back({v < s.edge_count() ? s.name(v) : std::to_string(v),
                     "vertex_map entry for a non-vertex"});
    }
  }
  return out;
}

std::string to_string(Elementary e) {
  switch (e) {
    case Elementary::Iso: return "iso";
    case Elementary::Degeneracy: return "degeneracy";
    case Elementary::InnerFace: return "inner_face";
    case Elementary::OuterFace: return "outer_face";
    case Elementary::EdgeOfCorolla: return "edge_of_corolla";
    case Elementary::Other: return "other";
  }
  return "other";
}

Elementary classify_elementary(const OperadMap& f) {
  if (f.source->component_count() != 1 || f.target->component_count() != 1) {
    return Elementary::Other;
  }
  if (!validate(f).empty()) return Elementary::Other;
  const Tree& s = f.source->component(0);
  const Tree& t = f.target->component(0);
  const auto ns = s.edge_count(), nt = t.edge_count();

  std::vector<std::size_t> hits(nt, 0);
  for (auto e : f.edge_map) ++hits[e];
  const bool injective = std::all_of(hits.begin(), hits.end(), [](auto h) { return h <= 1; });
  const bool surjective = std::all_of(hits.begin(), hits.end(), [](auto h) { return h >= 1; });

  if (s.vertex_count() == 0) {
    if (t.vertex_count() == 0) return Elementary::Iso;
    if (t.vertex_count() == 1) return Elementary::EdgeOfCorolla;
    return Elementary::Other;
  }

  enum Kind { Identity, Generator, Composite };
  auto kind = [&](const Operation& op) {
    if (op.inputs.size() == 1 && op.inputs[0] == op.output) return Identity;
    if (t.has_vertex(op.output)) {
      auto kids = t.inputs(op.output);
      if (std::equal(kids.begin(), kids.end(), op.inputs.begin(), op.inputs.end()))
        return Generator;
    }
    return Composite;
  };
  std::size_t identities = 0, composites = 0;
  const Operation* composite = nullptr;
  const Operation* identity = nullptr;
  EdgeIndex identity_vertex = 0;
  std::vector<std::uint8_t> vertex_hit(nt, 0);
  for (const auto& [v, op] : f.vertex_map) {
    switch (kind(op)) {
      case Identity:
        ++identities;
        identity = &op;
        identity_vertex = v;
        break;
      case Generator:
        vertex_hit[op.output] = 1;
        break;
      case Composite:
        ++composites;
        composite = &op;
        break;
    }
  }

  if (injective && surjective && identities == 0 && composites == 0 &&
      s.vertex_count() == t.vertex_count()) {
    return Elementary::Iso;
  }
  if (surjective && ns == nt + 1 && identities == 1 && composites == 0 &&
      s.inputs(identity_vertex).size() == 1 && s.vertex_count() == t.vertex_count() + 1) {
    (void)identity;
    return Elementary::Degeneracy;
  }
  if (injective && nt == ns + 1 && identities == 0 && composites == 1 &&
      s.vertex_count() + 1 == t.vertex_count()) {
    EdgeIndex missing = 0;
    for (EdgeIndex e = 0; e < nt; ++e)
      if (!hits[e]) missing = e;
    if (t.is_inner(missing) && t.parent(missing) && *t.parent(missing) == composite->output) {
      std::vector<EdgeIndex> expected;
      for (auto c : t.inputs(composite->output))
        if (c != missing) expected.push_back(c);
      for (auto c : t.inputs(missing)) expected.push_back(c);
      std::sort(expected.begin(), expected.end());
      if (expected == composite->inputs) return Elementary::InnerFace;
    }
    return Elementary::Other;
  }
  if (injective && identities == 0 && composites == 0 &&
      s.vertex_count() + 1 == t.vertex_count()) {
    std::vector<EdgeIndex> unhit;
    for (EdgeIndex e = 0; e < nt; ++e)
      if (t.has_vertex(e) && !vertex_hit[e]) unhit.push_back(e);
    if (unhit.size() != 1) return Elementary::Other;
    const EdgeIndex w = unhit[0];
    std::vector<EdgeIndex> missing, expected;
    for (EdgeIndex e = 0; e < nt; ++e)
      if (!hits[e]) missing.push_back(e);
    const auto kids = t.inputs(w);
    if (w == t.root()) {
      std::size_t inner = 0;
      for (auto c : kids) {
        if (t.has_vertex(c))
          ++inner;
        else
          expected.push_back(c);
      }
      if (inner != 1) return Elementary::Other;
      expected.push_back(w);
    } else {
      for (auto c : kids) {
        if (t.has_vertex(c)) return Elementary::Other;
        expected.push_back(c);
      }
    }
    std::sort(expected.begin(), expected.end());
    if (expected == missing) return Elementary::OuterFace;
  }
  return Elementary::Other;
}

NamedMap named(const OperadMap& f) {
  NamedMap m;
  const Forest& s = *f.source;
  const Forest& t = *f.target;
  for (EdgeIndex e = 0; e < s.edge_count(); ++e) m.edge_map[s.name(e)] = t.name(f.edge_map[e]);
  for (const auto& [v, op] : f.vertex_map) {
    std::vector<std::string> ins;
    for (auto i : op.inputs) ins.push_back(t.name(i));
    std::sort(ins.begin(), ins.end());
    m.vertex_map[s.name(v)] = {t.name(op.output), std::move(ins)};
  }
  return m;
}

}  // namespace dendrotensor
