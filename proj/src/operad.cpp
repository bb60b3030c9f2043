#include "dendrotensor/operad.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "counter.hpp"
#include "dendrotensor/shuffle.hpp"
#include "json.hpp"

namespace dendrotensor {

std::vector<Op> FiniteOperad::operations_from(const std::vector<Color>& inputs) const {
  std::vector<Op> out;
  for (Color d = 0; d < color_count(); ++d) {
    auto ops = operations(inputs, d);
    out.insert(out.end(), ops.begin(), ops.end());
  }
  return out;
}

Op FiniteOperad::permute(const Op& f, const std::vector<std::size_t>& sigma) const {
  if (sigma.size() != f.inputs.size()) throw DomainError("permutation has the wrong arity");
  Op out{f.output, {}, f.tag};
  for (auto s : sigma) out.inputs.push_back(f.inputs.at(s));
  return out;
}

std::string FiniteOperad::describe(const Op& op) const {
  std::string out = "#" + std::to_string(op.tag) + "(";
  for (std::size_t i = 0; i < op.inputs.size(); ++i) {
    if (i) out += ',';
    out += color_name(op.inputs[i]);
  }
  return out + ")->" + color_name(op.output);
}

namespace {

using Partial = std::pair<std::vector<Color>, std::map<EdgeIndex, Op>>;

std::vector<Partial> component_maps(const FiniteOperad& p, const Tree& t) {
  const auto order = t.subtree(t.root());
  std::map<Color, std::vector<Op>> to_cache;
  auto ops_to = [&](Color c) -> const std::vector<Op>& {
    auto it = to_cache.find(c);
    if (it == to_cache.end()) it = to_cache.emplace(c, p.operations_to(c)).first;
    return it->second;
  };
  std::vector<Partial> out;
  std::vector<Color> colors(t.edge_count());
  std::map<EdgeIndex, Op> ops;
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == order.size()) {
      out.emplace_back(colors, ops);
      return;
    }
    const EdgeIndex e = order[k];
    if (!t.has_vertex(e)) {
      rec(k + 1);
      return;
    }
    const auto in = t.inputs(e);
    for (const auto& op : ops_to(colors[e])) {
      if (op.inputs.size() != in.size()) continue;
      for (std::size_t i = 0; i < in.size(); ++i) colors[in[i]] = op.inputs[i];
      ops[e] = op;
      rec(k + 1);
    }
    ops.erase(e);
  };
  for (Color c = 0; c < p.color_count(); ++c) {
    colors[t.root()] = c;
    rec(0);
  }
  return out;
}

}  // namespace

std::vector<MapToOperad> FiniteOperad::maps_from(const ForestPtr& forest) const {
  std::vector<std::vector<Partial>> parts;
  for (const auto& t : forest->components()) parts.push_back(component_maps(*this, t));
  std::vector<MapToOperad> out;
  std::vector<std::size_t> pick(parts.size(), 0);
  for (const auto& p : parts)
    if (p.empty()) return out;
  while (true) {
    MapToOperad m{forest, std::vector<Color>(forest->edge_count()), {}};
    for (std::size_t c = 0; c < parts.size(); ++c) {
      const auto& [colors, ops] = parts[c][pick[c]];
      for (EdgeIndex e = 0; e < colors.size(); ++e) m.colors[forest->global(c, e)] = colors[e];
      for (const auto& [e, op] : ops) m.vertex_ops.emplace(forest->global(c, e), op);
    }
    out.push_back(std::move(m));
    if (!detail::next_tuple(pick, detail::sizes_of(parts))) return out;
  }
}

bool operator==(const MapToOperad& a, const MapToOperad& b) {
  return a.colors == b.colors && a.vertex_ops == b.vertex_ops &&
         (a.source == b.source || *a.source == *b.source);
}

bool operator<(const MapToOperad& a, const MapToOperad& b) {
  return std::tie(a.colors, a.vertex_ops) < std::tie(b.colors, b.vertex_ops);
}

std::vector<std::string> validate(const MapToOperad& m, const FiniteOperad& p) {
  std::vector<std::string> problems;
  const Forest& f = *m.source;
  if (m.colors.size() != f.edge_count()) return {"color table has the wrong size"};
  for (auto c : m.colors)
    if (c >= p.color_count()) return {"color out of range"};
  for (EdgeIndex e = 0; e < f.edge_count(); ++e) {
    if (!f.has_vertex(e)) {
      if (m.vertex_ops.count(e)) problems.push_back(f.name(e) + ": operation on a leaf");
      continue;
    }
    auto it = m.vertex_ops.find(e);
    if (it == m.vertex_ops.end()) {
      problems.push_back(f.name(e) + ": no operation");
      continue;
    }
    std::vector<Color> in;
    for (auto i : f.inputs(e)) in.push_back(m.colors[i]);
    const Op& op = it->second;
    if (op.output != m.colors[e] || op.inputs != in) {
      problems.push_back(f.name(e) + ": profile does not match the edge colors");
      continue;
    }
    auto ops = p.operations(in, m.colors[e]);
    if (std::find(ops.begin(), ops.end(), op) == ops.end()) {
      problems.push_back(f.name(e) + ": not an operation of the target");
    }
  }
  return problems;
}

Op evaluate(const MapToOperad& m, const FiniteOperad& p, EdgeIndex output,
            const std::vector<EdgeIndex>& inputs) {
  const Forest& f = *m.source;
  const std::set<EdgeIndex> cut(inputs.begin(), inputs.end());
  std::vector<EdgeIndex> order;
  std::function<Op(EdgeIndex)> rec = [&](EdgeIndex e) -> Op {
    if (cut.count(e)) {
      order.push_back(e);
      return p.identity(m.colors[e]);
    }
    if (!f.has_vertex(e)) throw DomainError("not a cut: leaf " + f.name(e) + " is not an input");
    std::vector<Op> subs;
    for (auto c : f.inputs(e)) subs.push_back(rec(c));
    return p.compose(m.vertex_ops.at(e), subs);
  };
  Op op = rec(output);
  if (order.size() != inputs.size()) throw DomainError("not a cut above " + f.name(output));
  std::vector<std::size_t> sigma;
  for (auto x : inputs)
    sigma.push_back(static_cast<std::size_t>(std::find(order.begin(), order.end(), x) - order.begin()));
  return p.permute(op, sigma);
}

MapToOperad precompose(const MapToOperad& m, const OperadMap& g, const FiniteOperad& p) {
  const Forest& s = *g.source;
  MapToOperad out{g.source, std::vector<Color>(s.edge_count()), {}};
  for (EdgeIndex e = 0; e < s.edge_count(); ++e) out.colors[e] = m.colors[g.edge_map[e]];
  for (const auto& [v, op] : g.vertex_map) {
    std::vector<EdgeIndex> seq;
    for (auto i : s.inputs(v)) seq.push_back(g.edge_map[i]);
    out.vertex_ops.emplace(v, evaluate(m, p, op.output, seq));
  }
  return out;
}

MapToOperad restrict_to(const MapToOperad& m, const ForestPtr& sub) {
  const Forest& big = *m.source;
  MapToOperad out{sub, std::vector<Color>(sub->edge_count()), {}};
  for (EdgeIndex e = 0; e < sub->edge_count(); ++e) {
    const auto g = big.find(sub->name(e));
    if (!g) throw DomainError("edge " + sub->name(e) + " is not in the source");
    out.colors[e] = m.colors[*g];
    if (!sub->has_vertex(e)) continue;
    std::vector<std::string> a, b;
    for (auto i : sub->inputs(e)) a.push_back(sub->name(i));
    if (big.has_vertex(*g))
      for (auto i : big.inputs(*g)) b.push_back(big.name(i));
    if (!big.has_vertex(*g) || a != b) throw DomainError("vertex " + sub->name(e) + " is not in the source");
    out.vertex_ops.emplace(e, m.vertex_ops.at(*g));
  }
  return out;
}

// ---------------------------------------------------------------------------

void ThinOperad::set_colors(std::vector<std::string> names) {
  names_ = std::move(names);
  inputs_by_output_.assign(names_.size(), {});
  for (Color c = 0; c < names_.size(); ++c) add_profile(c, {c});
}

void ThinOperad::add_profile(Color output, std::vector<Color> sorted_inputs) {
  if (outputs_by_inputs_[sorted_inputs].insert(output).second) {
    inputs_by_output_[output].push_back(std::move(sorted_inputs));
  }
}

std::size_t ThinOperad::profile_count() const {
  std::size_t n = 0;
  for (const auto& v : inputs_by_output_) n += v.size();
  return n;
}

namespace {

bool sorted_distinct(std::vector<Color>& v) {
  std::sort(v.begin(), v.end());
  return std::adjacent_find(v.begin(), v.end()) == v.end();
}

}  // namespace

std::vector<Op> ThinOperad::operations(const std::vector<Color>& inputs, Color output) const {
  auto key = inputs;
  if (!sorted_distinct(key)) return {};
  auto it = outputs_by_inputs_.find(key);
  if (it == outputs_by_inputs_.end() || !it->second.count(output)) return {};
  return {Op{output, inputs, 0}};
}

std::vector<Op> ThinOperad::operations_from(const std::vector<Color>& inputs) const {
  auto key = inputs;
  if (!sorted_distinct(key)) return {};
  auto it = outputs_by_inputs_.find(key);
  if (it == outputs_by_inputs_.end()) return {};
  std::vector<Op> out;
  for (auto d : it->second) out.push_back(Op{d, inputs, 0});
  return out;
}

std::vector<Op> ThinOperad::operations_to(Color output) const {
  std::vector<Op> out;
  for (auto in : inputs_by_output_.at(output)) {
    std::sort(in.begin(), in.end());
    do {
      out.push_back(Op{output, in, 0});
    } while (std::next_permutation(in.begin(), in.end()));
  }
  std::sort(out.begin(), out.end());
  return out;
}

Op ThinOperad::compose(const Op& f, const std::vector<Op>& gs) const {
  if (gs.size() != f.inputs.size()) throw DomainError("composition has the wrong arity");
  Op out{f.output, {}, 0};
  std::size_t arity = 0;
  for (const auto& g : gs) arity += g.inputs.size();
  out.inputs.reserve(arity);
  for (std::size_t i = 0; i < gs.size(); ++i) {
    if (gs[i].output != f.inputs[i]) throw DomainError("composition colors do not match");
    out.inputs.insert(out.inputs.end(), gs[i].inputs.begin(), gs[i].inputs.end());
  }
  auto key = out.inputs;
  auto it = sorted_distinct(key) ? outputs_by_inputs_.find(key) : outputs_by_inputs_.end();
  if (it == outputs_by_inputs_.end() || !it->second.count(out.output)) {
    throw DomainError("composite is not an operation");
  }
  return out;
}

FreeForestOperad::FreeForestOperad(ForestPtr forest) : forest_(std::move(forest)) {
  std::vector<std::string> names;
  for (EdgeIndex e = 0; e < forest_->edge_count(); ++e) names.push_back(forest_->name(e));
  set_colors(std::move(names));
  for (EdgeIndex e = 0; e < forest_->edge_count(); ++e) {
    for (const auto& op : dendrotensor::operations(*forest_, e))
      add_profile(op.output, std::vector<Color>(op.inputs.begin(), op.inputs.end()));
  }
}

MapToOperad to_map_to_operad(const OperadMap& f) {
  const Forest& s = *f.source;
  MapToOperad m{f.source, {f.edge_map.begin(), f.edge_map.end()}, {}};
  for (const auto& [v, op] : f.vertex_map) {
    Op o{op.output, {}, 0};
    for (auto i : s.inputs(v)) o.inputs.push_back(f.edge_map[i]);
    m.vertex_ops.emplace(v, std::move(o));
  }
  return m;
}

std::vector<MapToOperad> FreeForestOperad::maps_from(const ForestPtr& source) const {
  std::vector<MapToOperad> out;
  for (const auto& f : hom(source, forest_)) out.push_back(to_map_to_operad(f));
  std::sort(out.begin(), out.end());
  return out;
}

BVTensorOperad::BVTensorOperad(std::vector<Tree> factors) : factors_(std::move(factors)) {
  std::vector<std::size_t> radix;
  for (const auto& s : factors_) radix.push_back(s.edge_count());
  auto index = [&](const TupleEdge& t) {
    std::size_t k = 0;
    for (std::size_t i = 0; i < t.size(); ++i) k = k * radix[i] + t[i];
    return k;
  };
  std::vector<std::string> names;
  TupleEdge t(factors_.size(), 0);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == t.size()) {
      names.push_back(tuple_name(factors_, t));
      return;
    }
    for (EdgeIndex e = 0; e < radix[i]; ++e) {
      t[i] = e;
      rec(i + 1);
    }
  };
  rec(0);
  set_colors(std::move(names));
  for (const auto& a : shuffles(factors_)) {
    for (EdgeIndex e = 0; e < a.tree.edge_count(); ++e) {
      for (const auto& cut : cuts_above(a.tree, e)) {
        std::vector<Color> in;
        for (auto x : cut) in.push_back(index(a.coords[x]));
        std::sort(in.begin(), in.end());
        add_profile(index(a.coords[e]), std::move(in));
      }
    }
  }
}

// ---------------------------------------------------------------------------

TableOperad TableOperad::parse(const std::string& text) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), e.byte);
  }
  auto fail = [](const std::string& what) { throw ParseError("table operad: " + what); };
  if (!doc.is_object() || !doc.contains("colors") || !doc["colors"].is_array()) fail("missing colors");
  TableOperad p;
  std::map<std::string, Color> color_index;
  for (const auto& c : doc["colors"]) {
    if (!c.is_string()) fail("colors must be strings");
    if (!color_index.emplace(c.get<std::string>(), p.colors_.size()).second) fail("duplicate color");
    p.colors_.push_back(c.get<std::string>());
  }
  auto color = [&](const json& j) -> Color {
    if (!j.is_string() || !color_index.count(j.get<std::string>())) fail("unknown color " + j.dump());
    return color_index.at(j.get<std::string>());
  };
  std::map<std::string, std::size_t> op_index;
  for (const auto& o : doc.value("operations", json::array())) {
    if (!o.is_object() || !o.contains("name") || !o["name"].is_string()) fail("operation needs a name");
    Entry e;
    e.name = o["name"].get<std::string>();
    if (!o.contains("output")) fail("operation " + e.name + " needs an output");
    e.output = color(o["output"]);
    for (const auto& c : o.value("inputs", json::array())) e.inputs.push_back(color(c));
    e.sorted_inputs = e.inputs;
    std::sort(e.sorted_inputs.begin(), e.sorted_inputs.end());
    if (!op_index.emplace(e.name, p.entries_.size()).second) fail("duplicate operation " + e.name);
    p.entries_.push_back(std::move(e));
  }
  for (const auto& c : doc.value("compositions", json::array())) {
    if (!c.is_object()) fail("composition entries must be objects");
    auto name = [&](const json& j) -> std::size_t {
      if (!j.is_string() || !op_index.count(j.get<std::string>())) fail("unknown operation " + j.dump());
      return op_index.at(j.get<std::string>());
    };
    const std::size_t outer = name(c.value("outer", json()));
    const std::size_t result = name(c.value("result", json()));
    std::vector<std::size_t> inner;
    for (const auto& g : c.value("inner", json::array()))
      inner.push_back(g.is_null() ? kIdentityTag : name(g));
    const Entry& f = p.entries_[outer];
    if (inner.size() != f.inputs.size()) fail("composition into " + f.name + " has the wrong arity");
    std::vector<Color> concat;
    bool all_identity = true;
    for (std::size_t s = 0; s < inner.size(); ++s) {
      if (inner[s] == kIdentityTag) {
        concat.push_back(f.inputs[s]);
        continue;
      }
      all_identity = false;
      const Entry& g = p.entries_[inner[s]];
      if (g.output != f.inputs[s]) fail("composition into " + f.name + " mismatches colors");
      concat.insert(concat.end(), g.inputs.begin(), g.inputs.end());
    }
    if (all_identity) fail("composition with identities only");
    std::sort(concat.begin(), concat.end());
    const Entry& r = p.entries_[result];
    if (r.output != f.output || r.sorted_inputs != concat) {
      fail("result " + r.name + " has the wrong profile");
    }
    auto [it, fresh] = p.compositions_.emplace(Key{outer, inner}, result);
    if (!fresh && it->second != result) fail("conflicting compositions");
  }
  p.check_laws();
  return p;
}

std::vector<Op> TableOperad::operations(const std::vector<Color>& inputs, Color output) const {
  std::vector<Op> out;
  if (inputs.size() == 1 && inputs[0] == output) out.push_back(identity(output));
  auto sorted = inputs;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t k = 0; k < entries_.size(); ++k) {
    if (entries_[k].output == output && entries_[k].sorted_inputs == sorted)
      out.push_back(Op{output, inputs, k});
  }
  return out;
}

std::vector<Op> TableOperad::operations_to(Color output) const {
  std::vector<Op> out{identity(output)};
  for (std::size_t k = 0; k < entries_.size(); ++k) {
    if (entries_[k].output != output) continue;
    auto in = entries_[k].sorted_inputs;
    do {
      out.push_back(Op{output, in, k});
    } while (std::next_permutation(in.begin(), in.end()));
  }
  std::sort(out.begin(), out.end());
  return out;
}

Op TableOperad::compose(const Op& f, const std::vector<Op>& gs) const {
  if (gs.size() != f.inputs.size()) throw DomainError("composition has the wrong arity");
  for (std::size_t i = 0; i < gs.size(); ++i)
    if (gs[i].output != f.inputs[i]) throw DomainError("composition colors do not match");
  if (f.tag == kIdentityTag) return gs[0];
  Op out{f.output, {}, f.tag};
  bool all_identity = true;
  for (const auto& g : gs) {
    out.inputs.insert(out.inputs.end(), g.inputs.begin(), g.inputs.end());
    all_identity = all_identity && g.tag == kIdentityTag;
  }
  if (all_identity) return out;
  // Match the actual input order of f with the declared one.
  const Entry& e = entries_.at(f.tag);
  std::vector<std::size_t> inner(e.inputs.size(), kIdentityTag);
  std::vector<bool> used(gs.size(), false);
  for (std::size_t s = 0; s < e.inputs.size(); ++s) {
    for (std::size_t t = 0; t < gs.size(); ++t) {
      if (!used[t] && f.inputs[t] == e.inputs[s]) {
        used[t] = true;
        inner[s] = gs[t].tag;
        break;
      }
    }
  }
  auto it = compositions_.find(Key{f.tag, inner});
  if (it == compositions_.end()) throw DomainError("composite into " + e.name + " is not tabulated");
  out.tag = it->second;
  return out;
}

void TableOperad::check_laws() const {
  auto fail = [](const std::string& what) { throw StructureError("table operad: " + what); };
  // Closure and symmetry under swapping equal-colored slots.
  for (std::size_t f = 0; f < entries_.size(); ++f) {
    const Entry& e = entries_[f];
    std::vector<std::vector<std::size_t>> choices;
    for (auto c : e.inputs) {
      std::vector<std::size_t> opts{kIdentityTag};
      for (std::size_t g = 0; g < entries_.size(); ++g)
        if (entries_[g].output == c) opts.push_back(g);
      choices.push_back(std::move(opts));
    }
    std::vector<std::size_t> pick(choices.size(), 0);
    while (true) {
      std::vector<std::size_t> inner;
      for (std::size_t s = 0; s < pick.size(); ++s) inner.push_back(choices[s][pick[s]]);
      const bool all_identity = std::all_of(inner.begin(), inner.end(),
                                            [](auto x) { return x == kIdentityTag; });
      if (!all_identity) {
        auto it = compositions_.find(Key{f, inner});
        if (it == compositions_.end()) fail("composite into " + e.name + " is missing");
        for (std::size_t a = 0; a < inner.size(); ++a) {
          for (std::size_t b = a + 1; b < inner.size(); ++b) {
            if (e.inputs[a] != e.inputs[b]) continue;
            auto swapped = inner;
            std::swap(swapped[a], swapped[b]);
            auto jt = compositions_.find(Key{f, swapped});
            if (jt == compositions_.end() || jt->second != it->second)
              fail("composites into " + e.name + " are not symmetric");
          }
        }
      }
      if (!detail::next_tuple(pick, detail::sizes_of(choices))) break;
    }
  }
  // Associativity: f(g_1, ..., g_k)(h...) = f(g_1(h...), ..., g_k(h...)).
  for (Color d = 0; d < colors_.size(); ++d) {
    for (const auto& f : operations_to(d)) {
      std::vector<std::vector<Op>> g_choices;
      for (auto c : f.inputs) g_choices.push_back(operations_to(c));
      std::vector<std::size_t> gp(g_choices.size(), 0);
      while (true) {
        std::vector<Op> gs;
        for (std::size_t i = 0; i < gp.size(); ++i) gs.push_back(g_choices[i][gp[i]]);
        const Op fg = compose(f, gs);
        std::vector<std::vector<Op>> h_choices;
        for (auto c : fg.inputs) h_choices.push_back(operations_to(c));
        std::vector<std::size_t> hp(h_choices.size(), 0);
        while (true) {
          std::vector<Op> hs;
          for (std::size_t i = 0; i < hp.size(); ++i) hs.push_back(h_choices[i][hp[i]]);
          const Op lhs = compose(fg, hs);
          std::vector<Op> inner;
          std::size_t at = 0;
          for (const auto& g : gs) {
            std::vector<Op> part(hs.begin() + static_cast<std::ptrdiff_t>(at),
                                 hs.begin() + static_cast<std::ptrdiff_t>(at + g.inputs.size()));
            at += g.inputs.size();
            inner.push_back(compose(g, part));
          }
          if (compose(f, inner) != lhs) fail("composition is not associative at " + describe(f));
          if (!detail::next_tuple(hp, detail::sizes_of(h_choices))) break;
        }
        if (!detail::next_tuple(gp, detail::sizes_of(g_choices))) break;
      }
    }
  }
}

}  // namespace dendrotensor
