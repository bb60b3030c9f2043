#include "dendrotensor/tree.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>

namespace dendrotensor {

namespace {

bool is_name_char(char c) {
  switch (c) {
    case '[':
    case ']':
    case ',':
    case ';':
    case '{':
    case '}':
      return false;
    default:
      return !std::isspace(static_cast<unsigned char>(c));
  }
}

}  // namespace

Tree Tree::make(std::string root, std::vector<VertexSpec> vertices) {
  std::vector<std::string> names{root};
  for (const auto& v : vertices) {
    names.push_back(v.out);
    names.insert(names.end(), v.in.begin(), v.in.end());
  }
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  for (const auto& n : names) {
    if (n.empty()) throw StructureError("empty edge name");
  }

  Tree t;
  t.names_ = std::move(names);
  const auto n = t.names_.size();
  t.has_vertex_.assign(n, 0);
  t.children_.assign(n, {});
  t.parent_.assign(n, kNone);
  t.root_ = *t.find(root);
  t.vertex_count_ = vertices.size();

  for (const auto& v : vertices) {
    const EdgeIndex out = *t.find(v.out);
    if (t.has_vertex_[out]) {
      throw StructureError("edge '" + v.out + "' is the output of two vertices");
    }
    t.has_vertex_[out] = 1;
    auto& kids = t.children_[out];
    for (const auto& in : v.in) {
      const EdgeIndex e = *t.find(in);
      if (t.parent_[e] != kNone) {
        throw StructureError("edge '" + in + "' is an input of two vertices");
      }
      if (e == out) throw StructureError("edge '" + in + "' is a loop");
      t.parent_[e] = out;
      kids.push_back(e);
    }
    std::sort(kids.begin(), kids.end());
  }

  if (t.parent_[t.root_] != kNone) {
    throw StructureError("root '" + root + "' is an input of a vertex");
  }
  // Every edge must reach the root by walking down; a cycle or a second
  // parentless edge breaks this.
  std::vector<std::uint8_t> state(n, 0);  // 0 unknown, 1 visiting, 2 reaches root
  state[t.root_] = 2;
  for (EdgeIndex e = 0; e < n; ++e) {
    std::vector<EdgeIndex> path;
    EdgeIndex cur = e;
    while (state[cur] == 0) {
      state[cur] = 1;
      path.push_back(cur);
      if (t.parent_[cur] == kNone) {
        throw StructureError("edge '" + t.names_[cur] + "' is not connected to the root");
      }
      cur = t.parent_[cur];
    }
    if (state[cur] == 1) {
      throw StructureError("cycle through edge '" + t.names_[cur] + "'");
    }
    for (auto p : path) state[p] = 2;
  }
  return t;
}

Tree Tree::unit(std::string name) { return make(std::move(name), {}); }

Tree Tree::corolla(std::string root, std::vector<std::string> leaves) {
  std::string out = root;
  return make(std::move(root), {VertexSpec{std::move(out), std::move(leaves)}});
}

std::optional<EdgeIndex> Tree::find(std::string_view name) const {
  auto it = std::lower_bound(names_.begin(), names_.end(), name);
  if (it == names_.end() || *it != name) return std::nullopt;
  return static_cast<EdgeIndex>(it - names_.begin());
}

EdgeIndex Tree::at(std::string_view name) const {
  auto e = find(name);
  if (!e) throw DomainError("unknown edge '" + std::string(name) + "'");
  return *e;
}

std::size_t Tree::depth(EdgeIndex e) const {
  std::size_t d = 0;
  while (parent_[e] != kNone) {
    e = parent_[e];
    ++d;
  }
  return d;
}

std::vector<EdgeIndex> Tree::leaves() const {
  std::vector<EdgeIndex> out;
  for (EdgeIndex e = 0; e < edge_count(); ++e)
    if (is_leaf(e)) out.push_back(e);
  return out;
}

std::vector<EdgeIndex> Tree::stumps() const {
  std::vector<EdgeIndex> out;
  for (EdgeIndex e = 0; e < edge_count(); ++e)
    if (is_stump(e)) out.push_back(e);
  return out;
}

std::vector<EdgeIndex> Tree::max_edges() const {
  std::vector<EdgeIndex> out;
  for (EdgeIndex e = 0; e < edge_count(); ++e)
    if (is_maximal(e)) out.push_back(e);
  return out;
}

std::vector<EdgeIndex> Tree::inner_edges() const {
  std::vector<EdgeIndex> out;
  for (EdgeIndex e = 0; e < edge_count(); ++e)
    if (is_inner(e)) out.push_back(e);
  return out;
}

std::vector<EdgeIndex> Tree::subtree(EdgeIndex e) const {
  std::vector<EdgeIndex> out;
  std::vector<EdgeIndex> stack{e};
  while (!stack.empty()) {
    auto cur = stack.back();
    stack.pop_back();
    out.push_back(cur);
    const auto& kids = children_[cur];
    for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.push_back(*it);
  }
  return out;
}

std::vector<VertexSpec> Tree::vertex_specs() const {
  std::vector<VertexSpec> out;
  for (EdgeIndex e = 0; e < edge_count(); ++e) {
    if (!has_vertex(e)) continue;
    VertexSpec v{names_[e], {}};
    for (auto c : children_[e]) v.in.push_back(names_[c]);
    out.push_back(std::move(v));
  }
  return out;
}

bool Tree::is_linear() const {
  for (EdgeIndex e = 0; e < edge_count(); ++e)
    if (has_vertex(e) && children_[e].size() != 1) return false;
  return true;
}

// ---------------------------------------------------------------------------

Forest::Forest(std::vector<Tree> components) : components_(std::move(components)) {
  for (std::size_t c = 0; c < components_.size(); ++c) {
    offsets_.push_back(component_of_.size());
    const auto& t = components_[c];
    for (EdgeIndex e = 0; e < t.edge_count(); ++e) {
      by_name_.emplace_back(t.name(e), static_cast<EdgeIndex>(component_of_.size()));
      component_of_.push_back(c);
    }
  }
  std::sort(by_name_.begin(), by_name_.end());
  for (std::size_t i = 1; i < by_name_.size(); ++i) {
    if (by_name_[i].first == by_name_[i - 1].first) {
      throw StructureError("edge '" + by_name_[i].first +
                           "' occurs in two components of a forest");
    }
  }
}

Forest::Forest(Tree tree) : Forest(std::vector<Tree>{std::move(tree)}) {}

std::size_t Forest::vertex_count() const {
  std::size_t n = 0;
  for (const auto& t : components_) n += t.vertex_count();
  return n;
}

std::optional<EdgeIndex> Forest::find(std::string_view name) const {
  auto it = std::lower_bound(
      by_name_.begin(), by_name_.end(), name,
      [](const auto& entry, std::string_view key) { return entry.first < key; });
  if (it == by_name_.end() || it->first != name) return std::nullopt;
  return it->second;
}

EdgeIndex Forest::at(std::string_view name) const {
  auto e = find(name);
  if (!e) throw DomainError("unknown edge '" + std::string(name) + "'");
  return *e;
}

std::vector<EdgeIndex> Forest::inputs(EdgeIndex g) const {
  const auto c = component_of(g);
  std::vector<EdgeIndex> out;
  for (auto l : components_[c].inputs(local(g))) out.push_back(global(c, l));
  return out;
}

std::optional<EdgeIndex> Forest::parent(EdgeIndex g) const {
  const auto c = component_of(g);
  auto p = components_[c].parent(local(g));
  if (!p) return std::nullopt;
  return global(c, *p);
}

// ---------------------------------------------------------------------------
// Parsing and printing

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Tree tree() {
    std::vector<VertexSpec> vertices;
    std::string root = edge(vertices);
    return build(std::move(root), std::move(vertices));
  }

  Forest forest() {
    expect('{');
    std::vector<Tree> trees;
    skip_ws();
    if (peek() != '}') {
      trees.push_back(tree());
      while (accept(';')) trees.push_back(tree());
    }
    expect('}');
    try {
      return Forest(std::move(trees));
    } catch (const StructureError& e) {
      throw ParseError(std::string("duplicate edge name: ") + e.what(), pos_);
    }
  }

  void finish() {
    skip_ws();
    if (pos_ != text_.size()) throw ParseError("unexpected trailing input", pos_);
  }

 private:
  Tree build(std::string root, std::vector<VertexSpec> vertices) {
    // Names are checked here so that the error carries a position.
    std::vector<std::string> seen{root};
    for (const auto& v : vertices) seen.insert(seen.end(), v.in.begin(), v.in.end());
    std::sort(seen.begin(), seen.end());
    auto dup = std::adjacent_find(seen.begin(), seen.end());
    if (dup != seen.end()) throw ParseError("duplicate edge name '" + *dup + "'", pos_);
    return Tree::make(std::move(root), std::move(vertices));
  }

  std::string edge(std::vector<VertexSpec>& vertices) {
    std::string n = name();
    if (accept('[')) {
      VertexSpec v{n, {}};
      skip_ws();
      if (peek() != ']') {
        v.in.push_back(edge(vertices));
        while (accept(',')) v.in.push_back(edge(vertices));
      }
      expect(']');
      vertices.push_back(std::move(v));
    }
    return n;
  }

  std::string name() {
    skip_ws();
    const auto start = pos_;
    while (pos_ < text_.size() && is_name_char(text_[pos_])) ++pos_;
    if (pos_ == start) throw ParseError("expected an edge name", pos_);
    return std::string(text_.substr(start, pos_ - start));
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) throw ParseError(std::string("expected '") + c + "'", pos_);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

void print(const Tree& t, EdgeIndex e, std::string& out) {
  out += t.name(e);
  if (!t.has_vertex(e)) return;
  out += '[';
  bool first = true;
  for (auto c : t.inputs(e)) {
    if (!first) out += ',';
    first = false;
    print(t, c, out);
  }
  out += ']';
}

}  // namespace

Tree parse_tree(std::string_view text) {
  Parser p(text);
  Tree t = p.tree();
  p.finish();
  return t;
}

Forest parse_forest(std::string_view text) {
  Parser p(text);
  Forest f = p.forest();
  p.finish();
  return f;
}

std::string to_string(const Tree& tree) {
  std::string out;
  print(tree, tree.root(), out);
  return out;
}

std::string to_string(const Forest& forest) {
  std::string out = "{";
  for (std::size_t i = 0; i < forest.component_count(); ++i) {
    if (i) out += ';';
    out += to_string(forest.component(i));
  }
  out += '}';
  return out;
}

// ---------------------------------------------------------------------------
// Surgery

std::pair<Tree, EdgeCorrespondence> interior(const Tree& tree) {
  std::vector<VertexSpec> kept;
  for (auto& v : tree.vertex_specs())
    if (!v.in.empty()) kept.push_back(std::move(v));
  // Removing a stump vertex can leave an edge mentioned nowhere but in the
  // root position, which make() still picks up.
  Tree result = Tree::make(tree.name(tree.root()), std::move(kept));
  EdgeCorrespondence corr;
  for (const auto& n : tree.names()) corr.emplace_back(n, n);
  return {std::move(result), std::move(corr)};
}

Tree add_stumps(const Tree& tree, const std::set<std::string>& leaves) {
  auto specs = tree.vertex_specs();
  for (const auto& l : leaves) {
    auto e = tree.find(l);
    if (!e) throw DomainError("add_stumps: unknown edge '" + l + "'");
    if (!tree.is_leaf(*e)) throw DomainError("add_stumps: '" + l + "' is not a leaf");
    specs.push_back(VertexSpec{l, {}});
  }
  return Tree::make(tree.name(tree.root()), std::move(specs));
}

CutResult cut_at(const Tree& tree, std::string_view edge) {
  const EdgeIndex d = tree.at(edge);
  if (!tree.is_inner(d)) {
    throw DomainError("cut_at: '" + std::string(edge) + "' is not an inner edge");
  }
  const auto above = tree.subtree(d);
  std::vector<std::uint8_t> in_upper(tree.edge_count(), 0);
  for (auto e : above) in_upper[e] = 1;

  std::vector<VertexSpec> lower, upper;
  for (auto& v : tree.vertex_specs()) {
    const EdgeIndex out = tree.at(v.out);
    (in_upper[out] ? upper : lower).push_back(std::move(v));
  }
  return {Tree::make(tree.name(tree.root()), std::move(lower)),
          Tree::make(std::string(edge), std::move(upper))};
}

Tree graft(const Tree& lower, std::string_view leaf, const Tree& upper) {
  const EdgeIndex e = lower.at(leaf);
  if (!lower.is_leaf(e) || e == lower.root()) {
    // Grafting onto the root of the unit tree is the one leaf that is also
    // the root.
    if (!(lower.edge_count() == 1 && e == lower.root())) {
      throw DomainError("graft: '" + std::string(leaf) + "' is not a leaf");
    }
  }
  if (upper.name(upper.root()) != leaf) {
    throw DomainError("graft: upper root '" + upper.name(upper.root()) +
                      "' does not match leaf '" + std::string(leaf) + "'");
  }
  for (const auto& n : upper.names()) {
    if (n != leaf && lower.find(n)) throw StructureError("graft: name clash on '" + n + "'");
  }
  auto specs = lower.vertex_specs();
  auto up = upper.vertex_specs();
  specs.insert(specs.end(), std::make_move_iterator(up.begin()),
               std::make_move_iterator(up.end()));
  return Tree::make(lower.name(lower.root()), std::move(specs));
}

std::pair<Tree, std::vector<std::string>> contract_inner(
    const Tree& tree, const std::set<std::string>& edges) {
  std::vector<std::uint8_t> drop(tree.edge_count(), 0);
  for (const auto& n : edges) {
    const EdgeIndex e = tree.at(n);
    if (!tree.is_inner(e)) {
      throw DomainError("contract_inner: '" + n + "' is not an inner edge");
    }
    drop[e] = 1;
  }
  // The merged vertex above a kept edge takes as inputs the first kept edges
  // reached by walking up through contracted ones.
  std::function<void(EdgeIndex, std::vector<std::string>&)> collect =
      [&](EdgeIndex e, std::vector<std::string>& out) {
        for (auto c : tree.inputs(e)) {
          if (drop[c])
            collect(c, out);
          else
            out.push_back(tree.name(c));
        }
      };
  std::vector<VertexSpec> specs;
  std::vector<std::string> kept;
  for (EdgeIndex e = 0; e < tree.edge_count(); ++e) {
    if (drop[e]) continue;
    kept.push_back(tree.name(e));
    if (!tree.has_vertex(e)) continue;
    VertexSpec v{tree.name(e), {}};
    collect(e, v.in);
    specs.push_back(std::move(v));
  }
  return {Tree::make(tree.name(tree.root()), std::move(specs)), std::move(kept)};
}

std::set<std::string> max_edge_names(const Tree& tree) {
  std::set<std::string> out;
  for (auto e : tree.max_edges()) out.insert(tree.name(e));
  return out;
}

std::set<std::string> leaf_names(const Tree& tree) {
  std::set<std::string> out;
  for (auto e : tree.leaves()) out.insert(tree.name(e));
  return out;
}

}  // namespace dendrotensor
