#include "dendrotensor/dot.hpp"

#include <map>
#include <optional>
#include <sstream>
#include <vector>

namespace dendrotensor {

namespace {

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

// Vertex of edge g: where g starts, seen from the root. Leaves end in an
// open circle instead.
std::string top_node(const Forest& f, EdgeIndex g) {
  return (f.has_vertex(g) ? "v" : "l") + std::to_string(g);
}

std::string render(const Forest& f, const std::optional<std::vector<std::size_t>>& levels) {
  std::ostringstream os;
  os << "digraph forest {\n"
     << "  rankdir=BT;\n"
     << "  node [label=\"\"];\n"
     << "  edge [arrowhead=none];\n";
  for (EdgeIndex g = 0; g < f.edge_count(); ++g) {
    const std::string id = top_node(f, g);
    if (!f.has_vertex(g))
      os << "  " << id << " [shape=circle, width=0.15, fixedsize=true];\n";
    else if (f.inputs(g).empty())
      os << "  " << id << " [shape=square, style=filled, fillcolor=black, width=0.15, fixedsize=true];\n";
    else
      os << "  " << id << " [shape=circle, style=filled, fillcolor=black, width=0.08, fixedsize=true];\n";
    if (!f.parent(g)) os << "  o" << g << " [shape=none, width=0, height=0];\n";
  }
  for (EdgeIndex g = 0; g < f.edge_count(); ++g) {
    const auto parent = f.parent(g);
    const std::string bottom = parent ? "v" + std::to_string(*parent) : "o" + std::to_string(g);
    os << "  " << bottom << " -> " << top_node(f, g) << " [label=" << quote(f.name(g)) << "];\n";
  }
  if (levels) {
    std::map<std::size_t, std::vector<std::string>> by_level;
    for (EdgeIndex g = 0; g < f.edge_count(); ++g) by_level[(*levels)[g]].push_back(top_node(f, g));
    for (const auto& [level, nodes] : by_level) {
      const std::string tag = "level" + std::to_string(level);
      os << "  " << tag << " [shape=plaintext, label=" << quote("level " + std::to_string(level)) << "];\n";
      os << "  { rank=same; " << tag << ";";
      for (const auto& n : nodes) os << " " << n << ";";
      os << " }\n";
      std::string prev = tag;
      for (const auto& n : nodes) {
        os << "  " << prev << " -> " << n << " [style=dashed, constraint=false, color=gray];\n";
        prev = n;
      }
    }
  }
  os << "}\n";
  return os.str();
}

}  // namespace

std::string to_dot(const Forest& forest) { return render(forest, std::nullopt); }

std::string to_dot(const FinSimplex& a) {
  const Forest f = omega(a);
  std::vector<std::size_t> levels(f.edge_count(), 0);
  for (std::size_t i = 0; i <= a.length(); ++i)
    for (const auto& x : a.level(i)) levels[f.at(level_edge_name(i, x))] = i;
  return render(f, levels);
}

}  // namespace dendrotensor
