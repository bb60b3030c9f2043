#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "dendrotensor/checks/suites.hpp"
#include "dendrotensor/dot.hpp"
#include "dendrotensor/error.hpp"
#include "dendrotensor/fin_pointed.hpp"
#include "dendrotensor/free_algebra.hpp"
#include "dendrotensor/level_forest.hpp"
#include "dendrotensor/operad.hpp"
#include "dendrotensor/operad_map.hpp"
#include "dendrotensor/shuffle.hpp"
#include "dendrotensor/tree.hpp"

namespace py = pybind11;
using namespace dendrotensor;

namespace {

Forest forest_of(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return parse_forest(text);
  return Forest(parse_tree(text));
}

std::vector<Tree> trees_of(const std::vector<std::string>& texts) {
  std::vector<Tree> out;
  for (const auto& t : texts) out.push_back(parse_tree(t));
  return out;
}

std::string suite_json(const std::string& suite, std::uint64_t seed, std::optional<std::size_t> instances,
                       std::optional<std::size_t> max_edges, std::optional<std::size_t> max_levels,
                       std::optional<std::size_t> max_length, std::optional<std::size_t> truncation) {
  checks::SuiteConfig c;
  c.seed = seed;
  c.instances = instances;
  c.max_edges = max_edges;
  c.max_levels = max_levels;
  c.max_length = max_length;
  c.truncation = truncation;
  py::gil_scoped_release release;
  if (suite == "all") return checks::to_json(checks::run_all(c)).dump();
  return checks::run_suite(suite, c).to_json().dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Trees, level forests, shuffles and set-level operad checks";

  auto error = py::register_exception<Error>(m, "Error", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", error.ptr());
  py::register_exception<StructureError>(m, "StructureError", error.ptr());
  py::register_exception<DomainError>(m, "DomainError", error.ptr());

  m.def("normalize", [](const std::string& text) { return to_string(forest_of(text)); },
        "Parse a tree or forest and print it back in canonical form.");
  m.def("edge_count", [](const std::string& text) { return forest_of(text).edge_count(); });
  m.def("omega", [](const std::string& simplex_json) { return to_string(omega(parse_fin_simplex(simplex_json))); },
        "The level forest of a simplex given as JSON.");
  m.def("omega_dot", [](const std::string& simplex_json) { return to_dot(parse_fin_simplex(simplex_json)); });
  m.def("forest_dot", [](const std::string& text) { return to_dot(forest_of(text)); });
  m.def("hom_count", [](const std::string& source, const std::string& target) {
    return hom_count(forest_of(source), forest_of(target));
  });
  m.def("shuffles", [](const std::vector<std::string>& factors) {
    std::vector<std::string> out;
    for (const auto& a : shuffles(trees_of(factors))) out.push_back(to_string(a.tree));
    return out;
  });
  m.def("tensor_hom_count", [](const std::string& source, const std::vector<std::string>& factors) {
    return tensor_hom(forest_of(source), trees_of(factors)).size();
  });
  m.def("classify", [](const std::string& map) { return to_string(classify(parse_fin_map(map))); },
        "inert, active, both or neither, for a pointed map written m:n:v1,...");
  m.def("factorize", [](const std::string& map) {
    const auto f = factorize(parse_fin_map(map));
    return py::make_tuple(to_string(f.inert), to_string(f.active));
  });
  m.def(
      "free_algebra_count",
      [](const std::string& forest, const std::vector<std::size_t>& sizes, const std::string& color,
         std::optional<std::vector<std::string>> recolor) {
        const FreeForestOperad p(share(forest_of(forest)));
        auto named = [&](const std::string& name) -> Color {
          for (Color c = 0; c < p.color_count(); ++c)
            if (p.color_name(c) == name) return c;
          throw DomainError("unknown color " + name);
        };
        std::vector<Color> r;
        if (recolor) {
          for (const auto& name : *recolor) r.push_back(named(name));
        } else {
          for (Color c = 0; c < p.color_count(); ++c) r.push_back(c);
        }
        return free_algebra(p, r, sizes, named(color)).size();
      },
      py::arg("forest"), py::arg("sizes"), py::arg("color"), py::arg("recolor") = py::none());
  m.def("suite_names", &checks::suite_names);
  m.def("run_suite_json", &suite_json, py::arg("suite"), py::arg("seed") = 42, py::arg("instances") = py::none(),
        py::arg("max_edges") = py::none(), py::arg("max_levels") = py::none(), py::arg("max_length") = py::none(),
        py::arg("truncation") = py::none());
}
