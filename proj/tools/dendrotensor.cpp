#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dendrotensor/checks/suites.hpp"
#include "dendrotensor/dot.hpp"
#include "dendrotensor/ell.hpp"
#include "dendrotensor/error.hpp"
#include "dendrotensor/free_algebra.hpp"
#include "dendrotensor/level_forest.hpp"
#include "dendrotensor/operad.hpp"
#include "dendrotensor/report.hpp"
#include "dendrotensor/shuffle.hpp"
#include "dendrotensor/tree.hpp"

using namespace dendrotensor;

namespace {

constexpr int kPass = 0;
constexpr int kCheckFailure = 1;
constexpr int kUsage = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Output {
  std::string format = "json";
  std::string path;

  void write(const std::string& text) const {
    if (path.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot write " + path);
    out << text;
  }
  void require(std::initializer_list<const char*> allowed, const std::string& command) const {
    for (const char* f : allowed)
      if (format == f) return;
    throw UsageError("--format " + format + " is not available for " + command);
  }
};

void add_output(CLI::App* app, Output& out, const std::string& default_format) {
  out.format = default_format;
  app->add_option("--format", out.format, "Output format")->check(CLI::IsMember({"json", "dot", "text"}));
  app->add_option("--out", out.path, "Write the output to this file");
}

std::string slurp_if_file(const std::string& arg) {
  if (arg == "-") return std::string(std::istreambuf_iterator<char>(std::cin), {});
  std::ifstream in(arg, std::ios::binary);
  if (!in) return arg;
  return std::string(std::istreambuf_iterator<char>(in), {});
}

Forest forest_arg(const std::string& text) {
  const std::string t = slurp_if_file(text);
  const auto first = t.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && t[first] == '{') return parse_forest(t);
  return Forest(parse_tree(t));
}

std::vector<Tree> trees_arg(const std::vector<std::string>& texts) {
  std::vector<Tree> out;
  for (const auto& t : texts) out.push_back(parse_tree(slurp_if_file(t)));
  return out;
}

Json named_json(const NamedMap& m) {
  Json edges = Json::object();
  for (const auto& [k, v] : m.edge_map) edges[k] = v;
  Json vertices = Json::object();
  for (const auto& [k, v] : m.vertex_map) vertices[k] = Json{{"output", v.first}, {"inputs", v.second}};
  return Json{{"edges", edges}, {"vertices", vertices}};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

int cmd_omega(const std::string& input, const Output& out) {
  out.require({"json", "dot", "text"}, "omega");
  const FinSimplex a = parse_fin_simplex(slurp_if_file(input));
  const Forest f = omega(a);
  if (out.format == "dot") {
    out.write(to_dot(a));
  } else if (out.format == "text") {
    out.write(to_string(f) + "\n");
  } else {
    std::size_t stumps = 0;
    for (const auto& t : f.components()) stumps += t.stumps().size();
    out.write(dump(Json{{"forest", to_string(f)},
                        {"components", f.component_count()},
                        {"edges", f.edge_count()},
                        {"stumps", stumps}}));
  }
  return kPass;
}

int cmd_hom(const std::string& source, const std::string& target, const Output& out) {
  out.require({"json", "text"}, "hom");
  const auto s = share(forest_arg(source));
  const auto t = share(forest_arg(target));
  const auto maps = hom(s, t);
  if (out.format == "text") {
    std::ostringstream os;
    os << "count " << maps.size() << "\n";
    for (const auto& m : maps) os << named_json(named(m)).dump() << "\n";
    out.write(os.str());
    return kPass;
  }
  Json list = Json::array();
  for (const auto& m : maps) list.push_back(named_json(named(m)));
  out.write(dump(Json{{"source", to_string(*s)}, {"target", to_string(*t)}, {"count", maps.size()}, {"maps", list}}));
  return kPass;
}

int cmd_shuffles(const std::vector<std::string>& factors_text, const Output& out) {
  const auto factors = trees_arg(factors_text);
  const auto family = shuffles(factors);
  if (out.format == "dot") {
    std::string text;
    for (const auto& a : family) text += to_dot(Forest(a.tree));
    out.write(text);
    return kPass;
  }
  if (out.format == "text") {
    std::ostringstream os;
    os << "count " << family.size() << "\n";
    for (const auto& a : family) os << to_string(a.tree) << "\n";
    out.write(os.str());
    return kPass;
  }
  Json names = Json::array(), list = Json::array();
  for (const auto& t : factors) names.push_back(to_string(t));
  for (const auto& a : family) list.push_back(to_string(a.tree));
  out.write(dump(Json{{"factors", names}, {"count", family.size()}, {"shuffles", list}}));
  return kPass;
}

int cmd_tensor_hom(const std::string& source, const std::vector<std::string>& factors_text, const Output& out) {
  out.require({"json", "text"}, "tensor-hom");
  const Forest s = forest_arg(source);
  const auto factors = trees_arg(factors_text);
  const auto maps = tensor_hom(s, factors);
  if (out.format == "text") {
    std::ostringstream os;
    os << "count " << maps.size() << "\n";
    for (const auto& m : maps) os << named_json(m).dump() << "\n";
    out.write(os.str());
    return kPass;
  }
  Json fs = Json::array(), list = Json::array();
  for (const auto& t : factors) fs.push_back(to_string(t));
  for (const auto& m : maps) list.push_back(named_json(m));
  out.write(dump(Json{{"source", to_string(s)}, {"factors", fs}, {"count", maps.size()}, {"maps", list}}));
  return kPass;
}

struct FreeAlgebraArgs {
  std::string operad;
  std::vector<std::string> recolor;
  std::vector<std::size_t> sizes;
  std::vector<std::string> colors;
};

std::unique_ptr<FiniteOperad> operad_arg(const std::string& arg) {
  const std::string text = slurp_if_file(arg);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) throw UsageError("empty operad");
  if (text[first] == '{' && text.find('"') != std::string::npos)
    return std::make_unique<TableOperad>(TableOperad::parse(text));
  return std::make_unique<FreeForestOperad>(share(forest_arg(text)));
}

Color color_named(const FiniteOperad& p, const std::string& name) {
  for (Color c = 0; c < p.color_count(); ++c)
    if (p.color_name(c) == name) return c;
  throw UsageError("unknown color '" + name + "'");
}

int cmd_free_algebra(const FreeAlgebraArgs& args, const Output& out) {
  out.require({"json", "text"}, "free-algebra");
  const auto p = operad_arg(args.operad);
  std::vector<Color> r;
  if (args.recolor.empty()) {
    for (Color c = 0; c < p->color_count(); ++c) r.push_back(c);
  } else {
    for (const auto& name : args.recolor) r.push_back(color_named(*p, name));
  }
  if (args.sizes.size() != r.size())
    throw UsageError("--sizes needs one entry per index (" + std::to_string(r.size()) + ")");
  std::vector<Color> targets;
  if (args.colors.empty()) {
    for (Color c = 0; c < p->color_count(); ++c) targets.push_back(c);
  } else {
    for (const auto& name : args.colors) targets.push_back(color_named(*p, name));
  }
  Json result = Json::array();
  std::ostringstream text;
  text << "indices";
  for (Color c : r) text << " " << p->color_name(c);
  text << "\n";
  for (Color d : targets) {
    const auto elements = free_algebra(*p, r, args.sizes, d);
    Json list = Json::array();
    text << p->color_name(d) << " " << elements.size() << "\n";
    for (const auto& e : elements) {
      list.push_back(Json{{"gamma", e.gamma}, {"x", e.x}, {"operation", p->describe(e.op)}});
      text << "  " << Json(e.gamma).dump() << " " << Json(e.x).dump() << " " << p->describe(e.op) << "\n";
    }
    result.push_back(Json{{"color", p->color_name(d)}, {"count", elements.size()}, {"elements", list}});
  }
  Json recolor = Json::array();
  for (Color c : r) recolor.push_back(p->color_name(c));
  if (out.format == "text")
    out.write(text.str());
  else
    out.write(dump(Json{{"recolor", recolor}, {"sizes", args.sizes}, {"colors", result}}));
  return kPass;
}

struct CheckArgs {
  std::string suite;
  std::uint64_t seed = 42;
  std::optional<std::size_t> instances, max_edges, max_levels, max_length, truncation;
  std::string defect;
};

std::string summary_line(const checks::SuiteResult& r) {
  std::ostringstream os;
  os << r.suite << ": " << (r.passed() ? "pass" : "FAIL") << " (" << r.reports.size() << " instances, "
     << r.failures() << " failures)";
  if (!r.notes.empty()) os << " " << r.notes.dump();
  return os.str();
}

int cmd_defect(const CheckArgs& args, const Output& out) {
  out.require({"json", "text"}, "check --defect");
  EllDefect chosen{};
  bool found = false;
  for (auto d : all_defects())
    if (to_string(d) == args.defect) {
      chosen = d;
      found = true;
    }
  if (!found) throw UsageError("unknown defect '" + args.defect + "'");
  const FreeForestOperad p(share(parse_forest("{r[a[x,y],b[]];s[t]}")));
  const Report r = check_fibrous(*make_defective(p, chosen), args.truncation.value_or(3), args.defect);
  if (out.format == "text")
    out.write(std::string("fibrous[") + args.defect + "]: " + (r.passed() ? "pass" : "FAIL") + " (" +
              std::to_string(r.violations()) + " violations)\n");
  else
    out.write(dump(r.to_json()));
  return r.passed() ? kPass : kCheckFailure;
}

int cmd_check(const CheckArgs& args, const Output& out) {
  out.require({"json", "text"}, "check");
  if (!args.defect.empty()) {
    if (args.suite != "fibrous") throw UsageError("--defect applies to the fibrous suite only");
    return cmd_defect(args, out);
  }
  checks::SuiteConfig config;
  config.seed = args.seed;
  config.instances = args.instances;
  config.max_edges = args.max_edges;
  config.max_levels = args.max_levels;
  config.max_length = args.max_length;
  config.truncation = args.truncation;
  std::vector<std::string> names;
  if (args.suite == "all")
    names = checks::suite_names();
  else
    names = {args.suite};
  for (const auto& n : names) checks::resolve(n, config);

  std::vector<checks::SuiteResult> results;
  for (const auto& n : names) {
    const auto start = std::chrono::steady_clock::now();
    results.push_back(checks::run_suite(n, config));
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cerr << summary_line(results.back()) << " in " << std::fixed << std::setprecision(2) << seconds << " s\n";
  }
  bool passed = true;
  for (const auto& r : results) passed = passed && r.passed();
  if (out.format == "text") {
    std::string text;
    for (const auto& r : results) text += summary_line(r) + "\n";
    out.write(text);
  } else if (args.suite == "all") {
    out.write(dump(checks::to_json(results)));
  } else {
    out.write(dump(results.front().to_json()));
  }
  return passed ? kPass : kCheckFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dendroidal and operadic combinatorics: level forests, shuffles and set-level checks"};
  app.require_subcommand(1);

  std::string omega_input;
  Output omega_out;
  auto* omega_cmd = app.add_subcommand("omega", "The level forest of a simplex of pointed sets");
  omega_cmd->add_option("input", omega_input, "Simplex JSON, a file holding it, or - for stdin")->required();
  add_output(omega_cmd, omega_out, "text");

  std::string hom_source, hom_target;
  Output hom_out;
  auto* hom_cmd = app.add_subcommand("hom", "Operad maps o(S) -> o(T) between forests");
  hom_cmd->add_option("source", hom_source, "Source forest or tree")->required();
  hom_cmd->add_option("target", hom_target, "Target forest or tree")->required();
  add_output(hom_cmd, hom_out, "json");

  std::vector<std::string> shuffle_factors;
  Output shuffles_out;
  auto* shuffles_cmd = app.add_subcommand("shuffles", "Shuffles of trees");
  shuffles_cmd->add_option("factors", shuffle_factors, "Factor trees")->required();
  add_output(shuffles_cmd, shuffles_out, "json");

  std::string tensor_source;
  std::vector<std::string> tensor_factors;
  Output tensor_out;
  auto* tensor_cmd = app.add_subcommand("tensor-hom", "Maps from o(F) into the tensor product of trees");
  tensor_cmd->add_option("source", tensor_source, "Source forest or tree")->required();
  tensor_cmd->add_option("factors", tensor_factors, "Factor trees")->required();
  add_output(tensor_cmd, tensor_out, "json");

  FreeAlgebraArgs fa;
  Output fa_out;
  auto* fa_cmd = app.add_subcommand("free-algebra", "Free algebra on a recolored family of sets");
  fa_cmd->add_option("operad", fa.operad, "A forest (free operad) or a table operad JSON file")->required();
  fa_cmd->add_option("--sizes", fa.sizes, "Size of each X_i")->delimiter(',')->required();
  fa_cmd->add_option("--recolor", fa.recolor, "Color of each index i (default: one index per color)")
      ->delimiter(',');
  fa_cmd->add_option("--color", fa.colors, "Colors to evaluate at (default: all)")->delimiter(',');
  add_output(fa_cmd, fa_out, "json");

  CheckArgs ca;
  Output check_out;
  auto* check_cmd = app.add_subcommand("check", "Seeded property suites");
  std::vector<std::string> suite_choices = checks::suite_names();
  suite_choices.push_back("all");
  check_cmd->add_option("suite", ca.suite, "Suite to run")->required()->check(CLI::IsMember(suite_choices));
  check_cmd->add_option("--seed", ca.seed, "Random seed");
  check_cmd->add_option("--instances", ca.instances, "Instances per suite");
  check_cmd->add_option("--max-edges", ca.max_edges, "Largest random tree or forest");
  check_cmd->add_option("--max-levels", ca.max_levels, "Largest level of a random simplex");
  check_cmd->add_option("--max-length", ca.max_length, "Longest random simplex");
  check_cmd->add_option("--truncation", ca.truncation, "Check fibrous axioms over <0>, ..., <N>");
  std::vector<std::string> defect_names;
  for (auto d : all_defects()) defect_names.push_back(to_string(d));
  check_cmd->add_option("--defect", ca.defect, "Run the fibrous check on a defective fixture instead")
      ->check(CLI::IsMember(defect_names));
  add_output(check_cmd, check_out, "json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (*omega_cmd) return cmd_omega(omega_input, omega_out);
    if (*hom_cmd) return cmd_hom(hom_source, hom_target, hom_out);
    if (*shuffles_cmd) return cmd_shuffles(shuffle_factors, shuffles_out);
    if (*tensor_cmd) return cmd_tensor_hom(tensor_source, tensor_factors, tensor_out);
    if (*fa_cmd) return cmd_free_algebra(fa, fa_out);
    if (*check_cmd) return cmd_check(ca, check_out);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
