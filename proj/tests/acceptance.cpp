#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "dendrotensor/checks/oracles.hpp"
#include "dendrotensor/checks/suites.hpp"
#include "dendrotensor/level_forest.hpp"
#include "dendrotensor/tree.hpp"

using namespace dendrotensor;
using checks::SuiteResult;

namespace {

// Wall-clock limits in seconds, one per criterion.
constexpr double kOmegaLimit = 1.0;
constexpr double kFunctorialityLimit = 30.0;
constexpr double kRetractLimit = 30.0;
constexpr double kSegalLimit = 60.0;
constexpr double kD3Limit = 30.0;
constexpr double kNerveLimit = 120.0;
constexpr double kFibrousLimit = 120.0;
constexpr double kShuffleLimit = 120.0;
constexpr double kFreeAlgebraLimit = 60.0;
constexpr double kFullSuiteLimit = 300.0;

constexpr std::uint64_t kSeed = 42;

const char* kFigure =
    R"({"levels":[["1","2","3","4"],["1","2","3"],["1"]],)"
    R"("maps":[{"1":"1","2":"1","3":"3","4":"3"},{"1":"1","2":"1","3":"*"}]})";
const char* kFigureForest = "{ℓ2:1[ℓ1:1[ℓ0:1,ℓ0:2],ℓ1:2[]];ℓ1:3[ℓ0:3,ℓ0:4]}";

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

int failures = 0;

void report(int number, const std::string& title, const Outcome& o, double seconds, double limit) {
  std::ostringstream line;
  line.setf(std::ios::fixed);
  line.precision(2);
  const bool ok = o.pass && seconds < limit;
  line << (ok ? "PASS" : "FAIL") << "  criterion " << number << ": " << title << " (" << seconds << " s, limit "
       << limit << " s)";
  if (!o.pass) line << " -- " << o.detail;
  if (seconds >= limit) line << " -- over time";
  std::cout << line.str() << std::endl;
  if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

struct Timed {
  SuiteResult result;
  double seconds = 0;
};

Timed run(const std::string& suite) {
  checks::SuiteConfig config;
  config.seed = kSeed;
  const auto start = std::chrono::steady_clock::now();
  Timed t{checks::run_suite(suite, config), 0};
  t.seconds = seconds_since(start);
  return t;
}

std::size_t count_check(const SuiteResult& r, const std::string& check) {
  std::size_t n = 0;
  for (const auto& rep : r.reports) n += rep.check() == check;
  return n;
}

void require_clean(Outcome& o, const SuiteResult& r) {
  o.require(r.failures() == 0, r.suite + " has " + std::to_string(r.failures()) + " failing instances");
  for (const auto& rep : r.reports)
    if (!rep.passed()) {
      o.require(false, rep.to_json().dump().substr(0, 400));
      break;
    }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance <path to dendrotensor>\n";
    return 2;
  }
  const std::string cli = argv[1];

  {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    const Forest f = omega(parse_fin_simplex(kFigure));
    const double s = seconds_since(start);
    o.require(to_string(f) == kFigureForest, "forest is " + to_string(f));
    o.require(f.component_count() == 2, "component count");
    o.require(f.edge_count() == 8, "edge count");
    std::size_t stumps = 0;
    for (const auto& t : f.components()) stumps += t.stumps().size();
    o.require(stumps == 1, "stump count");
    // The figure: a binary vertex over a binary vertex and a stump, next to a
    // binary corolla.
    o.require(checks::shape_key(f) == checks::shape_key(parse_forest("{x[y[l,m],s[]];z[p,q]}")), "component shapes");
    report(1, "omega reproduces the worked example", o, s, kOmegaLimit);
  }

  std::vector<Timed> runs;

  {
    auto t = run("functoriality");
    Outcome o;
    require_clean(o, t.result);
    o.require(t.result.reports.size() == 200, "200 instances");
    o.require(t.result.params.max_levels == 5 && t.result.params.max_length == 4, "levels <= 5, length <= 4");
    report(2, "omega respects identities and composition on 200 pairs", o, t.seconds, kFunctorialityLimit);
    runs.push_back(std::move(t));
  }
  {
    auto t = run("retract");
    Outcome o;
    require_clean(o, t.result);
    o.require(t.result.reports.size() == 100, "100 instances");
    o.require(t.result.params.max_edges == 10, "forests with <= 10 edges");
    report(3, "every forest is a retract of a level forest (100 forests)", o, t.seconds, kRetractLimit);
    runs.push_back(std::move(t));
  }
  {
    auto t = run("segal");
    Outcome o;
    require_clean(o, t.result);
    o.require(t.result.reports.size() == 100, "100 instances");
    o.require(t.result.params.max_edges == 7, "trees with <= 7 edges");
    o.require(t.result.notes.value("stump_cuts", 0) > 0, "a stump-cut instance");
    report(4, "Hom(o(T),P) is the fiber product over an inner edge (100 cases)", o, t.seconds, kSegalLimit);
    runs.push_back(std::move(t));
  }
  {
    auto t = run("d3");
    Outcome o;
    require_clean(o, t.result);
    o.require(t.result.reports.size() == 50, "50 instances");
    bool empty_seen = false;
    for (const auto& rep : t.result.reports)
      if (rep.stats().value("forest", "") == "{}") empty_seen = rep.stats().value("maps", 0) == 1;
    o.require(empty_seen, "the empty forest gives a singleton");
    report(5, "Hom(o(F),P) is the product over components (50 cases)", o, t.seconds, kD3Limit);
    runs.push_back(std::move(t));
  }
  {
    auto t = run("nerve");
    Outcome o;
    require_clean(o, t.result);
    o.require(t.result.reports.size() == 100, "100 instances");
    o.require(t.result.params.max_edges == 8 && t.result.params.max_length == 3 && t.result.params.max_levels == 4,
              "P = o(F) with <= 8 edges, n <= 3, levels <= 4");
    report(6, "chains over A correspond to maps o(omega(A)) -> P, naturally (100 cases)", o, t.seconds,
           kNerveLimit);
    runs.push_back(std::move(t));
  }
  {
    auto t = run("fibrous");
    Outcome o;
    require_clean(o, t.result);
    o.require(count_check(t.result, "fibrous") == 25, "25 random forests");
    o.require(count_check(t.result, "fibrous-defect") == 5, "5 defect fixtures");
    o.require(t.result.params.truncation == 4, "truncation 4");
    o.require(t.result.notes.value("verified", "") == "up to ⟨4⟩", "verified up to <4>");
    report(7, "l(o(F)) satisfies Fib1-Fib3 up to <4>; all 5 defects detected", o, t.seconds, kFibrousLimit);
    runs.push_back(std::move(t));
  }
  {
    Outcome o;
    double seconds = 0;
    for (const char* suite : {"shuffles", "assoc", "interior"}) {
      auto t = run(suite);
      require_clean(o, t.result);
      seconds += t.seconds;
      if (t.result.suite == "shuffles") {
        o.require(count_check(t.result, "shuffles") == 100, "100 shuffle instances");
        o.require(count_check(t.result, "shuffles-linear") == 45, "linear counts for m + n <= 8");
        o.require(t.result.params.max_edges == 5, "factors with <= 5 edges");
      } else {
        o.require(t.result.reports.size() == 100, std::string("100 ") + suite + " instances");
      }
      runs.push_back(std::move(t));
    }
    report(8, "shuffle laws, inner-face intersections, stump and interior bijections, K in J, linear counts", o,
           seconds, kShuffleLimit);
  }
  {
    auto t = run("freealg");
    Outcome o;
    require_clean(o, t.result);
    o.require(t.result.reports.size() == 100, "100 instances");
    report(9, "free algebra agrees with the orbit oracle (100 cases, all colors)", o, t.seconds,
           kFreeAlgebraLimit);
    runs.push_back(std::move(t));
  }
  {
    Outcome o;
    const std::string first = "acceptance_all_1.json", second = "acceptance_all_2.json";
    const std::string command = "\"" + cli + "\" check all --seed " + std::to_string(kSeed) + " --out ";
    auto start = std::chrono::steady_clock::now();
    const int code1 = std::system((command + first + " 2>/dev/null").c_str());
    const double s1 = seconds_since(start);
    start = std::chrono::steady_clock::now();
    const int code2 = std::system((command + second + " 2>/dev/null").c_str());
    const double s2 = seconds_since(start);
    o.require(code1 == 0 && code2 == 0, "check all reported failures");
    const std::string a = read_file(first), b = read_file(second);
    o.require(!a.empty() && a == b, "reports differ");
    std::vector<SuiteResult> in_process;
    for (auto& t : runs) in_process.push_back(t.result);
    o.require(a == checks::to_json(in_process).dump(2) + "\n", "CLI report differs from the in-process runs");
    std::cout << "      full suite: " << s1 << " s and " << s2 << " s" << std::endl;
    report(10, "check all --seed 42 is byte-identical across runs", o, std::max(s1, s2), kFullSuiteLimit);
  }

  std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criteria fail") << std::endl;
  return failures == 0 ? 0 : 1;
}
