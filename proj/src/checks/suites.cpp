#include "dendrotensor/checks/suites.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "dendrotensor/checks/oracles.hpp"
#include "dendrotensor/checks/random.hpp"
#include "dendrotensor/ell.hpp"
#include "dendrotensor/error.hpp"
#include "dendrotensor/free_algebra.hpp"
#include "dendrotensor/level_forest.hpp"
#include "dendrotensor/operad.hpp"
#include "dendrotensor/segal.hpp"
#include "dendrotensor/shuffle.hpp"

namespace dendrotensor::checks {

namespace {

// The forest every defect fixture is built on, and its truncation.
constexpr const char* kDefectForest = "{r[a[x,y],b[]];s[t]}";
constexpr std::size_t kDefectTruncation = 3;
// Three-factor shuffle families grow fast; their factors stay this small.
constexpr std::size_t kThreeFactorEdges = 4;
constexpr std::size_t kLinearBudget = 8;

struct Defaults {
  std::size_t instances, max_edges, max_levels, max_length, truncation;
};

const std::map<std::string, Defaults>& defaults() {
  static const std::map<std::string, Defaults> table{
      {"functoriality", {200, 1, 5, 4, 1}},
      {"retract", {100, 10, 1, 1, 1}},
      {"segal", {100, 7, 1, 1, 1}},
      {"d3", {50, 7, 1, 1, 1}},
      {"nerve", {100, 8, 4, 3, 1}},
      {"fibrous", {25, 5, 1, 1, 4}},
      {"shuffles", {100, 5, 1, 1, 1}},
      {"assoc", {100, 4, 1, 1, 1}},
      {"interior", {100, 5, 1, 1, 1}},
      {"freealg", {100, 5, 1, 1, 1}},
  };
  return table;
}

std::string instance_name(std::size_t i) {
  std::string s = std::to_string(i);
  return std::string(s.size() < 3 ? 3 - s.size() : 0, '0') + s;
}

TreeShape shape_of(const SuiteParams& p, std::size_t max_edges) {
  TreeShape s;
  s.max_edges = max_edges;
  s.stump_probability = p.stump_probability;
  return s;
}

Json witness(const std::string& reason) { return Json{{"reason", reason}}; }

template <class Body>
void guarded(Report& r, Body&& body) {
  try {
    body();
  } catch (const Error& e) {
    r.fail(Json{{"reason", "exception"}, {"what", e.what()}});
  }
}

std::vector<Tree> random_factors(Rng& rng, const SuiteParams& p) {
  const std::size_t n = 2 + rng.below(2);
  const std::size_t bound = n == 3 ? std::min(p.max_edges, kThreeFactorEdges) : p.max_edges;
  std::vector<Tree> factors;
  for (std::size_t i = 0; i < n; ++i)
    factors.push_back(random_tree(rng, shape_of(p, bound), std::string(1, static_cast<char>('a' + i))));
  return factors;
}

Json factors_json(const std::vector<Tree>& factors) {
  Json j = Json::array();
  for (const auto& t : factors) j.push_back(to_string(t));
  return j;
}

Report functoriality_instance(Rng& rng, const SuiteParams& p, const std::string& id) {
  Report r("functoriality", id);
  const auto a = random_simplex(rng, p.max_levels, p.max_length);
  const auto phi = random_operator(rng, a.length(), p.max_length);
  const auto psi = random_operator(rng, phi.source(), p.max_length);
  r.note("simplex", Json::parse(to_json(a)));
  r.note("phi", phi.values);
  r.note("psi", psi.values);
  guarded(r, [&] {
    const auto omega_a = share(omega(a));
    if (!(omega(SimplicialOperator::identity(a.length()), a) == identity_map(omega_a)))
      r.fail(witness("omega(id) is not the identity"));
    const auto f = omega(phi, a);
    const auto g = omega(psi, restrict(a, phi));
    for (const auto* m : {&f, &g})
      if (!validate(*m).empty()) r.fail(witness("omega(phi) is not an operad map"));
    if (!(*f.target == *omega_a)) r.fail(witness("omega(phi) has the wrong target"));
    if (!(compose(g, f) == omega(compose(phi, psi), a)))
      r.fail(witness("omega(phi psi) differs from omega(phi) omega(psi)"));
  });
  return r;
}

Report retract_instance(Rng& rng, const SuiteParams& p, const std::string& id) {
  Report r("retract", id);
  const auto forest = random_forest(rng, shape_of(p, p.max_edges));
  r.note("forest", to_string(forest));
  guarded(r, [&] {
    const auto w = retract_witness(forest);
    if (!(*w.section.source == forest)) r.fail(witness("section does not start at the forest"));
    if (!validate(w.section).empty()) r.fail(witness("section is not an operad map"));
    if (!validate(w.retraction).empty()) r.fail(witness("retraction is not an operad map"));
    if (!(compose(w.section, w.retraction) == identity_map(w.section.source)))
      r.fail(witness("r s is not the identity"));
    const Forest omega_a = omega(w.simplex);
    if (!(*w.section.target == omega_a) || !(*w.retraction.source == omega_a))
      r.fail(witness("section and retraction do not pass through omega(A)"));
    if (shape_key(omega_a) != shape_key(w.padded))
      r.fail(Json{{"reason", "omega(A) is not isomorphic to the padded forest"},
                  {"omega", to_string(omega_a)},
                  {"padded", to_string(w.padded)}});
    r.note("padded", to_string(w.padded));
  });
  return r;
}

Tree renamed(const Tree& t, const std::string& prefix) {
  std::vector<VertexSpec> specs = t.vertex_specs();
  for (auto& v : specs) {
    v.out = prefix + v.out;
    for (auto& e : v.in) e = prefix + e;
  }
  return Tree::make(prefix + t.name(t.root()), std::move(specs));
}

// A target forest that receives maps: renamed copies of the given trees
// next to one random tree.
ForestPtr target_for(Rng& rng, const SuiteParams& p, const std::vector<Tree>& sources) {
  std::vector<Tree> parts;
  for (std::size_t i = 0; i < sources.size(); ++i) parts.push_back(renamed(sources[i], "g" + std::to_string(i)));
  parts.push_back(random_tree(rng, shape_of(p, p.max_edges), "h"));
  return share(Forest(std::move(parts)));
}

bool has_inner_stump(const Tree& t) {
  for (auto e : t.stumps())
    if (e != t.root()) return true;
  return false;
}

Report segal_instance(Rng& rng, const SuiteParams& p, std::size_t index, const std::string& id,
                      std::size_t& stump_cuts) {
  const auto shape = shape_of(p, std::max<std::size_t>(p.max_edges, 3));
  const bool want_stump = index % 4 == 0;
  Tree tree = random_tree_with_inner_edge(rng, shape);
  while (want_stump && !has_inner_stump(tree)) tree = random_tree_with_inner_edge(rng, shape);
  std::vector<EdgeIndex> candidates = tree.inner_edges();
  if (want_stump)
    std::erase_if(candidates, [&](EdgeIndex e) { return !tree.is_stump(e); });
  const EdgeIndex b = candidates[rng.below(candidates.size())];
  const bool stump = tree.is_stump(b);
  if (stump) ++stump_cuts;
  const auto target = target_for(rng, p, {tree});
  const FreeForestOperad op(target);
  Report r("segal", id);
  guarded(r, [&] { r = segal_d1_check(op, tree, tree.name(b), id); });
  r.note("tree", to_string(tree));
  r.note("edge", tree.name(b));
  r.note("stump_cut", stump);
  r.note("operad", to_string(*target));
  return r;
}

Report d3_instance(Rng& rng, const SuiteParams& p, std::size_t index, const std::string& id) {
  const Forest forest = index == 0 ? Forest() : random_forest(rng, shape_of(p, p.max_edges));
  const auto target = target_for(rng, p, forest.components());
  const FreeForestOperad op(target);
  Report r("d3", id);
  guarded(r, [&] { r = d3_check(op, forest, id); });
  r.note("forest", to_string(forest));
  r.note("operad", to_string(*target));
  return r;
}

Report nerve_instance(Rng& rng, const SuiteParams& p, const std::string& id) {
  const auto target = share(random_forest(rng, shape_of(p, p.max_edges)));
  const FreeForestOperad op(target);
  const auto a = random_simplex(rng, p.max_levels, p.max_length);
  const auto phi = random_operator(rng, a.length(), p.max_length);
  Report r("nerve", id);
  guarded(r, [&] {
    r = check_chain_bijection(op, a, id);
    r.absorb(check_naturality(op, a, phi, id));
  });
  r.note("operad", to_string(*target));
  r.note("simplex", Json::parse(to_json(a)));
  r.note("phi", phi.values);
  return r;
}

Forest fibrous_forest(Rng& rng, const SuiteParams& p) {
  while (true) {
    Forest f = random_forest(rng, shape_of(p, p.max_edges));
    std::size_t stumps = 0;
    for (const auto& t : f.components()) stumps += t.stumps().size();
    if (stumps <= 1) return f;
  }
}

Report fibrous_instance(Rng& rng, const SuiteParams& p, const std::string& id) {
  const auto forest = share(fibrous_forest(rng, p));
  const FreeForestOperad op(forest);
  Report r("fibrous", id);
  guarded(r, [&] { r = check_fibrous(EllCategory(op), p.truncation, id); });
  r.note("operad", to_string(*forest));
  return r;
}

Report defect_instance(EllDefect d, const SuiteParams& p) {
  const FreeForestOperad op(share(parse_forest(kDefectForest)));
  const std::size_t n = std::min(p.truncation, kDefectTruncation);
  Report r("fibrous-defect", to_string(d));
  r.note("operad", kDefectForest);
  r.note("truncation", n);
  const auto inner = check_fibrous(*make_defective(op, d), n, to_string(d));
  if (inner.passed())
    r.fail(witness("the defect was not detected"));
  else
    r.note("detected_by", inner.witnesses().front());
  return r;
}

// The root tuple, the maximal-edge product, and inner-face inclusion into
// every member of the family.
void check_intersection(Report& r, const std::vector<Tree>& factors, const std::vector<const Shuffle*>& family,
                        const std::string& label) {
  try {
    const Shuffle meet = intersect(family);
    TupleEdge roots;
    for (const auto& t : factors) roots.push_back(t.root());
    if (meet.coords[meet.tree.root()] != roots)
      r.fail(Json{{"reason", "intersection breaks the root law"}, {"family", label}});
    if (max_edge_names(meet.tree) != expected_max_edges(factors))
      r.fail(Json{{"reason", "intersection breaks the maximal-edge law"}, {"family", label}});
    for (const auto* a : family) {
      const auto problems = check_inner_face_inclusion(name_inclusion(meet.tree, a->tree));
      if (!problems.empty())
        r.fail(Json{{"reason", "intersection is not an inner face"},
                    {"family", label},
                    {"shuffle", to_string(a->tree)},
                    {"problems", problems}});
    }
  } catch (const Error& e) {
    r.fail(Json{{"reason", "intersection failed"}, {"family", label}, {"what", e.what()}});
  }
}

Report shuffles_instance(Rng& rng, const SuiteParams& p, const std::string& id) {
  const auto factors = random_factors(rng, p);
  Report r("shuffles", id);
  r.note("factors", factors_json(factors));
  guarded(r, [&] {
    const auto family = shuffles(factors);
    r.note("shuffles", family.size());
    std::set<std::string> seen;
    for (const auto& a : family) {
      const auto problems = check_shuffle(factors, a);
      if (!problems.empty())
        r.fail(Json{{"reason", "not a shuffle"}, {"shuffle", to_string(a.tree)}, {"problems", problems}});
      if (!seen.insert(to_string(a.tree)).second)
        r.fail(Json{{"reason", "duplicate shuffle"}, {"shuffle", to_string(a.tree)}});
    }
    if (family.empty()) {
      r.fail(witness("no shuffles"));
      return;
    }
    std::vector<const Shuffle*> all;
    for (const auto& a : family) all.push_back(&a);
    check_intersection(r, factors, all, "all");
    for (std::size_t k = 0; k < 6 && family.size() > 1; ++k) {
      const std::size_t size = 2 + rng.below(2);
      std::vector<std::size_t> picks;
      std::vector<const Shuffle*> sub;
      for (std::size_t t = 0; t < size; ++t) {
        picks.push_back(rng.below(family.size()));
        sub.push_back(&family[picks.back()]);
      }
      Json label = picks;
      check_intersection(r, factors, sub, label.dump());
    }
    std::vector<std::size_t> with_leaves;
    for (std::size_t i = 0; i < factors.size(); ++i)
      if (!factors[i].leaves().empty()) with_leaves.push_back(i);
    if (!with_leaves.empty()) {
      const std::size_t i = with_leaves[rng.below(with_leaves.size())];
      const auto leaves = factors[i].leaves();
      const std::string leaf = factors[i].name(leaves[rng.below(leaves.size())]);
      const auto pairing = stump_transport(factors, i, leaf);
      r.note("stump_transport", Json{{"factor", i}, {"leaf", leaf}, {"pairs", pairing.source.size()}});
      if (!pairing.is_bijection()) r.fail(Json{{"reason", "stump transport is not a bijection"}, {"factor", i}, {"leaf", leaf}});
    }
  });
  return r;
}

Report linear_instance(std::size_t m, std::size_t n) {
  Report r("shuffles-linear", std::to_string(m) + "x" + std::to_string(n));
  guarded(r, [&] {
    const std::size_t got = shuffles({linear_tree(m, "a"), linear_tree(n, "b")}).size();
    const std::size_t expected = lattice_paths({m, n});
    r.note("count", got);
    if (got != expected) r.fail(Json{{"reason", "count differs from lattice paths"}, {"expected", expected}});
  });
  return r;
}

Report assoc_instance(Rng& rng, const SuiteParams& p, const std::string& id) {
  std::vector<Tree> factors;
  for (char c : {'a', 'b', 'c'}) factors.push_back(random_tree(rng, shape_of(p, p.max_edges), std::string(1, c)));
  Report r("assoc", id);
  r.note("factors", factors_json(factors));
  guarded(r, [&] {
    for (const char* text : {"((0,1),2)", "(0,(1,2))"}) {
      const auto inc = assoc_inclusion(factors, parse_bracketing(text));
      r.note(text, Json{{"k", inc.k.size()}, {"j", inc.j.size()}});
      if (!inc.is_inclusion()) {
        Json missing = Json::array();
        for (std::size_t i = 0; i < inc.k.size(); ++i)
          if (!inc.injection[i]) missing.push_back(inc.k[i]);
        r.fail(Json{{"reason", "K is not contained in J"}, {"bracketing", text}, {"missing", missing}});
      }
    }
  });
  return r;
}

Report interior_instance(Rng& rng, const SuiteParams& p, const std::string& id) {
  const auto factors = random_factors(rng, p);
  Report r("interior", id);
  r.note("factors", factors_json(factors));
  guarded(r, [&] {
    const auto d = interior_decomposition(factors);
    r.note("stumped", d.stumped.size());
    r.note("pairs", d.pairing.source.size());
    if (!d.pairing.is_bijection()) r.fail(witness("interior decomposition is not a bijection"));
  });
  return r;
}

Report freealg_instance(Rng& rng, const SuiteParams& p, const std::string& id) {
  const auto forest = share(random_forest(rng, shape_of(p, p.max_edges), false));
  const FreeForestOperad op(forest);
  std::vector<Color> r_map;
  for (Color c = 0; c < op.color_count(); ++c) r_map.push_back(c);
  for (std::size_t extra = rng.below(3); extra > 0; --extra) r_map.push_back(rng.below(op.color_count()));
  for (std::size_t i = r_map.size(); i > 1; --i) std::swap(r_map[i - 1], r_map[rng.below(i)]);
  std::vector<std::size_t> sizes;
  for (std::size_t i = 0; i < r_map.size(); ++i) sizes.push_back(rng.below(4));
  Report r("freealg", id);
  r.note("operad", to_string(*forest));
  r.note("r", r_map);
  r.note("sizes", sizes);
  guarded(r, [&] {
    Json counts = Json::array();
    for (Color d = 0; d < op.color_count(); ++d) {
      const auto got = free_algebra(op, r_map, sizes, d);
      const auto expected = free_algebra_by_orbits(op, r_map, sizes, d);
      counts.push_back(got.size());
      if (got != expected)
        r.fail(Json{{"reason", "free algebra differs from the orbit oracle"},
                    {"color", op.color_name(d)},
                    {"got", got.size()},
                    {"expected", expected.size()}});
    }
    r.note("counts", counts);
  });
  return r;
}

}  // namespace

std::size_t SuiteResult::failures() const {
  return static_cast<std::size_t>(
      std::count_if(reports.begin(), reports.end(), [](const Report& r) { return !r.passed(); }));
}

Json SuiteResult::to_json() const {
  Json j;
  j["suite"] = suite;
  j["status"] = passed() ? "pass" : "fail";
  j["params"] = Json{{"seed", params.seed},
                     {"instances", params.instances},
                     {"max_edges", params.max_edges},
                     {"max_levels", params.max_levels},
                     {"max_length", params.max_length},
                     {"truncation", params.truncation},
                     {"stump_probability", params.stump_probability}};
  j["instances"] = reports.size();
  j["failures"] = failures();
  if (!notes.empty()) j["notes"] = notes;
  Json records = Json::array();
  for (const auto& r : reports) records.push_back(r.to_json());
  j["reports"] = records;
  return j;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"functoriality", "retract", "segal",    "d3",       "nerve",
                                              "fibrous",       "shuffles", "assoc",    "interior", "freealg"};
  return names;
}

SuiteParams resolve(const std::string& suite, const SuiteConfig& config) {
  const auto it = defaults().find(suite);
  if (it == defaults().end()) throw DomainError("unknown suite '" + suite + "'");
  const Defaults& d = it->second;
  auto pick = [](const std::optional<std::size_t>& v, std::size_t fallback, const char* what) {
    if (v && *v == 0) throw DomainError(std::string(what) + " must be at least 1");
    return v.value_or(fallback);
  };
  SuiteParams p;
  p.seed = config.seed;
  p.instances = pick(config.instances, d.instances, "instances");
  p.max_edges = pick(config.max_edges, d.max_edges, "max-edges");
  p.max_levels = pick(config.max_levels, d.max_levels, "max-levels");
  p.max_length = pick(config.max_length, d.max_length, "max-length");
  p.truncation = pick(config.truncation, d.truncation, "truncation");
  return p;
}

SuiteResult run_suite(const std::string& suite, const SuiteConfig& config) {
  SuiteResult result;
  result.suite = suite;
  result.params = resolve(suite, config);
  const SuiteParams& p = result.params;
  std::size_t stump_cuts = 0;
  for (std::size_t i = 0; i < p.instances; ++i) {
    Rng rng = Rng::derive(p.seed, suite, i);
    const std::string id = instance_name(i);
    if (suite == "functoriality") result.reports.push_back(functoriality_instance(rng, p, id));
    if (suite == "retract") result.reports.push_back(retract_instance(rng, p, id));
    if (suite == "segal") result.reports.push_back(segal_instance(rng, p, i, id, stump_cuts));
    if (suite == "d3") result.reports.push_back(d3_instance(rng, p, i, id));
    if (suite == "nerve") result.reports.push_back(nerve_instance(rng, p, id));
    if (suite == "fibrous") result.reports.push_back(fibrous_instance(rng, p, id));
    if (suite == "shuffles") result.reports.push_back(shuffles_instance(rng, p, id));
    if (suite == "assoc") result.reports.push_back(assoc_instance(rng, p, id));
    if (suite == "interior") result.reports.push_back(interior_instance(rng, p, id));
    if (suite == "freealg") result.reports.push_back(freealg_instance(rng, p, id));
  }
  if (suite == "segal") result.notes["stump_cuts"] = stump_cuts;
  if (suite == "d3") result.notes["empty_forest_instance"] = instance_name(0);
  if (suite == "fibrous") {
    result.notes["verified"] = "up to \u27E8" + std::to_string(p.truncation) + "\u27E9";
    for (auto d : all_defects()) result.reports.push_back(defect_instance(d, p));
    result.notes["defects"] = all_defects().size();
  }
  if (suite == "shuffles") {
    for (std::size_t m = 0; m <= kLinearBudget; ++m)
      for (std::size_t n = 0; m + n <= kLinearBudget; ++n) result.reports.push_back(linear_instance(m, n));
  }
  return result;
}

std::vector<SuiteResult> run_all(const SuiteConfig& config) {
  std::vector<SuiteResult> out;
  for (const auto& name : suite_names()) out.push_back(run_suite(name, config));
  return out;
}

Json to_json(const std::vector<SuiteResult>& results) {
  std::size_t failures = 0;
  Json suites = Json::array();
  for (const auto& r : results) {
    failures += r.failures();
    suites.push_back(r.to_json());
  }
  return Json{{"status", failures == 0 ? "pass" : "fail"}, {"failures", failures}, {"suites", suites}};
}

}  // namespace dendrotensor::checks
