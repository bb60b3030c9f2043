#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dendrotensor/report.hpp"

namespace dendrotensor::checks {

/// Overrides for a suite's defaults; unset fields keep the suite's own
/// bound. All bounds must be at least 1.
struct SuiteConfig {
  std::uint64_t seed = 42;
  std::optional<std::size_t> instances;
  std::optional<std::size_t> max_edges;
  /// Largest level of a random simplex.
  std::optional<std::size_t> max_levels;
  std::optional<std::size_t> max_length;
  std::optional<std::size_t> truncation;
};

/// The resolved parameters of one suite run.
struct SuiteParams {
  std::uint64_t seed = 42;
  std::size_t instances = 0;
  std::size_t max_edges = 0;
  std::size_t max_levels = 0;
  std::size_t max_length = 0;
  std::size_t truncation = 0;
  double stump_probability = 0.2;
};

struct SuiteResult {
  std::string suite;
  SuiteParams params;
  std::vector<Report> reports;
  /// Suite-level facts, such as how many instances hit a special case.
  Json notes = Json::object();

  std::size_t failures() const;
  bool passed() const { return failures() == 0; }
  Json to_json() const;
};

/// The suite names accepted by run_suite, in the order `all` runs them.
const std::vector<std::string>& suite_names();

/// Defaults for a suite with the config's overrides applied. Throws
/// DomainError for an unknown suite or a bound of zero.
SuiteParams resolve(const std::string& suite, const SuiteConfig& config);

/// Runs one suite. Instance i draws from Rng::derive(seed, suite, i), so
/// results do not depend on the order instances are run in.
SuiteResult run_suite(const std::string& suite, const SuiteConfig& config);

/// Every suite in order; the report is the array of suite results.
std::vector<SuiteResult> run_all(const SuiteConfig& config);

Json to_json(const std::vector<SuiteResult>& results);

}  // namespace dendrotensor::checks
