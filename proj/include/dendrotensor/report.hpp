#pragma once

#include <cstddef>
#include <string>
#include <utility>

#include "json.hpp"

namespace dendrotensor {

using Json = nlohmann::ordered_json;

/// The outcome of one check on one instance. Every violation is counted; the
/// first `kWitnessCap` are kept as witnesses.
class Report {
 public:
  static constexpr std::size_t kWitnessCap = 20;

  Report(std::string check, std::string instance)
      : check_(std::move(check)), instance_(std::move(instance)) {}

  void fail(Json witness) {
    if (violations_ < kWitnessCap) witnesses_.push_back(std::move(witness));
    ++violations_;
  }
  /// Records a statistic, shown in the serialized report.
  void note(const std::string& key, Json value) { stats_[key] = std::move(value); }
  /// Folds another report's violations into this one.
  void absorb(const Report& other) {
    for (const auto& w : other.witnesses_) fail(w);
    if (other.violations_ > other.witnesses_.size())
      violations_ += other.violations_ - other.witnesses_.size();
  }

  bool passed() const { return violations_ == 0; }
  std::size_t violations() const { return violations_; }
  const std::string& check() const { return check_; }
  const std::string& instance() const { return instance_; }
  const Json& witnesses() const { return witnesses_; }
  const Json& stats() const { return stats_; }

  Json to_json() const {
    Json j;
    j["check"] = check_;
    j["instance"] = instance_;
    j["status"] = passed() ? "pass" : "fail";
    if (!stats_.empty()) j["stats"] = stats_;
    if (!passed()) {
      j["violations"] = violations_;
      j["witness"] = witnesses_;
    }
    return j;
  }

 private:
  std::string check_;
  std::string instance_;
  std::size_t violations_ = 0;
  Json witnesses_ = Json::array();
  Json stats_ = Json::object();
};

}  // namespace dendrotensor
