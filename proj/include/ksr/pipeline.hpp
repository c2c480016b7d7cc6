#pragma once

// Check orchestration: realize -> grade -> oracle cross-checks -> series.
// Reports are deterministic for a given config and seed; timings are only
// included on request.

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "ksr/grading.hpp"
#include "ksr/realform.hpp"

namespace ksr::pipeline {

using nlohmann::json;

inline constexpr const char* kVersion = "1.0.0";

/// Check names in execution order.
const std::vector<std::string>& all_checks();

struct JobConfig {
  realform::FormSpec form;
  std::optional<grading::GradingElement> H;  // nullopt: every principal grading found by the oracle
  std::vector<rootdata::Weight> lambdas;     // empty: lambda' = 0, or the enumeration below
  int lambda_bound = -1;                     // >= 0: all Q∩K-dominant lambda' with |fw| and K-pairings <= bound
  int N = 6;
  int kmax = 4;
  std::uint64_t seed = 1;
  std::set<std::string> checks;  // empty: all
  bool use_cache = true;
  bool timings = false;

  /// Throws InputError for unknown check names or mismatched lengths.
  void validate() const;
  bool wants(const std::string& check) const { return checks.empty() || checks.count(check) > 0; }
};

/// {"form": ..., or "type"/"rank"/"epsilon", "H": [..] | "search", "lambda": [weights],
///  "lambda_bound", "N", "kmax", "seed", "checks": [..]}.
JobConfig config_from_json(const json& j);

struct CheckResult {
  std::string name;
  std::optional<grading::GradingElement> H;
  std::string verdict;  // PASS, FAIL, EVIDENCE, HYPOTHESIS-UNMET, SKIPPED
  json detail;
  std::optional<double> millis;
};

struct Report {
  std::string form;
  std::string type;
  std::vector<int> epsilon;
  std::uint64_t seed = 0;
  int N = 0;
  int kmax = 0;
  std::vector<grading::GradingElement> gradings;
  std::vector<CheckResult> checks;

  /// FAIL anywhere -> 1, otherwise HYPOTHESIS-UNMET anywhere -> 2, else 0.
  int exit_code() const;
  std::string overall() const;
  json to_json() const;
};

/// Q∩K-dominant weights with |lambda_i| <= bound and <lambda, beta^vee> <= bound
/// on simple K-roots, in lexicographic order.
std::vector<rootdata::Weight> qk_dominant_weights(const grading::GradedDecomposition& gd, const realform::KRootDatum& kd,
                                                  int bound);

/// Any module error propagates; callers map it to exit code 2.
Report run(const JobConfig& config);

/// Every check on every principal grading of a catalog form.
Report verify_form(const realform::FormSpec& form, std::uint64_t seed = 1, int N = 6, int kmax = 4);

}  // namespace ksr::pipeline
