#pragma once

#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

namespace eland {

/// One numeric check: value against target with the tolerance it was
/// judged by. relation is "abs" (|value - target| <= tol), "rel"
/// (|value - target| <= tol |target|), "le" (value <= target + tol) or
/// "ge" (value >= target - tol).
struct Check {
  std::string name;
  double value = 0.0;
  double target = 0.0;
  double tolerance = 0.0;
  std::string relation = "abs";
  bool pass = false;
  nlohmann::json to_json() const;
};

Check make_check(std::string name, double value, double target, double tolerance,
                 std::string relation);

struct CriterionResult {
  int id = 0;
  std::string title;
  std::vector<Check> checks;
  double seconds = 0.0;
  double budget_seconds = 0.0;
  bool pass = false;
  bool known_unattainable = false;
  std::string error;  // set when a solve threw
  nlohmann::json to_json() const;
  /// "PASS 03 flux law ..." style single line.
  std::string line() const;
};

struct AcceptanceOptions {
  std::vector<int> only;        // empty runs all
  bool include_maximal = true;  // maximal solution in the square run
  std::function<void(const CriterionResult&)> on_result;
};

int acceptance_count();
/// Criteria that cannot pass at the pinned parameters (see the README).
bool acceptance_known_unattainable(int id);

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options = {});

}  // namespace eland
