#pragma once

#include <string>
#include <vector>

#include "dtncomm/io.hpp"
#include "dtncomm/run_config.hpp"

namespace dtncomm {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  bool within_time = true;
  double seconds = 0.0;
  double time_limit = 0.0;
  std::string detail;
  json metrics = json::object();
};

inline constexpr int kCriterionCount = 11;

CriterionResult run_criterion(int id, const RunConfig& cfg);
std::vector<CriterionResult> run_acceptance(const RunConfig& cfg);

// One human-readable line.
std::string format_result(const CriterionResult& r);
// Summary without timings, so reruns with the same config are byte-identical.
json acceptance_summary(const std::vector<CriterionResult>& results);

}  // namespace dtncomm
