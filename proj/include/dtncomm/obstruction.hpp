#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "dtncomm/planar_oracle.hpp"

namespace dtncomm {

struct TopologySpec {
  TopologySpec(std::int64_t genus, std::int64_t boundary_components);
  std::int64_t g;
  std::int64_t k;
};

// Left and right sides of 2 - 2g + m (k - 2) <= k.
bool euler_inequality_holds(std::int64_t g, std::int64_t k, std::int64_t m);

// Least m >= 1 violating the inequality; none for k <= 2.
std::optional<std::int64_t> euler_min_violation(std::int64_t g, std::int64_t k);
std::optional<std::int64_t> euler_min_violation(const TopologySpec& spec);

struct LengthReport {
  std::vector<double> component_lengths;
  bool equal = true;
  double rel_tol = 0.0;
};

// All boundary components have the same length within rel_tol (relative to
// the longest).
LengthReport equal_length_check(const DomainSpec& domain, double rel_tol);

}  // namespace dtncomm
