#include "dtncomm/obstruction.hpp"

#include <algorithm>

#include "dtncomm/error.hpp"

namespace dtncomm {

TopologySpec::TopologySpec(std::int64_t genus, std::int64_t boundary_components)
    : g(genus), k(boundary_components) {
  if (g < 0) throw Error(ErrorKind::Parameter, "genus must be >= 0");
  if (k < 1) throw Error(ErrorKind::Parameter, "need at least one boundary component");
}

bool euler_inequality_holds(std::int64_t g, std::int64_t k, std::int64_t m) {
  return 2 - 2 * g + m * (k - 2) <= k;
}

std::optional<std::int64_t> euler_min_violation(std::int64_t g, std::int64_t k) {
  const TopologySpec spec(g, k);
  if (k <= 2) return std::nullopt;
  // m (k-2) > k - 2 + 2g
  const std::int64_t m = (2 * g) / (k - 2) + 2;
  return m;
}

std::optional<std::int64_t> euler_min_violation(const TopologySpec& spec) {
  return euler_min_violation(spec.g, spec.k);
}

LengthReport equal_length_check(const DomainSpec& domain, double rel_tol) {
  LengthReport r;
  r.rel_tol = rel_tol;
  for (int c = 0; c < domain.components(); ++c) r.component_lengths.push_back(domain.component(c).length());
  const auto [lo, hi] = std::minmax_element(r.component_lengths.begin(), r.component_lengths.end());
  r.equal = (*hi - *lo) <= rel_tol * *hi;
  return r;
}

}  // namespace dtncomm
