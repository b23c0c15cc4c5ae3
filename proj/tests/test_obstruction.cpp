#include "dtncomm/obstruction.hpp"

#include "support.hpp"

using namespace dtncomm;

namespace {

std::optional<std::int64_t> brute_force(std::int64_t g, std::int64_t k) {
  for (std::int64_t m = 1; m <= 10000; ++m)
    if (2 - 2 * g + m * (k - 2) > k) return m;
  return std::nullopt;
}

}  // namespace

TEST(EulerObstruction, Examples) {
  EXPECT_EQ(euler_min_violation(0, 3), 2);
  EXPECT_EQ(euler_min_violation(1, 3), 4);
  EXPECT_FALSE(euler_min_violation(0, 2).has_value());
  EXPECT_FALSE(euler_min_violation(5, 1).has_value());
  EXPECT_TRUE(euler_inequality_holds(0, 3, 1));
  EXPECT_FALSE(euler_inequality_holds(0, 3, 2));
}

TEST(EulerObstruction, AgreesWithDirectEvaluation) {
  for (std::int64_t g = 0; g <= 12; ++g)
    for (std::int64_t k = 1; k <= 15; ++k) EXPECT_EQ(euler_min_violation(g, k), brute_force(g, k)) << g << "," << k;
}

TEST(EulerObstruction, FiniteAndMonotone) {
  for (std::int64_t g = 0; g <= 20; ++g)
    for (std::int64_t k = 3; k <= 20; ++k) {
      const auto m = euler_min_violation(g, k);
      ASSERT_TRUE(m.has_value());
      EXPECT_GE(*m, 1);
      EXPECT_FALSE(euler_inequality_holds(g, k, *m));
      if (*m > 1) {
        EXPECT_TRUE(euler_inequality_holds(g, k, *m - 1));
      }
      EXPECT_LE(*euler_min_violation(g, k + 1), *m);
      EXPECT_GE(*euler_min_violation(g + 1, k), *m);
    }
}

TEST(EulerObstruction, LargeGenus) {
  const std::int64_t g = 1'000'000'000;
  EXPECT_EQ(euler_min_violation(g, 3), brute_force(0, 3).value() + 2 * g);
}

TEST(TopologySpecTest, Validation) {
  EXPECT_NO_THROW(TopologySpec(0, 1));
  EXPECT_ERROR_KIND(TopologySpec(-1, 3), ErrorKind::Parameter);
  EXPECT_ERROR_KIND(TopologySpec(0, 0), ErrorKind::Parameter);
  EXPECT_EQ(euler_min_violation(TopologySpec(2, 5)), 3);
}

TEST(EqualLength, Examples) {
  const DomainSpec annulus(PlanarCurve::circle(0.0, 2.0, 128), {PlanarCurve::circle(0.0, 1.0, 128)});
  const auto r = equal_length_check(annulus, 1e-6);
  EXPECT_FALSE(r.equal);
  ASSERT_EQ(r.component_lengths.size(), 2u);
  EXPECT_NEAR(r.component_lengths[0], 4 * testing_support::kPi, 1e-12);
  EXPECT_NEAR(r.component_lengths[1], 2 * testing_support::kPi, 1e-12);

  EXPECT_TRUE(equal_length_check(DomainSpec(PlanarCurve::circle(0.0, 1.0, 64)), 1e-12).equal);

  // wavy hole whose length is tuned to the outer circle
  const auto wavy = [](double eps) {
    return PlanarCurve::from_function(
        [eps](double t) { return std::polar(0.5 + eps * std::cos(8 * t), t); },
        [eps](double t) {
          const double r = 0.5 + eps * std::cos(8 * t);
          return std::polar(1.0, t) * cplx(-8 * eps * std::sin(8 * t), r);
        },
        512);
  };
  double lo = 0.0, hi = 0.3;
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (lo + hi);
    (wavy(mid).length() < 2 * testing_support::kPi ? lo : hi) = mid;
  }
  const DomainSpec twin(PlanarCurve::circle(0.0, 1.0, 512), {wavy(lo)});
  const auto t = equal_length_check(twin, 1e-6);
  EXPECT_NEAR(t.component_lengths[0], t.component_lengths[1], 1e-9);
  EXPECT_TRUE(t.equal);
}
