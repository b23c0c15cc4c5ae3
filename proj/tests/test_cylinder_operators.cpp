#include "dtncomm/cylinder_operators.hpp"

#include <random>

#include "support.hpp"

using namespace dtncomm;
using testing_support::kPi;

namespace {

ConformalBoundaryFactor constant(double c, int grid = 512) {
  return ConformalBoundaryFactor::from_function([c](double) { return c; }, grid);
}

ConformalBoundaryFactor cosine(double amp, int k = 1, double shift = 0.0, int grid = 512) {
  return ConformalBoundaryFactor::from_function(
      [amp, k, shift](double t) { return shift + amp * std::cos(k * t); }, grid);
}

// f_1 with f(0) = e^{i theta}, f(H) = 0 has radial part sinh(H - h) / sinh(H).
double extension_profile(double h, double height) { return std::sinh(height - h) / std::sinh(height); }

}  // namespace

TEST(FlatCylinderDtn, ZeroFrequencyBlock) {
  for (double h : {0.5, 1.0, 3.0}) {
    const auto op = flat_cylinder_dtn(h, 4);
    EXPECT_NEAR(op(0, 0, 0, 0).real(), 1.0 / h, 1e-15);
    EXPECT_NEAR(op(1, 0, 0, 0).real(), -1.0 / h, 1e-15);
    EXPECT_NEAR(std::abs(op(0, 0, 0, 0) + op(0, 0, 1, 0)), 0.0, 1e-15);
  }
}

TEST(FlatCylinderDtn, FirstFrequencyMatchesFiniteDifference) {
  const double h = 1.0;
  const auto op = flat_cylinder_dtn(h, 4);
  EXPECT_NEAR(op(0, 1, 0, 1).real(), std::cosh(h) / std::sinh(h), 1e-14);
  const double step = 1e-5;
  // outward normal at h = 0 is -d/dh
  const double fd = -(extension_profile(step, h) - extension_profile(-step, h)) / (2 * step);
  EXPECT_NEAR(op(0, 1, 0, 1).real(), fd, 1e-9);
  EXPECT_NEAR(extension_coefficient(h, 1), -std::cosh(h) / std::sinh(h), 1e-14);
  EXPECT_NEAR(extension_coefficient(h, -2), -2 * std::cosh(2 * h) / std::sinh(2 * h), 1e-13);
}

TEST(FlatCylinderDtn, BlockStructure) {
  const int n = 12;
  const auto op = flat_cylinder_dtn(0.7, n);
  const auto& m = op.matrix();
  EXPECT_NEAR((m - m.transpose()).norm(), 0.0, 1e-15);
  for (int c = 0; c < 2; ++c)
    for (int k = -n; k <= n; ++k)
      for (int cp = 0; cp < 2; ++cp)
        for (int j = -n; j <= n; ++j)
          if (k != j) EXPECT_EQ(op(c, k, cp, j), cplx(0.0));
  for (int f = -n; f <= n; ++f) {
    Eigen::Matrix2d b;
    b << op(0, f, 0, f).real(), op(0, f, 1, f).real(), op(1, f, 0, f).real(), op(1, f, 1, f).real();
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(b);
    EXPECT_GE(es.eigenvalues().minCoeff(), -1e-14);
    if (f == 0) {
      EXPECT_NEAR(es.eigenvalues()(0), 0.0, 1e-15);
    } else {
      EXPECT_GT(es.eigenvalues()(0), 0.0);
    }
  }
}

TEST(FlatCylinderDtn, TallCylinderDecouples) {
  const auto op = flat_cylinder_dtn(50.0, 8);
  for (int f = 1; f <= 8; ++f) {
    EXPECT_LE(std::abs(op(0, f, 1, f)), 1e-18);
    EXPECT_NEAR(op(0, f, 0, f).real(), f, 1e-14);
  }
}

TEST(FlatCylinderDtn, NoOverflow) {
  const auto b = flat_dtn_block(2e4, 1);
  EXPECT_TRUE(std::isfinite(b.self));
  EXPECT_NEAR(b.self, 1.0, 1e-15);
  EXPECT_EQ(b.cross, -0.0);
  const auto op = flat_cylinder_dtn(10.0, 1000);
  EXPECT_TRUE(op.matrix().allFinite());
}

TEST(FlatCylinderDtn, Errors) {
  EXPECT_ERROR_KIND(flat_cylinder_dtn(0.0, 4), ErrorKind::Parameter);
  EXPECT_ERROR_KIND(flat_cylinder_dtn(-1.0, 4), ErrorKind::Parameter);
  EXPECT_ERROR_KIND(CylinderSpec::flat(0.0, 64), ErrorKind::Parameter);
  EXPECT_ERROR_KIND(commutator_norm_cylinder(CylinderSpec::flat(1.0, 256), 32, 20), ErrorKind::Window);
}

TEST(DtnCylinder, ConformalScaling) {
  const CylinderSpec spec(1.0, cosine(0.2), constant(0.5));
  const auto op = dtn_cylinder(spec, 16);
  const auto flat = flat_cylinder_dtn(1.0, 16);
  // second circle: constant factor e^{-0.5}
  EXPECT_NEAR(std::abs(op(1, 3, 0, 3) - std::exp(-0.5) * flat(1, 3, 0, 3)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(op(1, 3, 1, 4)), 0.0, 1e-14);
  const cplx c1 = spec.phi0.exp_neg_phi()[1];
  EXPECT_NEAR(std::abs(op(0, 4, 0, 3) - c1 * flat(0, 3, 0, 3)), 0.0, 1e-14);
}

TEST(CylinderCommutator, Examples) {
  const auto flat = commutator_norm_cylinder(CylinderSpec::flat(1.0, 512), 128, 32);
  EXPECT_LE(flat.norm, kRoundoffZero * flat.scale);
  const auto loc = commutator_norm_cylinder(CylinderSpec(1.0, constant(0.3), constant(0.3)), 128, 32);
  EXPECT_LE(loc.relative(), 1e-12);
  const auto pert = commutator_norm_cylinder(CylinderSpec(1.0, cosine(0.1), constant(0.0)), 128, 32);
  EXPECT_GE(pert.norm, 1e3 * std::max(flat.norm, kRoundoffZero * flat.scale));
}

TEST(CylinderCommutator, SlicedMatchesDenseAssembly) {
  const CylinderSpec spec(0.8, cosine(0.15, 2), cosine(0.05, 1, 0.2));
  const int n = 32, w = 8;
  const auto lap = boundary_laplacian_cylinder(spec, n).matrix();
  const auto lam = dtn_cylinder(spec, n).matrix();
  const Eigen::MatrixXcd comm = lap * lam - lam * lap;
  const TwoCircleOperator full(n, comm, w);
  const auto fast = commutator_norm_cylinder(spec, n, w);
  EXPECT_NEAR(fast.norm, full.windowed().norm(), 1e-12 * fast.scale);
}

TEST(CylinderCommutator, UnequalLengthsNeverCommute) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-0.4, 0.4);
  for (int t = 0; t < 10; ++t) {
    const double c0 = u(rng);
    double ch = u(rng);
    if (std::abs(ch - c0) < 0.05) ch = c0 + 0.1;
    const CylinderSpec spec(0.5 + std::abs(u(rng)), cosine(0.05 * u(rng), 2, c0), constant(ch));
    ASSERT_GT(std::abs(spec.phi0.boundary_length() - spec.phi_h.boundary_length()), 1e-3);
    const auto coarse = commutator_norm_cylinder(spec, 64, 16);
    const auto fine = commutator_norm_cylinder(spec, 128, 16);
    EXPECT_GT(coarse.relative(), 1e-6) << t;
    EXPECT_GT(fine.relative(), 0.5 * coarse.relative()) << t;
  }
}

TEST(DoublyConnectedCriterion, Examples) {
  const auto [a0, ah] = criterion_doubly_connected(CylinderSpec(1.0, constant(0.2), constant(-0.1)));
  EXPECT_LE(a0, 1e-15);
  EXPECT_LE(ah, 1e-15);
  const auto [b0, bh] = criterion_doubly_connected(CylinderSpec(1.0, cosine(0.1), constant(0.0)));
  // c(1) of e^{-0.2 cos} is -I_1(0.2)
  EXPECT_NEAR(b0, std::cyl_bessel_i(1.0, 0.2), 1e-14);
  EXPECT_NEAR(b0, testing_support::quadrature_coefficient([](double t) { return std::exp(-0.2 * std::cos(t)); }, 1).real() * -1.0, 1e-13);
  EXPECT_LE(bh, 1e-15);
  const auto [c0, ch] = criterion_doubly_connected(CylinderSpec(1.0, constant(0.0), cosine(0.2, 3)));
  EXPECT_LE(c0, 1e-15);
  EXPECT_GT(ch, 0.0);
}
