#include "dtncomm/disc_operators.hpp"

#include <random>

#include "dtncomm/fejer_riesz.hpp"
#include "support.hpp"

using namespace dtncomm;
using testing_support::kPi;
using testing_support::quadrature_coefficient;

namespace {

ConformalBoundaryFactor factor_of(const std::function<double(double)>& phi, int m = 1024) {
  return ConformalBoundaryFactor::from_function(phi, m);
}

ConformalBoundaryFactor metric_weight(const std::function<double(double)>& w, int m = 1024) {
  return ConformalBoundaryFactor::from_metric_weight(sample_on_grid(w, m));
}

const auto flat = [](double) { return 0.0; };

// measured once at N = 256, W = 64, M = 1024
constexpr double kCubicRegression = 4.43747e-8;
const auto oval2 = [](double t) { return -std::log(std::abs(std::polar(1.0, t) - 2.0)); };

}  // namespace

TEST(ConformalFactor, CachedSignalsMatchPointwiseExponentials) {
  const auto f = factor_of([](double t) { return 0.3 * std::cos(t) + 0.1 * std::sin(2 * t); }, 256);
  const auto nodes = grid_nodes(256);
  const auto e1 = grid_values(f.exp_neg_phi(), 256);
  const auto e2 = grid_values(f.exp_neg_2phi(), 256);
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    const double phi = f.phi_samples()[j];
    EXPECT_NEAR(e1[j], std::exp(-phi), 1e-12 * std::exp(-phi));
    EXPECT_NEAR(e2[j], std::exp(-2 * phi), 1e-12 * std::exp(-2 * phi));
    EXPECT_GT(e2[j], 0.0);
  }
  const auto d = grid_values(f.dphi(), 256);
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    const double t = nodes[j];
    EXPECT_NEAR(d[j], -0.3 * std::sin(t) + 0.2 * std::cos(2 * t), 1e-12);
  }
}

TEST(ConformalFactor, RejectsNonPositiveWeight) {
  std::vector<double> w(16, 1.0);
  w[5] = 0.0;
  EXPECT_ERROR_KIND(ConformalBoundaryFactor::from_metric_weight(w), ErrorKind::Positivity);
}

TEST(ConformalFactor, BoundaryLength) {
  EXPECT_NEAR(factor_of([](double) { return std::log(3.0); }, 64).boundary_length(), 6.0 * kPi, 1e-12);
}

TEST(FlatDtn, DiagonalAbsN) {
  const auto op = dtn_flat_disc(2);
  const double expect[] = {2, 1, 0, 1, 2};
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) EXPECT_EQ(op.matrix()(i, j), cplx(i == j ? expect[i] : 0.0));
  }
  const auto big = dtn_flat_disc(4);
  std::vector<cplx> constant(9);
  constant[4] = 1.0;
  for (const auto& z : big.apply(constant)) EXPECT_EQ(z, cplx(0.0));
  std::vector<cplx> cos3(9);
  cos3[4 + 3] = cos3[4 - 3] = 0.5;
  const auto out = big.apply(cos3);
  EXPECT_EQ(out[7], cplx(1.5));
  EXPECT_EQ(out[1], cplx(1.5));
}

TEST(MultiplicationOperator, Examples) {
  const auto id = multiplication_operator(BoundarySignal::constant(1.0), 3);
  EXPECT_LT((id.matrix() - Eigen::MatrixXcd::Identity(7, 7)).norm(), 1e-15);

  const auto c = coefficients(sample_on_grid([](double t) { return std::cos(t); }, 16), 1);
  const auto cop = multiplication_operator(c, 2);
  std::vector<cplx> one(5);
  one[2] = 1.0;
  const auto out = cop.apply(one);
  EXPECT_NEAR(std::abs(out[1] - 0.5), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(out[3] - 0.5), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(out[2]), 0.0, 1e-15);

  const auto f = coefficients(sample_on_grid([](double t) { return 5 - 4 * std::cos(t); }, 16), 3);
  const auto t = multiplication_operator(f, 4).matrix();
  for (int i = 0; i < 9; ++i) {
    for (int j = 0; j < 9; ++j) {
      const double e = i == j ? 5.0 : (std::abs(i - j) == 1 ? -2.0 : 0.0);
      EXPECT_NEAR(std::abs(t(i, j) - e), 0.0, 1e-14);
      if (i > 0 && j > 0) EXPECT_EQ(t(i, j), t(i - 1, j - 1));
    }
  }
}

TEST(ConformalDtn, FlatAndConstantFactors) {
  EXPECT_LT((dtn_conformal_disc(factor_of(flat, 64), 8).matrix() - dtn_flat_disc(8).matrix()).norm(), 1e-14);
  const auto half = dtn_conformal_disc(factor_of([](double) { return std::log(2.0); }, 64), 8);
  EXPECT_LT((half.matrix() - 0.5 * dtn_flat_disc(8).matrix()).norm(), 1e-14);
}

TEST(ConformalDtn, OvalFactorActsPointwise) {
  const int n = 32;
  const auto op = dtn_conformal_disc(factor_of(oval2, 256), n);
  std::vector<cplx> e1(2 * n + 1);
  e1[n + 1] = 1.0;
  const auto out = op.apply(e1);
  // |n| = 1, so the output is the coefficients of |e^{it} - 2| e^{it}
  const auto g = [](double t) { return std::abs(std::polar(1.0, t) - 2.0) * std::polar(1.0, t); };
  for (int k = -n + 2; k <= n - 2; ++k) {
    const cplx ref = testing_support::quadrature_coefficient_c(g, k);
    EXPECT_NEAR(std::abs(out[k + n] - ref), 0.0, 1e-13) << "k=" << k;
  }
}

TEST(BoundaryLaplacian, DiagonalCases) {
  const auto lap0 = boundary_laplacian_disc(factor_of(flat, 64), 6).matrix();
  const auto lapc = boundary_laplacian_disc(factor_of([](double) { return 0.4; }, 64), 6).matrix();
  for (int i = 0; i < 13; ++i) {
    for (int j = 0; j < 13; ++j) {
      const double n = i - 6;
      EXPECT_NEAR(std::abs(lap0(i, j) - (i == j ? n * n : 0.0)), 0.0, 1e-14);
      EXPECT_NEAR(std::abs(lapc(i, j) - (i == j ? std::exp(-0.8) * n * n : 0.0)), 0.0, 1e-14);
    }
  }
}

TEST(BoundaryLaplacian, KillsConstants) {
  const auto lap = boundary_laplacian_disc(factor_of([](double t) { return 0.2 * std::sin(3 * t); }, 256), 20);
  EXPECT_LT(lap.matrix().col(20).norm(), 1e-14);
}

TEST(BoundaryLaplacian, AgreesWithTruncatedProductFormOnWindow) {
  const int n = 64;
  const auto f = factor_of([](double t) { return 0.3 * std::cos(t) - 0.2 * std::sin(2 * t); }, 512);
  const auto ddiag = fourier_derivative(n);
  const auto second = ddiag * ddiag;
  const auto phid = multiplication_operator(f.dphi(), n) * ddiag;
  const Eigen::MatrixXcd product_form =
      -(multiplication_operator(f.exp_neg_2phi(), n).matrix() * (second.matrix() - phid.matrix()));
  const auto lap = boundary_laplacian_disc(f, n).matrix();
  const int w = n / 2;
  const auto a = lap.block(n - w, n - w, 2 * w + 1, 2 * w + 1);
  const auto b = product_form.block(n - w, n - w, 2 * w + 1, 2 * w + 1);
  EXPECT_LT((a - b).norm(), 1e-12 * b.norm());
}

TEST(BoundaryLaplacian, MatchesPointwiseFormula) {
  // -e^{-2phi}(u'' - phi' u') for u = e^{3it}
  const auto phi = [](double t) { return 0.25 * std::cos(2 * t); };
  const auto dphi = [](double t) { return -0.5 * std::sin(2 * t); };
  const int n = 40;
  const auto lap = boundary_laplacian_disc(factor_of(phi, 512), n);
  std::vector<cplx> u(2 * n + 1);
  u[n + 3] = 1.0;
  const auto out = lap.apply(u);
  const auto g = [&](double t) {
    const cplx e = std::polar(1.0, 3 * t);
    return -std::exp(-2 * phi(t)) * (-9.0 * e - dphi(t) * cplx(0, 3) * e);
  };
  for (int k = -n + 5; k <= n - 5; ++k) {
    EXPECT_NEAR(std::abs(out[k + n] - testing_support::quadrature_coefficient_c(g, k)), 0.0, 1e-12);
  }
}

TEST(Commutator, FlatVanishes) {
  const auto c = commutator_norm_disc(factor_of(flat, 1024), 256, 64);
  EXPECT_LE(c.norm, 1e-12 * c.scale);
}

TEST(Commutator, LogOvalFactorVanishes) {
  const auto c = commutator_norm_disc(factor_of(oval2, 1024), 256, 64);
  EXPECT_LE(c.relative(), 1e-8);
}

TEST(Commutator, CubicPerturbationDoesNotCommute) {
  const auto f = metric_weight([](double t) { return 1.0 + 0.2 * std::cos(3 * t); });
  const auto base = commutator_norm_disc(factor_of(flat, 1024), 256, 64);
  const auto c = commutator_norm_disc(f, 256, 64);
  EXPECT_GT(c.norm, 1e3 * std::max(base.norm, 1e-12 * base.scale));
  EXPECT_NEAR(c.relative(), kCubicRegression, 1e-3 * kCubicRegression);
}

TEST(Commutator, WindowTooLarge) {
  EXPECT_ERROR_KIND(commutator_norm_disc(factor_of(flat, 256), 64, 33), ErrorKind::Window);
}

TEST(Commutator, SlicesMatchDenseAssembly) {
  const int n = 48;
  const int w = 12;
  const auto f = factor_of([](double t) { return 0.2 * std::cos(3 * t) + 0.1 * std::sin(t); }, 256);
  const auto c = commutator(boundary_laplacian_disc(f, n), dtn_conformal_disc(f, n)).matrix();
  const auto fast = commutator_norm_disc(f, n, w);
  EXPECT_NEAR(fast.norm, c.block(n - w, n - w, 2 * w + 1, 2 * w + 1).norm(), 1e-10 * fast.norm);
}

TEST(Commutator, BracketGovernsSingleModeAction) {
  // (T(e^phi) C)(n - k, n) = -B(n, k) c_{e^{-2phi}}(-k) for W well inside N
  const int n_ord = 128;
  const auto f = metric_weight([](double t) { return 1.0 + 0.3 * std::cos(3 * t) + 0.1 * std::sin(5 * t); }, 512);
  const auto c = commutator(boundary_laplacian_disc(f, n_ord), dtn_conformal_disc(f, n_ord)).matrix();
  const auto te = multiplication_operator(f.exp_phi(), n_ord).matrix();
  const Eigen::MatrixXcd tc = te * c;
  for (int n = -10; n <= 10; ++n) {
    for (int k = -6; k <= 6; ++k) {
      const auto b = bracket(n, k);
      const double bv = static_cast<double>(b.numerator) / b.denominator;
      const cplx expect = -bv * f.exp_neg_2phi()[-k];
      EXPECT_NEAR(std::abs(tc(n - k + n_ord, n + n_ord) - expect), 0.0, 1e-10) << n << "," << k;
    }
  }
}

TEST(Criterion, Values) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> rad(1.2, 5.0), ang(0, 2 * kPi);
  for (int t = 0; t < 10; ++t) {
    std::vector<cplx> roots;
    for (int d = 0; d < t % 3; ++d) roots.push_back(std::polar(rad(rng), ang(rng)));
    const auto p = OuterPolynomial::from_roots(1.0, roots);
    const auto w = [&](double th) { return std::norm(p.evaluate(std::polar(1.0, th))); };
    const auto f = metric_weight(w, 512);
    EXPECT_LE(fourier_support_residual(f, 100), 1e-12 * f.exp_neg_2phi().max_abs());
    for (int k = 3; k <= 6; ++k) EXPECT_LT(std::abs(quadrature_coefficient(w, k, 512)), 1e-12 * w(0.0) + 1e-12);
  }
  EXPECT_EQ(fourier_support_residual(factor_of(flat, 64), 10), 0.0);
  const auto g = metric_weight([](double t) { return 1.0 + 0.2 * std::cos(3 * t); }, 256);
  EXPECT_NEAR(fourier_support_residual(g, 50), 0.1, 1e-14);
  EXPECT_ERROR_KIND(fourier_support_residual(g, 2), ErrorKind::Window);
}

TEST(Bracket, Examples) {
  const auto a = bracket(1, 3);
  EXPECT_EQ(a.numerator, -2);
  EXPECT_EQ(a.denominator, 1);
  EXPECT_FALSE(a.vacuous);
  const auto b = bracket(2, 1);
  EXPECT_EQ(b.numerator, 0);
  EXPECT_TRUE(b.vacuous);
  for (int k = -7; k <= 7; ++k) EXPECT_EQ(bracket(0, k).numerator, 0);
}

TEST(Bracket, ClosedFormOnWholeRange) {
  for (std::int64_t n = -50; n <= 50; ++n) {
    for (std::int64_t k = -50; k <= 50; ++k) {
      const auto b = bracket(n, k);
      // 2B from the definition in integer arithmetic
      const std::int64_t twice = std::abs(n) * (-k * k + 3 * k * n - 2 * n * n) -
                                 std::abs(k - n) * (-2 * n * n + n * k);
      EXPECT_EQ(2 * b.numerator, twice * b.denominator);
      if (b.vacuous) {
        EXPECT_EQ(twice, 0);
      } else {
        EXPECT_EQ(twice, -2 * std::abs(n) * (k - n) * (k - 2 * n));
      }
    }
  }
}

TEST(Refinement, VerdictsSeparateFamilies) {
  const auto good = refine_commutator(factor_of(oval2, 2048), 256, 64, 1e-8);
  EXPECT_TRUE(good.vanishing());
  const auto bad = refine_commutator(metric_weight([](double t) { return 1.0 + 0.1 * std::cos(4 * t); }, 2048), 256, 64, 1e-8);
  EXPECT_FALSE(bad.vanishing());
}

TEST(DiscProperties, OperatorsDependOnlyOnBoundaryTrace) {
  const auto phi = [](double t) { return 0.3 * std::sin(t); };
  const auto a = factor_of(phi, 256);
  const auto b = ConformalBoundaryFactor(sample_on_grid(phi, 256));
  EXPECT_EQ((dtn_conformal_disc(a, 32).matrix() - dtn_conformal_disc(b, 32).matrix()).norm(), 0.0);
  EXPECT_EQ((boundary_laplacian_disc(a, 32).matrix() - boundary_laplacian_disc(b, 32).matrix()).norm(), 0.0);
}

TEST(DiscProperties, WindowedSpectrumIsReal) {
  const auto f = factor_of([](double t) { return 0.4 * std::cos(t) + 0.2 * std::sin(3 * t); }, 1024);
  auto op = dtn_conformal_disc(f, 128);
  op.set_window(32);
  const auto ev = windowed_spectrum(op);
  const double scale = ev.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < ev.size(); ++i) EXPECT_LE(std::abs(ev(i).imag()), 1e-8 * scale);
}

TEST(DiscProperties, FlatLaplacianIsDtnSquared) {
  for (int n : {1, 16, 256}) {
    const auto lap = boundary_laplacian_disc(factor_of(flat, 4 * n + 4), n).matrix();
    const auto lam = dtn_flat_disc(n).matrix();
    EXPECT_LT((lap - lam * lam).cwiseAbs().maxCoeff(), 1e-12 * std::max(1.0, double(n) * n));
  }
}
