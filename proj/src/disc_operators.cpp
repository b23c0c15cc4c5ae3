#include "dtncomm/disc_operators.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <numbers>
#include <string>

#include "dtncomm/error.hpp"

namespace dtncomm {

namespace {

BoundarySignal analyze_pointwise(const std::vector<double>& phi, int max_freq,
                                 double (*fn)(double, double), double scale) {
  std::vector<double> v(phi.size());
  std::transform(phi.begin(), phi.end(), v.begin(), [&](double p) { return fn(p, scale); });
  return coefficients(v, max_freq);
}

double exp_scaled(double p, double s) { return std::exp(s * p); }

void require_order(int order) {
  if (order < 0) throw Error(ErrorKind::TruncationOrder, "truncation order must be >= 0");
}

}  // namespace

ConformalBoundaryFactor::ConformalBoundaryFactor(std::vector<double> phi_samples)
    : phi_samples_(std::move(phi_samples)) {
  const int m = static_cast<int>(phi_samples_.size());
  if (m < 8 || m % 2 != 0) {
    throw Error(ErrorKind::TruncationOrder, "conformal factor needs an even grid of >= 8 nodes");
  }
  const int n = resolved_freq();
  phi_ = coefficients(phi_samples_, n);
  exp_phi_ = analyze_pointwise(phi_samples_, n, exp_scaled, 1.0);
  exp_neg_phi_ = analyze_pointwise(phi_samples_, n, exp_scaled, -1.0);
  exp_neg_2phi_ = analyze_pointwise(phi_samples_, n, exp_scaled, -2.0);
  dphi_ = derivative(phi_);

  for (double v : grid_values(exp_neg_2phi_, m)) {
    if (!(v > 0.0)) throw Error(ErrorKind::Positivity, "metric weight e^{-2phi} not positive");
  }
}

ConformalBoundaryFactor ConformalBoundaryFactor::from_function(
    const std::function<double(double)>& phi, int grid_size) {
  return ConformalBoundaryFactor(sample_on_grid(phi, even_grid(grid_size)));
}

ConformalBoundaryFactor ConformalBoundaryFactor::from_metric_weight(
    std::span<const double> exp_neg_2phi) {
  std::vector<double> phi(exp_neg_2phi.size());
  for (std::size_t j = 0; j < phi.size(); ++j) {
    if (!(exp_neg_2phi[j] > 0.0)) {
      throw Error(ErrorKind::Positivity, "metric weight e^{-2phi} must be positive");
    }
    phi[j] = -0.5 * std::log(exp_neg_2phi[j]);
  }
  return ConformalBoundaryFactor(std::move(phi));
}

double ConformalBoundaryFactor::boundary_length() const {
  return 2.0 * std::numbers::pi * exp_phi_[0].real();
}

FrequencyOperator::FrequencyOperator(int order, Eigen::MatrixXcd entries, int window)
    : n_(order), w_(window < 0 ? order : window), m_(std::move(entries)) {
  if (m_.rows() != 2 * order + 1 || m_.cols() != 2 * order + 1) {
    throw Error(ErrorKind::Parameter, "operator matrix must be (2N+1) x (2N+1)");
  }
  set_window(w_);
}

void FrequencyOperator::set_window(int window) {
  if (window < 0 || window > n_) throw Error(ErrorKind::Window, "window outside 0..N");
  w_ = window;
}

Eigen::MatrixXcd FrequencyOperator::windowed() const {
  return m_.block(n_ - w_, n_ - w_, 2 * w_ + 1, 2 * w_ + 1);
}

std::vector<cplx> FrequencyOperator::apply(std::span<const cplx> coeffs) const {
  if (coeffs.size() != static_cast<std::size_t>(2 * n_ + 1)) {
    throw Error(ErrorKind::Parameter, "coefficient vector size does not match operator order");
  }
  Eigen::Map<const Eigen::VectorXcd> x(coeffs.data(), static_cast<Eigen::Index>(coeffs.size()));
  Eigen::VectorXcd y = m_ * x;
  return {y.data(), y.data() + y.size()};
}

FrequencyOperator operator*(const FrequencyOperator& a, const FrequencyOperator& b) {
  if (a.order() != b.order()) throw Error(ErrorKind::Parameter, "operator orders differ");
  return FrequencyOperator(a.order(), a.matrix() * b.matrix(), std::min(a.window(), b.window()));
}

FrequencyOperator commutator(const FrequencyOperator& a, const FrequencyOperator& b) {
  if (a.order() != b.order()) throw Error(ErrorKind::Parameter, "operator orders differ");
  Eigen::MatrixXcd c = a.matrix() * b.matrix() - b.matrix() * a.matrix();
  return FrequencyOperator(a.order(), std::move(c), std::min(a.window(), b.window()));
}

FrequencyOperator fourier_derivative(int order) {
  require_order(order);
  Eigen::VectorXcd d(2 * order + 1);
  for (int n = -order; n <= order; ++n) d(n + order) = cplx(0.0, n);
  return FrequencyOperator(order, d.asDiagonal().toDenseMatrix());
}

FrequencyOperator dtn_flat_disc(int order) {
  require_order(order);
  Eigen::VectorXcd d(2 * order + 1);
  for (int n = -order; n <= order; ++n) d(n + order) = static_cast<double>(std::abs(n));
  return FrequencyOperator(order, d.asDiagonal().toDenseMatrix());
}

FrequencyOperator multiplication_operator(const BoundarySignal& f, int order) {
  require_order(order);
  f.require_hermitian("multiplication_operator");
  const int dim = 2 * order + 1;
  Eigen::MatrixXcd t(dim, dim);
  for (int n = -order; n <= order; ++n) {
    for (int k = -order; k <= order; ++k) t(k + order, n + order) = f[k - n];
  }
  return FrequencyOperator(order, std::move(t));
}

namespace {

// Lambda_phi(k, n) = c_{e^{-phi}}(k - n) |n|
Eigen::MatrixXcd dtn_block(const BoundarySignal& e_neg_phi, int row_lo, int row_hi, int col_lo,
                           int col_hi) {
  Eigen::MatrixXcd b(row_hi - row_lo + 1, col_hi - col_lo + 1);
  for (int n = col_lo; n <= col_hi; ++n) {
    const double mult = std::abs(n);
    for (int k = row_lo; k <= row_hi; ++k) b(k - row_lo, n - col_lo) = e_neg_phi[k - n] * mult;
  }
  return b;
}

// Delta_phi(k, n) = c_{e^{-2phi}}(k - n) n (n + k) / 2, using
// e^{-2phi} phi' = -(e^{-2phi})' / 2.
Eigen::MatrixXcd laplacian_block(const BoundarySignal& e2, int row_lo, int row_hi, int col_lo,
                                 int col_hi) {
  Eigen::MatrixXcd b(row_hi - row_lo + 1, col_hi - col_lo + 1);
  for (int n = col_lo; n <= col_hi; ++n) {
    for (int k = row_lo; k <= row_hi; ++k) {
      b(k - row_lo, n - col_lo) = e2[k - n] * (0.5 * n * (n + k));
    }
  }
  return b;
}

}  // namespace

FrequencyOperator dtn_conformal_disc(const ConformalBoundaryFactor& factor, int order) {
  require_order(order);
  return FrequencyOperator(order,
                           dtn_block(factor.exp_neg_phi(), -order, order, -order, order));
}

FrequencyOperator boundary_laplacian_disc(const ConformalBoundaryFactor& factor, int order) {
  require_order(order);
  return FrequencyOperator(
      order, laplacian_block(factor.exp_neg_2phi(), -order, order, -order, order));
}

OperatorSlices boundary_laplacian_slices(const ConformalBoundaryFactor& factor, int order,
                                         int window) {
  require_order(order);
  if (window < 0 || window > order) throw Error(ErrorKind::Window, "window outside 0..N");
  const auto& e2 = factor.exp_neg_2phi();
  return {laplacian_block(e2, -window, window, -order, order),
          laplacian_block(e2, -order, order, -window, window)};
}

OperatorSlices scaled_toeplitz_slices(const BoundarySignal& f, std::span<const double> multiplier,
                                      int order, int window) {
  require_order(order);
  if (multiplier.size() != static_cast<std::size_t>(2 * order + 1)) {
    throw Error(ErrorKind::Parameter, "multiplier must cover -N..N");
  }
  const int n = order;
  const int w = window;
  OperatorSlices s{Eigen::MatrixXcd(2 * w + 1, 2 * n + 1), Eigen::MatrixXcd(2 * n + 1, 2 * w + 1)};
  for (int m = -n; m <= n; ++m) {
    const double d = multiplier[static_cast<std::size_t>(m + n)];
    for (int k = -w; k <= w; ++k) s.rows(k + w, m + n) = f[k - m] * d;
  }
  for (int m = -w; m <= w; ++m) {
    const double d = multiplier[static_cast<std::size_t>(m + n)];
    for (int k = -n; k <= n; ++k) s.cols(k + n, m + w) = f[k - m] * d;
  }
  return s;
}

CommutatorNorm commutator_norm_disc(const ConformalBoundaryFactor& factor, int order,
                                    int window) {
  require_order(order);
  if (window < 0 || 2 * window > order) {
    throw Error(ErrorKind::Window, "commutator window W=" + std::to_string(window) +
                                       " must satisfy W <= N/2 (N=" +
                                       std::to_string(order) + ")");
  }
  const int n = order;
  const int w = window;
  std::vector<double> abs_n(static_cast<std::size_t>(2 * n + 1));
  for (int m = -n; m <= n; ++m) abs_n[static_cast<std::size_t>(m + n)] = std::abs(m);

  // Only the slices that feed the windowed block are formed.
  const OperatorSlices lap = boundary_laplacian_slices(factor, n, w);
  const OperatorSlices lam = scaled_toeplitz_slices(factor.exp_neg_phi(), abs_n, n, w);

  const Eigen::MatrixXcd c = lap.rows * lam.cols - lam.rows * lap.cols;
  const Eigen::MatrixXcd lap_w = lap.rows.middleCols(n - w, 2 * w + 1);
  const Eigen::MatrixXcd lam_w = lam.rows.middleCols(n - w, 2 * w + 1);
  return {c.norm(), lap_w.norm() * lam_w.norm()};
}

double fourier_support_residual(const ConformalBoundaryFactor& factor, int order) {
  if (order < 3) throw Error(ErrorKind::Window, "criterion needs N >= 3");
  const auto& e2 = factor.exp_neg_2phi();
  const int top = std::min(order, e2.max_freq());
  if (top < 3) throw Error(ErrorKind::Window, "factor grid too coarse for the criterion");
  double t = 0.0;
  for (int k = 3; k <= top; ++k) t = std::max({t, std::abs(e2[k]), std::abs(e2[-k])});
  return t;
}

double fourier_support_residual_relative(const ConformalBoundaryFactor& factor, int order) {
  return fourier_support_residual(factor, order) / std::abs(factor.exp_neg_2phi()[0]);
}

BracketValue bracket(std::int64_t n, std::int64_t k) {
  // Twice the bracket is an integer.
  const std::int64_t an = n < 0 ? -n : n;
  const std::int64_t akn = (k - n) < 0 ? n - k : k - n;
  const std::int64_t twice = an * (-k * k + 3 * k * n - 2 * n * n) - akn * (-2 * n * n + n * k);
  BracketValue v;
  v.vacuous = (n >= 0 && k <= n) || (n <= 0 && k >= n);
  if (twice % 2 == 0) {
    v.numerator = twice / 2;
    v.denominator = 1;
  } else {
    v.numerator = twice;
    v.denominator = 2;
  }
  return v;
}

RefinementVerdict refine_commutator(const ConformalBoundaryFactor& factor, int order, int window,
                                    double tol) {
  RefinementVerdict r;
  r.coarse = commutator_norm_disc(factor, order, window);
  r.fine = commutator_norm_disc(factor, 2 * order, window);
  r.below_tolerance = r.coarse.relative() <= tol && r.fine.relative() <= tol;
  const double floor = kCommutatorRoundoffFloor * r.fine.scale;
  r.non_increasing = r.fine.norm <= std::max(r.coarse.norm, floor);
  return r;
}

Eigen::VectorXcd windowed_spectrum(const FrequencyOperator& op) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(op.windowed(), false);
  return es.eigenvalues();
}

}  // namespace dtncomm
