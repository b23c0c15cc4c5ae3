#pragma once

// Boundary operators of the conformally flat disc (D, e^{2 phi} g_0) in the
// truncated Fourier basis exp(i n theta), |n| <= N.
//
//   Lambda_phi = e^{-phi} Lambda_0,            Lambda_0 e^{in theta} = |n| e^{in theta}
//   Delta_phi  = -e^{-2phi} (d^2/dtheta^2 - phi' d/dtheta)
//
// so Lambda_phi(k, n) = c_{e^{-phi}}(k - n) |n| and
// Delta_phi(k, n) = c_{e^{-2phi}}(k - n) n (n + k) / 2.
//
// Matrices are indexed by (output frequency k, input frequency n).

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "dtncomm/fourier_ring.hpp"

namespace dtncomm {

// Boundary trace of the log-conformal factor phi. The derived signals are
// formed pointwise on the grid and then analyzed.
class ConformalBoundaryFactor {
public:
  // phi at the M equispaced nodes; M even, M >= 8.
  explicit ConformalBoundaryFactor(std::vector<double> phi_samples);

  static ConformalBoundaryFactor from_function(const std::function<double(double)>& phi,
                                               int grid_size);
  // From samples of the metric weight e^{-2 phi} (must be positive).
  static ConformalBoundaryFactor from_metric_weight(std::span<const double> exp_neg_2phi);

  int grid_size() const noexcept { return static_cast<int>(phi_samples_.size()); }
  // Frequencies resolved by the cached signals: M/2 - 1.
  int resolved_freq() const noexcept { return grid_size() / 2 - 1; }

  const std::vector<double>& phi_samples() const noexcept { return phi_samples_; }
  const BoundarySignal& phi() const noexcept { return phi_; }
  const BoundarySignal& exp_phi() const noexcept { return exp_phi_; }
  const BoundarySignal& exp_neg_phi() const noexcept { return exp_neg_phi_; }
  const BoundarySignal& exp_neg_2phi() const noexcept { return exp_neg_2phi_; }
  const BoundarySignal& dphi() const noexcept { return dphi_; }

  // Induced boundary length: integral of e^{phi} dtheta.
  double boundary_length() const;

private:
  std::vector<double> phi_samples_;
  BoundarySignal phi_, exp_phi_, exp_neg_phi_, exp_neg_2phi_, dphi_;
};

class FrequencyOperator {
public:
  FrequencyOperator(int order, Eigen::MatrixXcd entries, int window = -1);

  int order() const noexcept { return n_; }
  int window() const noexcept { return w_; }
  void set_window(int window);

  const Eigen::MatrixXcd& matrix() const noexcept { return m_; }
  cplx operator()(int k, int n) const { return m_(k + n_, n + n_); }

  // Rows and columns |k|, |n| <= window().
  Eigen::MatrixXcd windowed() const;

  // Coefficient vector c(-N..N) -> operator applied.
  std::vector<cplx> apply(std::span<const cplx> coeffs) const;

private:
  int n_;
  int w_;
  Eigen::MatrixXcd m_;
};

FrequencyOperator operator*(const FrequencyOperator& a, const FrequencyOperator& b);
FrequencyOperator commutator(const FrequencyOperator& a, const FrequencyOperator& b);

FrequencyOperator fourier_derivative(int order);
FrequencyOperator dtn_flat_disc(int order);
FrequencyOperator multiplication_operator(const BoundarySignal& f, int order);
FrequencyOperator dtn_conformal_disc(const ConformalBoundaryFactor& factor, int order);
FrequencyOperator boundary_laplacian_disc(const ConformalBoundaryFactor& factor, int order);

// Row slice (|k| <= W, all n) and column slice (all k, |n| <= W) of an
// order-N operator; enough to form windowed blocks of products.
struct OperatorSlices {
  Eigen::MatrixXcd rows;
  Eigen::MatrixXcd cols;
};

OperatorSlices boundary_laplacian_slices(const ConformalBoundaryFactor& factor, int order,
                                         int window);
// Slices of T(f) diag(multiplier) for a Fourier multiplier given on -N..N.
OperatorSlices scaled_toeplitz_slices(const BoundarySignal& f, std::span<const double> multiplier,
                                      int order, int window);

struct CommutatorNorm {
  double norm = 0.0;   // Frobenius norm of the windowed commutator
  double scale = 0.0;  // ||Delta_W||_F * ||Lambda_W||_F
  double relative() const { return scale > 0.0 ? norm / scale : norm; }
};

// Windowed norm of [Delta_phi, Lambda_phi] assembled at order N, restricted to
// |k|, |n| <= W. Requires W <= N/2.
CommutatorNorm commutator_norm_disc(const ConformalBoundaryFactor& factor, int order, int window);

// Residual of the exact vanishing criterion: max over 3 <= |k| <= N of
// |c_{e^{-2phi}}(k)|.
double fourier_support_residual(const ConformalBoundaryFactor& factor, int order);

// Relative residual in units of the mean of e^{-2phi}.
double fourier_support_residual_relative(const ConformalBoundaryFactor& factor, int order);

// Exact value of |n|(-k^2/2 + 3kn/2 - n^2) - |k-n|(-n^2 + nk/2) as a reduced
// fraction, and whether (n,k) lies in the cone where the relation is vacuous.
struct BracketValue {
  std::int64_t numerator = 0;
  std::int64_t denominator = 1;
  bool vacuous = false;
};

BracketValue bracket(std::int64_t n, std::int64_t k);

// Vanishing under refinement: norms at N and 2N both below tol * scale, and
// the refined norm not larger than the coarse one beyond the round-off floor.
struct RefinementVerdict {
  CommutatorNorm coarse;
  CommutatorNorm fine;
  bool below_tolerance = false;
  bool non_increasing = false;
  bool vanishing() const { return below_tolerance && non_increasing; }
};

RefinementVerdict refine_commutator(const ConformalBoundaryFactor& factor, int order, int window,
                                    double tol);

// Relative round-off floor used when comparing refined commutator norms.
inline constexpr double kCommutatorRoundoffFloor = 1e-13;

// Eigenvalues of the windowed block of an operator.
Eigen::VectorXcd windowed_spectrum(const FrequencyOperator& op);

}  // namespace dtncomm
