#pragma once

// Fourier analysis on the unit circle.
//
// A BoundarySignal stores the coefficients c(k), |k| <= N, of a real
// 2*pi-periodic function under the mean-value normalization
//
//     c(k) = (1/2pi) * integral of exp(-i k theta) f(theta) dtheta,
//
// so c(0) is the mean. Grid analysis divides the discrete transform by the
// number of samples M; nodes are theta_j = 2 pi j / M.

#include <complex>
#include <functional>
#include <span>
#include <vector>

namespace dtncomm {

using cplx = std::complex<double>;

// Relative threshold for "zero to round-off" decisions.
inline constexpr double kRoundoffZero = 1e-12;

class BoundarySignal {
public:
  // The zero signal.
  BoundarySignal() = default;

  // coeffs[k + max_freq] holds c(k). Size must be 2*max_freq + 1.
  BoundarySignal(int max_freq, std::vector<cplx> coeffs, int grid_size);

  // Real constant signal.
  static BoundarySignal constant(double value, int grid_size = 2);

  int max_freq() const noexcept { return n_; }
  int grid_size() const noexcept { return grid_; }

  // c(k); zero for |k| > max_freq().
  cplx operator[](int k) const noexcept {
    return (k < -n_ || k > n_) ? cplx{} : c_[static_cast<std::size_t>(k + n_)];
  }

  std::span<const cplx> data() const noexcept { return c_; }

  double max_abs() const noexcept;

  // max_k |c(-k) - conj(c(k))|
  double hermitian_defect() const noexcept;

  // Throws SymmetryViolation unless the defect is below kRoundoffZero * max_abs().
  void require_hermitian(const char* where) const;

private:
  int n_ = 0;
  int grid_ = 2;
  std::vector<cplx> c_{cplx{}};
};

// Smallest even integer >= n (and >= 2).
int even_grid(int n);

std::vector<double> grid_nodes(int grid_size);

std::vector<double> sample_on_grid(const std::function<double(double)>& f, int grid_size);

// Trapezoidal-rule analysis of M equispaced real samples. Requires M even and
// M >= 2N + 2. Hermitian symmetry is enforced by averaging c(k) with conj(c(-k)).
BoundarySignal coefficients(std::span<const double> samples, int max_freq);

// Same normalization for complex samples; returns c(-N..N) without symmetrization.
std::vector<cplx> complex_coefficients(std::span<const cplx> samples, int max_freq);

// sum_k c(k) exp(i k theta) at arbitrary angles.
std::vector<double> synthesize(const BoundarySignal& signal, std::span<const double> nodes);

// Values at the M equispaced nodes, computed with an inverse FFT. M > 2N.
std::vector<double> grid_values(const BoundarySignal& signal, int grid_size);

// Complex values of a coefficient vector c(-N..N) at M equispaced nodes.
std::vector<cplx> complex_grid_values(std::span<const cplx> coeffs, int grid_size);

// Pointwise product, formed on an anti-aliased grid and re-analyzed.
BoundarySignal product(const BoundarySignal& a, const BoundarySignal& b);

// c(k) -> i k c(k).
BoundarySignal derivative(const BoundarySignal& signal);

// max over k0 <= |k| <= N of |c(k)|.
double tail_max(const BoundarySignal& signal, int k0);

namespace detail {
// Unnormalized DFT: out_k = sum_j in_j exp(-2 pi i jk/M).
std::vector<cplx> dft_forward(std::span<const cplx> in);
// Unnormalized inverse: out_j = sum_k in_k exp(+2 pi i jk/M).
std::vector<cplx> dft_inverse(std::span<const cplx> in);
}  // namespace detail

}  // namespace dtncomm
