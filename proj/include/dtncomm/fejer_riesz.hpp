#pragma once

// Constructive Fejer-Riesz factorization of a positive trigonometric
// polynomial w(z) = sum_{|k|<=n} a_k z^k (z on the unit circle):
//
//   1. q(z) = z^n w(z) has degree 2n and no roots on |z| = 1;
//   2. its roots pair up as alpha, 1/conj(alpha) with |alpha| > 1;
//   3. c = w(1) / prod |1 - alpha_k|^2 > 0 and p(z) = sqrt(c) prod (z - alpha_k).
//
// Then |p(e^{i theta})|^2 = w(e^{i theta}). p is unique up to a unimodular
// constant; this form (positive sqrt(c) times a monic product) is returned.

#include <complex>
#include <span>
#include <vector>

#include "dtncomm/fourier_ring.hpp"

namespace dtncomm {

inline constexpr double kDefaultCircleTolerance = 1e-6;
inline constexpr double kTrimThreshold = 1e-13;
inline constexpr double kPairingTolerance = 1e-6;

class LaurentSymmetricPoly {
public:
  // coeffs[k + n] = a_k for |k| <= n.
  LaurentSymmetricPoly(int degree, std::vector<cplx> coeffs);

  static LaurentSymmetricPoly from_signal(const BoundarySignal& s);

  int degree() const noexcept { return n_; }
  cplx coeff(int k) const noexcept {
    return (k < -n_ || k > n_) ? cplx{} : a_[static_cast<std::size_t>(k + n_)];
  }
  std::span<const cplx> coeffs() const noexcept { return a_; }

  // w(z) for z != 0.
  cplx evaluate(cplx z) const;
  // Real value on the circle.
  double on_circle(double theta) const { return evaluate(std::polar(1.0, theta)).real(); }

  double hermitian_defect() const;
  double max_abs() const;

  // Drops |a_{+-n}| below threshold * max|a_k| until the outer pair is nonzero.
  LaurentSymmetricPoly trimmed(double threshold = kTrimThreshold) const;

private:
  int n_;
  std::vector<cplx> a_;
};

class OuterPolynomial {
public:
  // Ascending coefficients p_0 + p_1 z + ...
  explicit OuterPolynomial(std::vector<cplx> coeffs);
  // scale * prod (z - root)
  static OuterPolynomial from_roots(cplx scale, std::span<const cplx> roots);

  int degree() const noexcept { return static_cast<int>(p_.size()) - 1; }
  std::span<const cplx> coeffs() const noexcept { return p_; }
  const std::vector<cplx>& roots() const noexcept { return roots_; }
  // Positive constant c of the product form; empty-root polynomials store |p_0|^2.
  double c() const noexcept { return c_; }

  cplx evaluate(cplx z) const;
  cplx derivative(cplx z) const;

  // True when every root satisfies |alpha| > 1 + tol.
  bool is_outer(double tol = kDefaultCircleTolerance) const;

  // Laurent coefficients of |p(e^{i theta})|^2 (autocorrelation of p).
  LaurentSymmetricPoly abs_squared() const;

private:
  friend OuterPolynomial factorize(const LaurentSymmetricPoly&, double);
  OuterPolynomial(std::vector<cplx> coeffs, std::vector<cplx> roots, double c);

  std::vector<cplx> p_;
  std::vector<cplx> roots_;
  double c_ = 1.0;
};

// Roots of sum coeffs[j] z^j via companion-matrix eigenvalues, each refined by
// one Newton step. Leading coefficient must be nonzero.
std::vector<cplx> polynomial_roots(std::span<const cplx> coeffs);

// Splits an even-sized root set into reciprocal-conjugate pairs and returns
// the members outside the unit circle. Roots within tol_circle of |z| = 1 are
// rejected with BoundaryRoot; unmatched sets with Pairing.
std::vector<cplx> pair_roots(std::span<const cplx> roots, double tol_circle = kDefaultCircleTolerance,
                             double pair_tol = kPairingTolerance);

OuterPolynomial factorize(const LaurentSymmetricPoly& w,
                          double tol_circle = kDefaultCircleTolerance);

}  // namespace dtncomm
