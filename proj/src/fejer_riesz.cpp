#include "dtncomm/fejer_riesz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <Eigen/Dense>

#include "dtncomm/error.hpp"

namespace dtncomm {

LaurentSymmetricPoly::LaurentSymmetricPoly(int degree, std::vector<cplx> coeffs)
    : n_(degree), a_(std::move(coeffs)) {
  if (degree < 0 || a_.size() != static_cast<std::size_t>(2 * degree + 1)) {
    throw Error(ErrorKind::Parameter, "Laurent coefficients must have size 2n+1");
  }
}

LaurentSymmetricPoly LaurentSymmetricPoly::from_signal(const BoundarySignal& s) {
  return LaurentSymmetricPoly(s.max_freq(), {s.data().begin(), s.data().end()});
}

cplx LaurentSymmetricPoly::evaluate(cplx z) const {
  // Horner in z over the shifted polynomial z^n w(z), then divide.
  cplx acc{};
  for (int k = n_; k >= -n_; --k) acc = acc * z + coeff(k);
  return acc / std::pow(z, n_);
}

double LaurentSymmetricPoly::hermitian_defect() const {
  double d = 0.0;
  for (int k = 0; k <= n_; ++k) d = std::max(d, std::abs(coeff(-k) - std::conj(coeff(k))));
  return d;
}

double LaurentSymmetricPoly::max_abs() const {
  double m = 0.0;
  for (const auto& a : a_) m = std::max(m, std::abs(a));
  return m;
}

LaurentSymmetricPoly LaurentSymmetricPoly::trimmed(double threshold) const {
  const double cut = threshold * max_abs();
  int n = n_;
  while (n > 0 && std::abs(coeff(n)) <= cut && std::abs(coeff(-n)) <= cut) --n;
  std::vector<cplx> a(static_cast<std::size_t>(2 * n + 1));
  for (int k = -n; k <= n; ++k) a[static_cast<std::size_t>(k + n)] = coeff(k);
  return LaurentSymmetricPoly(n, std::move(a));
}

OuterPolynomial::OuterPolynomial(std::vector<cplx> coeffs) : p_(std::move(coeffs)) {
  while (p_.size() > 1 && p_.back() == cplx{}) p_.pop_back();
  if (p_.empty() || (p_.size() == 1 && p_[0] == cplx{})) {
    throw Error(ErrorKind::Parameter, "zero polynomial");
  }
  if (p_.size() > 1) roots_ = polynomial_roots(p_);
  double prod = 1.0;
  for (const auto& r : roots_) prod *= std::norm(1.0 - r);
  c_ = std::norm(evaluate(1.0)) / prod;
}

OuterPolynomial::OuterPolynomial(std::vector<cplx> coeffs, std::vector<cplx> roots, double c)
    : p_(std::move(coeffs)), roots_(std::move(roots)), c_(c) {}

OuterPolynomial OuterPolynomial::from_roots(cplx scale, std::span<const cplx> roots) {
  std::vector<cplx> p{scale};
  for (const auto& r : roots) {
    std::vector<cplx> next(p.size() + 1);
    for (std::size_t j = 0; j < p.size(); ++j) {
      next[j + 1] += p[j];
      next[j] -= r * p[j];
    }
    p = std::move(next);
  }
  return OuterPolynomial(std::move(p), {roots.begin(), roots.end()},
                         std::norm(scale));
}

cplx OuterPolynomial::evaluate(cplx z) const {
  cplx acc{};
  for (auto it = p_.rbegin(); it != p_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

cplx OuterPolynomial::derivative(cplx z) const {
  cplx acc{};
  for (std::size_t j = p_.size() - 1; j >= 1; --j) {
    acc = acc * z + static_cast<double>(j) * p_[j];
  }
  return acc;
}

bool OuterPolynomial::is_outer(double tol) const {
  return std::all_of(roots_.begin(), roots_.end(),
                     [&](const cplx& r) { return std::abs(r) > 1.0 + tol; });
}

LaurentSymmetricPoly OuterPolynomial::abs_squared() const {
  const int n = degree();
  std::vector<cplx> a(static_cast<std::size_t>(2 * n + 1));
  for (int k = -n; k <= n; ++k) {
    cplx s{};
    for (int j = 0; j <= n; ++j) {
      const int i = j + k;
      if (i >= 0 && i <= n) s += p_[static_cast<std::size_t>(i)] * std::conj(p_[static_cast<std::size_t>(j)]);
    }
    a[static_cast<std::size_t>(k + n)] = s;
  }
  return LaurentSymmetricPoly(n, std::move(a));
}

std::vector<cplx> polynomial_roots(std::span<const cplx> coeffs) {
  const int deg = static_cast<int>(coeffs.size()) - 1;
  if (deg < 1) return {};
  const cplx lead = coeffs.back();
  if (lead == cplx{}) throw Error(ErrorKind::Parameter, "leading coefficient is zero");

  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(deg, deg);
  for (int i = 1; i < deg; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < deg; ++i) companion(i, deg - 1) = -coeffs[static_cast<std::size_t>(i)] / lead;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(companion, false);
  if (es.info() != Eigen::Success) {
    throw Error(ErrorKind::Parameter, "companion eigenvalue iteration did not converge");
  }

  std::vector<cplx> roots(es.eigenvalues().data(), es.eigenvalues().data() + deg);
  for (auto& r : roots) {
    cplx f{}, df{};
    for (int j = deg; j >= 0; --j) {
      df = df * r + f;
      f = f * r + coeffs[static_cast<std::size_t>(j)];
    }
    if (std::abs(df) > 0.0) {
      const cplx step = f / df;
      const cplx refined = r - step;
      // Keep the Newton step only if it does not move the root far (clusters).
      if (std::isfinite(refined.real()) && std::isfinite(refined.imag()) &&
          std::abs(step) <= 1e-3 * std::max(1.0, std::abs(r))) {
        r = refined;
      }
    }
  }
  return roots;
}

std::vector<cplx> pair_roots(std::span<const cplx> roots, double tol_circle, double pair_tol) {
  if (roots.size() % 2 != 0) {
    throw Error(ErrorKind::Pairing, "odd number of roots cannot pair as alpha, 1/conj(alpha)");
  }
  std::vector<cplx> outside, inside;
  for (const auto& r : roots) {
    if (std::abs(std::abs(r) - 1.0) <= tol_circle) {
      throw Error(ErrorKind::BoundaryRoot,
                  "root at radius " + std::to_string(std::abs(r)) +
                      " lies within the circle guard band");
    }
    (std::abs(r) > 1.0 ? outside : inside).push_back(r);
  }
  if (outside.size() != inside.size()) {
    throw Error(ErrorKind::Pairing, "unequal numbers of roots inside and outside the circle");
  }
  // Greedy cluster matching: each outside root takes the closest unused
  // inside root to its reflection 1/conj(alpha).
  std::sort(outside.begin(), outside.end(),
            [](const cplx& a, const cplx& b) { return std::abs(a) < std::abs(b); });
  std::vector<bool> used(inside.size(), false);
  for (const auto& a : outside) {
    std::size_t best = inside.size();
    double best_err = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < inside.size(); ++j) {
      if (used[j]) continue;
      const double err = std::abs(inside[j] * std::conj(a) - 1.0);
      if (err < best_err) {
        best_err = err;
        best = j;
      }
    }
    if (best == inside.size() || best_err > pair_tol) {
      throw Error(ErrorKind::Pairing, "no reciprocal-conjugate partner for root (" +
                                          std::to_string(a.real()) + ", " +
                                          std::to_string(a.imag()) + ")");
    }
    used[best] = true;
  }
  return outside;
}

OuterPolynomial factorize(const LaurentSymmetricPoly& w_in, double tol_circle) {
  if (w_in.hermitian_defect() > 1e-12 * std::max(w_in.max_abs(), 1e-300)) {
    throw Error(ErrorKind::SymmetryViolation, "w must satisfy conj(a_k) = a_{-k}");
  }
  const LaurentSymmetricPoly w = w_in.trimmed();
  const int n = w.degree();

  if (n == 0) {
    const double a0 = w.coeff(0).real();
    if (!(a0 > 0.0)) throw Error(ErrorKind::Positivity, "w(1) must be positive");
    return OuterPolynomial({cplx(std::sqrt(a0), 0.0)}, {}, a0);
  }

  // q(z) = z^n w(z), ascending coefficients a_{-n}, ..., a_n.
  std::vector<cplx> q(w.coeffs().begin(), w.coeffs().end());
  const auto outside = pair_roots(polynomial_roots(q), tol_circle);

  const double w1 = w.evaluate(1.0).real();
  if (!(w1 > 0.0)) throw Error(ErrorKind::Positivity, "w(1) must be positive");
  for (int j = 0; j < 16 * n; ++j) {
    if (!(w.on_circle(2.0 * std::numbers::pi * j / (16 * n)) > 0.0)) {
      throw Error(ErrorKind::Positivity, "w is not strictly positive on the circle");
    }
  }

  double prod = 1.0;
  for (const auto& a : outside) prod *= std::norm(1.0 - a);
  const double c = w1 / prod;

  auto p = OuterPolynomial::from_roots(cplx(std::sqrt(c), 0.0), outside);
  return OuterPolynomial({p.coeffs().begin(), p.coeffs().end()}, outside, c);
}

}  // namespace dtncomm
