#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "dtncomm/fourier_ring.hpp"

namespace dtncomm {

// Smooth closed curve sampled at the parameter nodes theta_j = 2 pi j / M.
// Points and tangents dz/dtheta are stored; a trigonometric interpolant of the
// samples is kept for off-node evaluation.
class PlanarCurve {
public:
  PlanarCurve(std::vector<cplx> points, std::vector<cplx> tangents);

  // Analytic parametrization. The closure z(2 pi) = z(0) is checked.
  static PlanarCurve from_function(const std::function<cplx(double)>& z,
                                   const std::function<cplx(double)>& dz, int samples);
  // Tangents by spectral differentiation of the samples.
  static PlanarCurve from_samples(std::vector<cplx> points);

  static PlanarCurve circle(cplx center, double radius, int samples);
  // Unit circle traced as (e^{it} + beta) / (1 + beta e^{it}), |beta| < 1:
  // nonuniform node spacing.
  static PlanarCurve mobius_circle(double beta, int samples);

  int size() const noexcept { return static_cast<int>(z_.size()); }
  const std::vector<cplx>& points() const noexcept { return z_; }
  const std::vector<cplx>& tangents() const noexcept { return dz_; }
  double theta(int j) const;

  // |dz/dtheta| at node j.
  double speed(int j) const { return std::abs(dz_[static_cast<std::size_t>(j)]); }
  // Arclength between neighbouring nodes, to first order.
  double node_spacing(int j) const;
  // Trapezoidal integral of |dz/dtheta|.
  double length() const;
  double signed_area() const;
  bool positively_oriented() const { return signed_area() > 0.0; }

  // Unit normal -i T/|T|: outward for a positively oriented outer boundary,
  // into the hole for a negatively oriented hole boundary.
  cplx right_normal(int j) const;

  // theta -> -theta, which flips the orientation.
  PlanarCurve reversed() const;
  // z -> scale * z + shift
  PlanarCurve transformed(cplx scale, cplx shift) const;

  // Trigonometric interpolant and its derivatives at an arbitrary parameter.
  cplx evaluate(double t) const;
  cplx evaluate_d1(double t) const;
  cplx evaluate_d2(double t) const;

  // Points at the half-shifted parameters theta_j + pi/M.
  std::vector<cplx> midpoints() const;

  // Area centroid and second moment  integral of (z - centroid)^2 dA.
  cplx centroid() const;
  cplx second_moment() const;

  // No two non-adjacent sample segments intersect.
  bool is_simple() const;

  // Winding number of the sampled polygon around w.
  int winding_number(cplx w) const;

  double diameter() const;

private:
  cplx eval_series(double t, int order) const;

  std::vector<cplx> z_;
  std::vector<cplx> dz_;
  std::vector<cplx> series_;  // c(-K..K) of z(theta), K = M/2 - 1
};

// Continuous branch of log along a closed sampled path: log|w| + i arg(w), arg
// unwrapped from its principal value at the first sample.
std::vector<cplx> unwrapped_log(std::span<const cplx> w);

// Symmetric Hausdorff distance between the two curves, with each sample
// projected onto the other curve's interpolant by Newton iteration.
double hausdorff_distance(const PlanarCurve& a, const PlanarCurve& b);

// Canonical gauge: area centroid at the origin, unit length, principal axis of
// the second moment along the real axis.
PlanarCurve gauge_normalize(const PlanarCurve& c);

// Hausdorff distance after gauge normalization, minimized over the two
// principal-axis orientations.
double gauge_distance(const PlanarCurve& a, const PlanarCurve& b);

}  // namespace dtncomm
