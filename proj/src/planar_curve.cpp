#include "dtncomm/planar_curve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "dtncomm/error.hpp"

namespace dtncomm {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double cross(cplx a, cplx b) { return a.real() * b.imag() - a.imag() * b.real(); }

bool segments_intersect(cplx p1, cplx p2, cplx q1, cplx q2) {
  const double d1 = cross(q2 - q1, p1 - q1);
  const double d2 = cross(q2 - q1, p2 - q1);
  const double d3 = cross(p2 - p1, q1 - p1);
  const double d4 = cross(p2 - p1, q2 - p1);
  return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0));
}

std::vector<cplx> series_of(std::span<const cplx> z) {
  const int m = static_cast<int>(z.size());
  return complex_coefficients(z, m / 2 - 1);
}

}  // namespace

PlanarCurve::PlanarCurve(std::vector<cplx> points, std::vector<cplx> tangents)
    : z_(std::move(points)), dz_(std::move(tangents)) {
  if (z_.size() < 8 || z_.size() % 2 != 0 || dz_.size() != z_.size()) {
    throw Error(ErrorKind::Curve, "curve needs an even number (>= 8) of samples with tangents");
  }
  for (const auto& t : dz_) {
    if (!(std::abs(t) > 0.0) || !std::isfinite(t.real()) || !std::isfinite(t.imag())) {
      throw Error(ErrorKind::Curve, "vanishing or non-finite tangent");
    }
  }
  series_ = series_of(z_);
}

PlanarCurve PlanarCurve::from_function(const std::function<cplx(double)>& z,
                                       const std::function<cplx(double)>& dz, int samples) {
  samples = even_grid(samples);
  std::vector<cplx> p, t;
  p.reserve(static_cast<std::size_t>(samples));
  t.reserve(static_cast<std::size_t>(samples));
  double scale = 0.0;
  for (double th : grid_nodes(samples)) {
    p.push_back(z(th));
    t.push_back(dz(th));
    scale = std::max(scale, std::abs(p.back()));
  }
  if (std::abs(z(kTwoPi) - p.front()) > 1e-9 * std::max(scale, 1.0)) {
    throw Error(ErrorKind::Curve, "parametrization does not close");
  }
  return PlanarCurve(std::move(p), std::move(t));
}

PlanarCurve PlanarCurve::from_samples(std::vector<cplx> points) {
  const int m = static_cast<int>(points.size());
  if (m < 8 || m % 2 != 0) throw Error(ErrorKind::Curve, "curve needs an even number >= 8 of samples");
  auto c = series_of(points);
  const int k_max = m / 2 - 1;
  for (int k = -k_max; k <= k_max; ++k) c[static_cast<std::size_t>(k + k_max)] *= cplx(0.0, k);
  auto t = complex_grid_values(c, m);
  return PlanarCurve(std::move(points), std::move(t));
}

PlanarCurve PlanarCurve::circle(cplx center, double radius, int samples) {
  return from_function([=](double t) { return center + radius * std::polar(1.0, t); },
                       [=](double t) { return cplx(0.0, radius) * std::polar(1.0, t); }, samples);
}

PlanarCurve PlanarCurve::mobius_circle(double beta, int samples) {
  if (!(std::abs(beta) < 1.0)) throw Error(ErrorKind::Parameter, "|beta| must be < 1");
  return from_function(
      [beta](double t) {
        const cplx e = std::polar(1.0, t);
        return (e + beta) / (1.0 + beta * e);
      },
      [beta](double t) {
        const cplx e = std::polar(1.0, t);
        const cplx d = 1.0 + beta * e;
        return cplx(0.0, 1.0) * e * (1.0 - beta * beta) / (d * d);
      },
      samples);
}

double PlanarCurve::theta(int j) const { return kTwoPi * j / size(); }

double PlanarCurve::node_spacing(int j) const { return speed(j) * kTwoPi / size(); }

double PlanarCurve::length() const {
  double s = 0.0;
  for (const auto& t : dz_) s += std::abs(t);
  return s * kTwoPi / size();
}

double PlanarCurve::signed_area() const {
  double s = 0.0;
  for (std::size_t j = 0; j < z_.size(); ++j) s += (std::conj(z_[j]) * dz_[j]).imag();
  return 0.5 * s * kTwoPi / size();
}

cplx PlanarCurve::right_normal(int j) const {
  const cplx t = dz_[static_cast<std::size_t>(j)];
  return cplx(0.0, -1.0) * t / std::abs(t);
}

PlanarCurve PlanarCurve::reversed() const {
  const std::size_t m = z_.size();
  std::vector<cplx> p(m), t(m);
  for (std::size_t j = 0; j < m; ++j) {
    const std::size_t src = (m - j) % m;
    p[j] = z_[src];
    t[j] = -dz_[src];
  }
  return PlanarCurve(std::move(p), std::move(t));
}

PlanarCurve PlanarCurve::transformed(cplx scale, cplx shift) const {
  std::vector<cplx> p(z_.size()), t(z_.size());
  for (std::size_t j = 0; j < z_.size(); ++j) {
    p[j] = scale * z_[j] + shift;
    t[j] = scale * dz_[j];
  }
  return PlanarCurve(std::move(p), std::move(t));
}

cplx PlanarCurve::eval_series(double t, int order) const {
  const int k_max = static_cast<int>(series_.size() - 1) / 2;
  const cplx step = std::polar(1.0, t);
  cplx e = std::polar(1.0, -k_max * t);
  cplx acc{};
  for (int k = -k_max; k <= k_max; ++k) {
    cplx term = series_[static_cast<std::size_t>(k + k_max)] * e;
    for (int o = 0; o < order; ++o) term *= cplx(0.0, k);
    acc += term;
    e *= step;
  }
  return acc;
}

cplx PlanarCurve::evaluate(double t) const { return eval_series(t, 0); }
cplx PlanarCurve::evaluate_d1(double t) const { return eval_series(t, 1); }
cplx PlanarCurve::evaluate_d2(double t) const { return eval_series(t, 2); }

std::vector<cplx> PlanarCurve::midpoints() const {
  const int m = size();
  auto c = series_;
  const int k_max = m / 2 - 1;
  for (int k = -k_max; k <= k_max; ++k) {
    c[static_cast<std::size_t>(k + k_max)] *= std::polar(1.0, k * std::numbers::pi / m);
  }
  return complex_grid_values(c, m);
}

cplx PlanarCurve::centroid() const {
  cplx s{};
  for (std::size_t j = 0; j < z_.size(); ++j) s += std::norm(z_[j]) * dz_[j];
  s *= kTwoPi / size();
  return s / (cplx(0.0, 2.0) * signed_area());
}

cplx PlanarCurve::second_moment() const {
  const cplx c = centroid();
  cplx s{};
  for (std::size_t j = 0; j < z_.size(); ++j) {
    const cplx d = z_[j] - c;
    s += d * d * std::conj(d) * dz_[j];
  }
  s *= kTwoPi / size();
  return s / cplx(0.0, 2.0);
}

bool PlanarCurve::is_simple() const {
  const int m = size();
  for (int i = 0; i < m; ++i) {
    const cplx p1 = z_[static_cast<std::size_t>(i)];
    const cplx p2 = z_[static_cast<std::size_t>((i + 1) % m)];
    for (int j = i + 2; j < m; ++j) {
      if (i == 0 && j == m - 1) continue;
      const cplx q1 = z_[static_cast<std::size_t>(j)];
      const cplx q2 = z_[static_cast<std::size_t>((j + 1) % m)];
      if (segments_intersect(p1, p2, q1, q2)) return false;
    }
  }
  return true;
}

int PlanarCurve::winding_number(cplx w) const {
  double total = 0.0;
  const std::size_t m = z_.size();
  for (std::size_t j = 0; j < m; ++j) {
    total += std::arg((z_[(j + 1) % m] - w) / (z_[j] - w));
  }
  return static_cast<int>(std::lround(total / kTwoPi));
}

double PlanarCurve::diameter() const {
  double d = 0.0;
  for (std::size_t i = 0; i < z_.size(); ++i) {
    for (std::size_t j = i + 1; j < z_.size(); ++j) d = std::max(d, std::abs(z_[i] - z_[j]));
  }
  return d;
}

std::vector<cplx> unwrapped_log(std::span<const cplx> w) {
  std::vector<cplx> out;
  out.reserve(w.size());
  double arg = 0.0;
  for (std::size_t j = 0; j < w.size(); ++j) {
    if (w[j] == cplx{}) throw Error(ErrorKind::Curve, "log of zero along path");
    arg = (j == 0) ? std::arg(w[0]) : arg + std::arg(w[j] / w[j - 1]);
    out.emplace_back(std::log(std::abs(w[j])), arg);
  }
  return out;
}

namespace {

double directed_distance(const PlanarCurve& from, const PlanarCurve& to) {
  const int m = to.size();
  const double h = kTwoPi / m;
  double worst = 0.0;
  for (const auto& p : from.points()) {
    int best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (int j = 0; j < m; ++j) {
      const double d = std::abs(to.points()[static_cast<std::size_t>(j)] - p);
      if (d < best_d) {
        best_d = d;
        best = j;
      }
    }
    double t = to.theta(best);
    for (int it = 0; it < 12; ++it) {
      const cplx r = to.evaluate(t) - p;
      const cplx d1 = to.evaluate_d1(t);
      const cplx d2 = to.evaluate_d2(t);
      const double g = (std::conj(r) * d1).real();
      const double dg = std::norm(d1) + (std::conj(r) * d2).real();
      if (!(dg > 0.0)) break;
      const double step = std::clamp(g / dg, -h, h);
      t -= step;
      if (std::abs(step) < 1e-15) break;
    }
    best_d = std::min(best_d, std::abs(to.evaluate(t) - p));
    worst = std::max(worst, best_d);
  }
  return worst;
}

}  // namespace

double hausdorff_distance(const PlanarCurve& a, const PlanarCurve& b) {
  return std::max(directed_distance(a, b), directed_distance(b, a));
}

PlanarCurve gauge_normalize(const PlanarCurve& c) {
  const cplx center = c.centroid();
  const double len = c.length();
  const double angle = 0.5 * std::arg(c.second_moment());
  const cplx scale = std::polar(1.0 / len, -angle);
  return c.transformed(scale, -scale * center);
}

double gauge_distance(const PlanarCurve& a, const PlanarCurve& b) {
  const PlanarCurve ga = gauge_normalize(a);
  const PlanarCurve gb = gauge_normalize(b);
  const double d0 = hausdorff_distance(ga, gb);
  const double d1 = hausdorff_distance(ga, gb.transformed(-1.0, 0.0));
  return std::min(d0, d1);
}

}  // namespace dtncomm
