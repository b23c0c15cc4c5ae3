#include "dtncomm/domain_atlas.hpp"

#include <cmath>
#include <numbers>

#include "dtncomm/error.hpp"

namespace dtncomm {

std::string_view to_string(CaseTag tag) {
  switch (tag) {
    case CaseTag::Disc: return "disc";
    case CaseTag::LogOval: return "log_oval";
    case CaseTag::TwoLogReduced: return "two_log_reduced";
  }
  return "unknown";
}

cplx Case3Reduction::mu(cplx z) const { return (z + 1.0 / b_rot) / (z / b_rot + 1.0); }

cplx Case3Reduction::psi_rotated(cplx z) const {
  return prefactor * std::log((z - a_rot) / (z - b_rot));
}

cplx Case3Reduction::psi_composed(cplx z) const { return psi_rotated(mu(z)); }

cplx Case3Reduction::psi_closed_form(cplx z) const {
  return prefactor * std::log(affine_a * z + affine_b);
}

Case3Reduction case3_reduce(cplx a, cplx b) {
  if (std::abs(a - b) <= kSquareRootTolerance * std::max(std::abs(a), std::abs(b))) {
    throw Error(ErrorKind::Degenerate, "case3_reduce needs distinct roots");
  }
  if (!(std::abs(a) > 1.0) || !(std::abs(b) > 1.0)) {
    throw Error(ErrorKind::OuterViolation, "roots must lie outside the closed unit disc");
  }
  Case3Reduction r;
  r.a = a;
  r.b = b;
  r.rotation = std::arg(b);
  const cplx unrot = std::polar(1.0, -r.rotation);
  r.a_rot = a * unrot;
  r.b_rot = std::abs(b);
  r.prefactor = 1.0 / (r.a_rot - r.b_rot);
  const double denom = r.b_rot * r.b_rot - 1.0;
  r.affine_a = (r.a_rot - r.b_rot) / denom;
  r.affine_b = (r.a_rot * r.b_rot - 1.0) / denom;
  r.reduced_root = -r.affine_b / r.affine_a;
  r.oval_a = std::abs(r.reduced_root);
  return r;
}

PlanarCurve log_oval_boundary(double a, int samples) {
  if (!(a > 1.0)) throw Error(ErrorKind::Parameter, "log oval parameter must satisfy a > 1");
  auto z = [a](double t) {
    const cplx w = std::polar(1.0, t) - a;
    // w stays in the left half-plane; arg taken in (pi/2, 3pi/2).
    const double arg = std::numbers::pi + std::atan2(-w.imag(), -w.real());
    return cplx(std::log(std::abs(w)), arg);
  };
  auto dz = [a](double t) {
    const cplx e = std::polar(1.0, t);
    return cplx(0.0, 1.0) * e / (e - a);
  };
  return PlanarCurve::from_function(z, dz, samples);
}

PlanarCurve normalized_log_oval(double a, int samples) {
  const cplx log_neg_a(std::log(a), std::numbers::pi);
  return log_oval_boundary(a, samples).transformed(a, -a * log_neg_a);
}

ConformalBoundaryFactor induced_conformal_factor(const OuterPolynomial& p, int grid_size) {
  if (!p.is_outer(0.0)) throw Error(ErrorKind::OuterViolation, "p has a root in the closed disc");
  return ConformalBoundaryFactor::from_function(
      [&p](double t) { return -std::log(std::abs(p.evaluate(std::polar(1.0, t)))); }, grid_size);
}

namespace {

PlanarCurve mobius_curve(const std::array<cplx, 4>& m, int samples) {
  auto z = [m](double t) {
    const cplx e = std::polar(1.0, t);
    return (m[0] * e + m[1]) / (m[2] * e + m[3]);
  };
  auto dz = [m](double t) {
    const cplx e = std::polar(1.0, t);
    const cplx den = m[2] * e + m[3];
    return (m[0] * m[3] - m[1] * m[2]) / (den * den) * cplx(0.0, 1.0) * e;
  };
  return PlanarCurve::from_function(z, dz, samples);
}

// scale * log((e^{i theta} - a) / (e^{i theta} - b)) on a continuous branch;
// b = 0 stands for the single-log case scale * log(e^{i theta} - a).
PlanarCurve log_ratio_curve(cplx scale, cplx a, std::optional<cplx> b, int samples) {
  samples = even_grid(samples);
  std::vector<cplx> w, tangents;
  for (int j = 0; j <= samples; ++j) {
    const cplx e = std::polar(1.0, 2.0 * std::numbers::pi * j / samples);
    w.push_back(b ? (e - a) / (e - *b) : (e - a));
    if (j < samples) {
      const cplx dlog = b ? (1.0 / (e - a) - 1.0 / (e - *b)) : 1.0 / (e - a);
      tangents.push_back(scale * dlog * cplx(0.0, 1.0) * e);
    }
  }
  auto logs = unwrapped_log(w);
  if (std::abs(logs.back() - logs.front()) > 1e-9 * (1.0 + std::abs(logs.front()))) {
    throw Error(ErrorKind::Curve, "logarithmic boundary does not close");
  }
  logs.pop_back();
  for (auto& v : logs) v *= scale;
  return PlanarCurve(std::move(logs), std::move(tangents));
}

}  // namespace

ReconstructionResult reconstruct(const OuterPolynomial& p, int samples) {
  const int deg = p.degree();
  if (deg > 2) {
    throw Error(ErrorKind::OutOfClassification,
                "degree " + std::to_string(deg) + " exceeds the classified range (<= 2)");
  }
  for (const auto& r : p.roots()) {
    if (!(std::abs(r) > 1.0)) {
      throw Error(ErrorKind::OuterViolation, "p has a root in the closed unit disc");
    }
  }
  const auto coeffs = p.coeffs();
  std::vector<cplx> roots = p.roots();

  if (deg == 0) {
    std::array<cplx, 4> m{1.0 / coeffs[0], 0.0, 0.0, 1.0};
    return ReconstructionResult{CaseTag::Disc, std::nullopt, roots, m, 0.0, std::nullopt,
                                mobius_curve(m, samples)};
  }

  if (deg == 1) {
    const cplx lead = coeffs[1];
    const cplx a = roots[0];
    return ReconstructionResult{CaseTag::LogOval,         std::nullopt, roots, {},
                                std::abs(a),              std::nullopt,
                                log_ratio_curve(1.0 / lead, a, std::nullopt, samples)};
  }

  const cplx lead = coeffs[2];
  if (std::abs(roots[0]) < std::abs(roots[1])) std::swap(roots[0], roots[1]);
  const cplx a = roots[0];
  const cplx b = roots[1];
  const double sep = std::abs(a - b) / std::max(std::abs(a), std::abs(b));

  std::optional<CaseTag> alternate;
  if (sep >= kSquareRootTolerance / 100.0 && sep <= kSquareRootTolerance * 100.0) {
    alternate = sep <= kSquareRootTolerance ? CaseTag::TwoLogReduced : CaseTag::Disc;
  }

  if (sep <= kSquareRootTolerance) {
    const cplx alpha = 0.5 * (a + b);
    // integral_0^z dw / (lead (w - alpha)^2) = z / (lead alpha (alpha - z))
    std::array<cplx, 4> m{1.0, 0.0, -lead * alpha, lead * alpha * alpha};
    return ReconstructionResult{CaseTag::Disc, alternate, roots, m, 0.0, std::nullopt,
                                mobius_curve(m, samples)};
  }

  const Case3Reduction red = case3_reduce(a, b);
  const cplx scale = 1.0 / (lead * (a - b));
  return ReconstructionResult{CaseTag::TwoLogReduced, alternate, roots, {}, red.oval_a, red,
                              log_ratio_curve(scale, a, b, samples)};
}

}  // namespace dtncomm
