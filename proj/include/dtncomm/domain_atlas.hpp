#pragma once

// Planar domains with commuting boundary Laplacian and DtN map, rebuilt from
// their Fejer-Riesz factor p via the conformal map
//
//     psi(z) = integral_0^z dw / p(w),     deg p <= 2, p outer.
//
//   disc            p = c (z - a)^2 or constant: psi is Mobius.
//   log_oval        p = c (z - a):  psi = log(z - a) / c + const.
//   two_log_reduced p = c (z - a)(z - b), a != b: reduced to a single log
//                   by the disc automorphism mu(z) = (z + 1/b)/(z/b + 1).

#include <array>
#include <complex>
#include <optional>
#include <string_view>
#include <vector>

#include "dtncomm/disc_operators.hpp"
#include "dtncomm/fejer_riesz.hpp"
#include "dtncomm/planar_curve.hpp"

namespace dtncomm {

enum class CaseTag { Disc, LogOval, TwoLogReduced };

std::string_view to_string(CaseTag tag);

// Relative root separation below which p counts as a perfect square.
inline constexpr double kSquareRootTolerance = 1e-8;

struct Case3Reduction {
  cplx a;                 // input roots
  cplx b;
  double rotation = 0.0;  // beta: z -> e^{i beta} z makes b real positive
  cplx a_rot;             // a e^{-i beta}
  double b_rot = 0.0;     // |b|
  cplx prefactor;         // 1 / (a_rot - b_rot)
  cplx affine_a;          // psi(mu(z)) = prefactor * log(affine_a z + affine_b)
  cplx affine_b;
  cplx reduced_root;      // -affine_b / affine_a: single-log singularity
  double oval_a = 0.0;    // |reduced_root| > 1

  cplx mu(cplx z) const;
  // prefactor * log((z - a_rot)/(z - b_rot)), principal branch.
  cplx psi_rotated(cplx z) const;
  // psi_rotated(mu(z)) by composition.
  cplx psi_composed(cplx z) const;
  // prefactor * log(affine_a z + affine_b), principal branch.
  cplx psi_closed_form(cplx z) const;
};

Case3Reduction case3_reduce(cplx a, cplx b);

struct ReconstructionResult {
  CaseTag tag = CaseTag::Disc;
  // Set when the perfect-square test is within a factor 100 of its threshold.
  std::optional<CaseTag> alternate;
  std::vector<cplx> roots;
  // Disc: psi(z) = (m0 z + m1) / (m2 z + m3).
  std::array<cplx, 4> mobius{cplx(1.0), cplx(0.0), cplx(0.0), cplx(1.0)};
  // Log oval (directly or after reduction): parameter a > 1.
  double oval_a = 0.0;
  std::optional<Case3Reduction> reduction;
  PlanarCurve curve;
};

ReconstructionResult reconstruct(const OuterPolynomial& p, int samples = 512);

// theta -> log(e^{i theta} - a), continuous branch with arg in (pi/2, 3pi/2).
PlanarCurve log_oval_boundary(double a, int samples);

// a * (curve - log(-a)); tends to the unit circle (traversed as -z) as a grows.
PlanarCurve normalized_log_oval(double a, int samples);

// phi = -log |p(e^{i theta})| on the grid, so e^{-2phi} = |p|^2.
ConformalBoundaryFactor induced_conformal_factor(const OuterPolynomial& p, int grid_size);

}  // namespace dtncomm
