#pragma once

// Flat cylinder C_H = [0, H] x S^1 (unit radius) with conformal factor phi,
// boundary circles h = 0 and h = H. Operators act on the doubled coefficient
// space: frequencies -N..N on circle 0 followed by -N..N on circle H.

#include <utility>

#include <Eigen/Dense>

#include "dtncomm/disc_operators.hpp"

namespace dtncomm {

struct CylinderSpec {
  CylinderSpec(double height, ConformalBoundaryFactor phi0, ConformalBoundaryFactor phi_h);

  double height;
  ConformalBoundaryFactor phi0;
  ConformalBoundaryFactor phi_h;

  static CylinderSpec flat(double height, int grid_size);
};

class TwoCircleOperator {
public:
  TwoCircleOperator(int order, Eigen::MatrixXcd entries, int window = -1);

  int order() const noexcept { return n_; }
  int window() const noexcept { return w_; }
  const Eigen::MatrixXcd& matrix() const noexcept { return m_; }

  // circle 0 or 1; frequency -N..N
  Eigen::Index index(int circle, int freq) const { return circle * (2 * n_ + 1) + freq + n_; }
  cplx operator()(int out_circle, int k, int in_circle, int n) const {
    return m_(index(out_circle, k), index(in_circle, n));
  }

  // Windowed rows/columns on both circles.
  Eigen::MatrixXcd windowed() const;

private:
  int n_;
  int w_;
  Eigen::MatrixXcd m_;
};

// Flat-metric 2x2 block at frequency n:
// [[self, cross], [cross, self]] maps Dirichlet data on (circle 0, circle H)
// to outward normal derivatives.
struct FlatDtnBlock {
  double self = 0.0;
  double cross = 0.0;
};

// n != 0: self = |n| coth(|n| H), cross = -|n| / sinh(|n| H); n = 0: +-1/H.
// Evaluated through e^{-2|n|H} so large |n|H cannot overflow.
FlatDtnBlock flat_dtn_block(double height, int n);

// -n (e^{nH} + e^{-nH}) / (e^{nH} - e^{-nH}): the h-derivative at h = 0 of the
// extension that equals e^{in theta} on circle 0 and vanishes on circle H.
double extension_coefficient(double height, int n);

TwoCircleOperator flat_cylinder_dtn(double height, int order);

// Dense assembly of Lambda_phi = diag(e^{-phi0}, e^{-phiH}) Lambda_0.
TwoCircleOperator dtn_cylinder(const CylinderSpec& spec, int order);
// Per-circle boundary Laplacians, block diagonal.
TwoCircleOperator boundary_laplacian_cylinder(const CylinderSpec& spec, int order);

CommutatorNorm commutator_norm_cylinder(const CylinderSpec& spec, int order, int window);

// (max_{|k|>=1} |c_{e^{-2phi0}}(k)|, same on circle H)
std::pair<double, double> criterion_doubly_connected(const CylinderSpec& spec);

}  // namespace dtncomm
