#include "dtncomm/cylinder_operators.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "dtncomm/error.hpp"

namespace dtncomm {

CylinderSpec::CylinderSpec(double h, ConformalBoundaryFactor p0, ConformalBoundaryFactor ph)
    : height(h), phi0(std::move(p0)), phi_h(std::move(ph)) {
  if (!(height > 0.0)) throw Error(ErrorKind::Parameter, "cylinder height must be positive");
}

CylinderSpec CylinderSpec::flat(double h, int grid_size) {
  const auto zero = [](double) { return 0.0; };
  return CylinderSpec(h, ConformalBoundaryFactor::from_function(zero, grid_size),
                      ConformalBoundaryFactor::from_function(zero, grid_size));
}

TwoCircleOperator::TwoCircleOperator(int order, Eigen::MatrixXcd entries, int window)
    : n_(order), w_(window < 0 ? order : window), m_(std::move(entries)) {
  const Eigen::Index dim = 2 * (2 * order + 1);
  if (m_.rows() != dim || m_.cols() != dim) {
    throw Error(ErrorKind::Parameter, "two-circle operator must be 2(2N+1) square");
  }
  if (w_ > n_) throw Error(ErrorKind::Window, "window exceeds truncation order");
}

Eigen::MatrixXcd TwoCircleOperator::windowed() const {
  const Eigen::Index b = 2 * w_ + 1;
  Eigen::MatrixXcd out(2 * b, 2 * b);
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      out.block(r * b, c * b, b, b) = m_.block(index(r, -w_), index(c, -w_), b, b);
    }
  }
  return out;
}

FlatDtnBlock flat_dtn_block(double height, int n) {
  if (!(height > 0.0)) throw Error(ErrorKind::Parameter, "cylinder height must be positive");
  if (n == 0) return {1.0 / height, -1.0 / height};
  const double an = std::abs(n);
  const double x = an * height;
  const double one_minus_q = -std::expm1(-2.0 * x);  // 1 - e^{-2x}
  const double coth = (1.0 + std::exp(-2.0 * x)) / one_minus_q;
  const double csch = 2.0 * std::exp(-x) / one_minus_q;
  return {an * coth, -an * csch};
}

double extension_coefficient(double height, int n) {
  if (n == 0) throw Error(ErrorKind::Parameter, "extension coefficient defined for n != 0");
  return -flat_dtn_block(height, n).self;
}

TwoCircleOperator flat_cylinder_dtn(double height, int order) {
  if (order < 0) throw Error(ErrorKind::TruncationOrder, "order must be >= 0");
  const int dim = 2 * order + 1;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2 * dim, 2 * dim);
  for (int n = -order; n <= order; ++n) {
    const auto b = flat_dtn_block(height, n);
    const int i0 = n + order;
    const int i1 = dim + n + order;
    m(i0, i0) = b.self;
    m(i1, i1) = b.self;
    m(i0, i1) = b.cross;
    m(i1, i0) = b.cross;
  }
  return TwoCircleOperator(order, std::move(m));
}

TwoCircleOperator dtn_cylinder(const CylinderSpec& spec, int order) {
  const TwoCircleOperator flat = flat_cylinder_dtn(spec.height, order);
  const int dim = 2 * order + 1;
  const auto t0 = multiplication_operator(spec.phi0.exp_neg_phi(), order).matrix();
  const auto th = multiplication_operator(spec.phi_h.exp_neg_phi(), order).matrix();
  Eigen::MatrixXcd m(2 * dim, 2 * dim);
  m.topRows(dim) = t0 * flat.matrix().topRows(dim);
  m.bottomRows(dim) = th * flat.matrix().bottomRows(dim);
  return TwoCircleOperator(order, std::move(m));
}

TwoCircleOperator boundary_laplacian_cylinder(const CylinderSpec& spec, int order) {
  const int dim = 2 * order + 1;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2 * dim, 2 * dim);
  m.topLeftCorner(dim, dim) = boundary_laplacian_disc(spec.phi0, order).matrix();
  m.bottomRightCorner(dim, dim) = boundary_laplacian_disc(spec.phi_h, order).matrix();
  return TwoCircleOperator(order, std::move(m));
}

CommutatorNorm commutator_norm_cylinder(const CylinderSpec& spec, int order, int window) {
  if (window < 0 || 2 * window > order) {
    throw Error(ErrorKind::Window, "commutator window W=" + std::to_string(window) +
                                       " must satisfy W <= N/2 (N=" +
                                       std::to_string(order) + ")");
  }
  const int n = order;
  const int w = window;
  const int nb = 2 * w + 1;
  const ConformalBoundaryFactor* factor[2] = {&spec.phi0, &spec.phi_h};

  std::vector<double> self(static_cast<std::size_t>(2 * n + 1));
  std::vector<double> cross(self.size());
  for (int m = -n; m <= n; ++m) {
    const auto b = flat_dtn_block(spec.height, m);
    self[static_cast<std::size_t>(m + n)] = b.self;
    cross[static_cast<std::size_t>(m + n)] = b.cross;
  }

  OperatorSlices lap[2];
  OperatorSlices lam[2][2];  // lam[c][c']: Lambda from circle c' data to circle c output
  for (int c = 0; c < 2; ++c) {
    lap[c] = boundary_laplacian_slices(*factor[c], n, w);
    for (int cp = 0; cp < 2; ++cp) {
      lam[c][cp] = scaled_toeplitz_slices(factor[c]->exp_neg_phi(), c == cp ? self : cross, n, w);
    }
  }

  Eigen::MatrixXcd comm(2 * nb, 2 * nb);
  Eigen::MatrixXcd lap_w = Eigen::MatrixXcd::Zero(2 * nb, 2 * nb);
  Eigen::MatrixXcd lam_w(2 * nb, 2 * nb);
  for (int c = 0; c < 2; ++c) {
    lap_w.block(c * nb, c * nb, nb, nb) = lap[c].rows.middleCols(n - w, nb);
    for (int cp = 0; cp < 2; ++cp) {
      comm.block(c * nb, cp * nb, nb, nb) =
          lap[c].rows * lam[c][cp].cols - lam[c][cp].rows * lap[cp].cols;
      lam_w.block(c * nb, cp * nb, nb, nb) = lam[c][cp].rows.middleCols(n - w, nb);
    }
  }
  return {comm.norm(), lap_w.norm() * lam_w.norm()};
}

std::pair<double, double> criterion_doubly_connected(const CylinderSpec& spec) {
  return {tail_max(spec.phi0.exp_neg_2phi(), 1), tail_max(spec.phi_h.exp_neg_2phi(), 1)};
}

}  // namespace dtncomm
