#pragma once

// Dirichlet-to-Neumann map of a smooth planar domain computed without any
// conformal structure: harmonic functions are represented as
//
//     u(x) = c_0 + sum_j c_j log |x - q_j|
//
// with sources q_j pushed off each boundary curve (outside the outer curve,
// inside each hole), and the coefficients fitted by truncated-SVD least
// squares on boundary collocation points (sample nodes and midpoints).
//
// Boundary functions are expanded per component in exp(i k theta), theta the
// curve parameter; all operator comparisons happen on the window |k| <= n_max.

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "dtncomm/disc_operators.hpp"
#include "dtncomm/planar_curve.hpp"

namespace dtncomm {

class DomainSpec {
public:
  // The outer curve is stored positively oriented and holes negatively
  // oriented; curves given the other way round are reversed (theta -> -theta).
  explicit DomainSpec(PlanarCurve outer, std::vector<PlanarCurve> holes = {});

  int components() const noexcept { return 1 + static_cast<int>(holes_.size()); }
  // 0 = outer, 1.. = holes
  const PlanarCurve& component(int i) const;
  // Total number of boundary nodes.
  int total_nodes() const;
  // Offset of component i in stacked node vectors.
  int node_offset(int i) const;

  // Smallest distance from component i to any other component (infinity when
  // there is only one).
  double clearance(int i) const;

private:
  PlanarCurve outer_;
  std::vector<PlanarCurve> holes_;
};

struct ChargeLayout {
  std::vector<cplx> sources;
  std::vector<int> owner;  // component each source belongs to
  double offset = 4.0;     // in units of local node spacing

  // One source per boundary node, pushed offset * spacing along the domain's
  // outward normal, capped at 0.3 * clearance.
  static ChargeLayout standard(const DomainSpec& domain, double offset = 4.0);

  // Throws Layout if an outer source falls inside the outer curve or a hole
  // source falls outside its hole.
  void validate(const DomainSpec& domain) const;
};

struct OracleOptions {
  double svd_cutoff = 1e-12;
  double accuracy_tol = 1e-6;
};

class MfsSolver {
public:
  MfsSolver(const DomainSpec& domain, ChargeLayout layout, OracleOptions options = {});

  const DomainSpec& domain() const noexcept { return domain_; }
  const ChargeLayout& layout() const noexcept { return layout_; }
  Eigen::Index effective_rank() const noexcept { return rank_; }
  Eigen::Index unknowns() const noexcept { return system_.cols(); }

  struct Solution {
    Eigen::MatrixXcd coefficients;       // unknowns x columns
    Eigen::MatrixXcd normal_derivative;  // stacked boundary nodes x columns
    double residual = 0.0;               // max relative collocation residual
  };

  // Columns of Dirichlet data at the stacked boundary nodes. Throws Accuracy
  // if the residual exceeds the configured tolerance.
  Solution solve(const Eigen::MatrixXcd& node_data) const;

  // u at an interior point for the given coefficient column.
  cplx evaluate(const Eigen::VectorXcd& coefficients, cplx x) const;

  // Dense map from node samples to outward normal derivative samples.
  Eigen::MatrixXd nodal_dtn() const;

private:
  Eigen::MatrixXcd collocation_data(const Eigen::MatrixXcd& node_data) const;

  DomainSpec domain_;
  ChargeLayout layout_;
  OracleOptions options_;
  Eigen::MatrixXd system_;   // collocation rows x unknowns
  Eigen::MatrixXd normal_;   // nodes x unknowns
  Eigen::BDCSVD<Eigen::MatrixXd> svd_;
  Eigen::Index rank_ = 0;
};

struct DirichletSolution {
  std::vector<double> normal_derivative;  // stacked nodes
  double residual = 0.0;
  Eigen::VectorXd coefficients;
  std::vector<cplx> sources;

  double evaluate(cplx x) const;
};

DirichletSolution solve_dirichlet(const DomainSpec& domain, const ChargeLayout& layout,
                                  std::span<const double> boundary_data,
                                  OracleOptions options = {});

struct SampledDtN {
  int n_max = 0;
  int components = 1;
  // (component, frequency) x (component, frequency), frequencies -n_max..n_max.
  Eigen::MatrixXcd fourier;
  // Same with the outputs weighted by arclength: Hermitian for a self-adjoint map.
  Eigen::MatrixXcd weighted;
  double residual = 0.0;
  Eigen::Index effective_rank = 0;
  double symmetry_error = 0.0;  // ||W - W^H||_F / ||W||_F
  double flux_error = 0.0;      // total flux of constants, relative

  Eigen::Index index(int component, int freq) const {
    return component * (2 * n_max + 1) + freq + n_max;
  }
  cplx operator()(int out_comp, int k, int in_comp, int n) const {
    return fourier(index(out_comp, k), index(in_comp, n));
  }
};

SampledDtN dtn_matrix(const MfsSolver& solver, int n_max);
SampledDtN dtn_matrix(const DomainSpec& domain, const ChargeLayout& layout, int n_max,
                      OracleOptions options = {});

// -w^{-1} d/dtheta (w^{-1} d/dtheta f), w = |dz/dtheta|, applied spectrally to
// node samples.
std::vector<cplx> apply_curve_laplacian(const PlanarCurve& curve, std::span<const cplx> samples);

// Windowed Fourier matrix of the boundary Laplacian of the curve.
Eigen::MatrixXcd boundary_laplacian_curve(const PlanarCurve& curve, int n_max);

struct OracleCommutator {
  double norm = 0.0;
  double scale = 0.0;
  double residual = 0.0;
  Eigen::Index effective_rank = 0;
  double relative() const { return scale > 0.0 ? norm / scale : norm; }
};

OracleCommutator commutator_norm_oracle(const MfsSolver& solver, int n_max);
OracleCommutator commutator_norm_oracle(const DomainSpec& domain, const ChargeLayout& layout,
                                        int n_max, OracleOptions options = {});

// Fourier coefficients -n..n of each component of stacked node samples.
Eigen::VectorXcd project_to_window(const DomainSpec& domain, std::span<const cplx> stacked,
                                   int n_max);

}  // namespace dtncomm
