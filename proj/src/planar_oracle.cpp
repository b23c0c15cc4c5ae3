#include "dtncomm/planar_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "dtncomm/error.hpp"

namespace dtncomm {

namespace {

constexpr double kCapFraction = 0.3;

std::vector<cplx> half_shift(std::span<const cplx> samples) {
  const int m = static_cast<int>(samples.size());
  const int kmax = m / 2 - 1;
  auto c = complex_coefficients(samples, kmax);
  for (int k = -kmax; k <= kmax; ++k) {
    c[static_cast<std::size_t>(k + kmax)] *= std::polar(1.0, k * std::numbers::pi / m);
  }
  return complex_grid_values(c, m);
}

std::vector<cplx> spectral_derivative(std::span<const cplx> samples) {
  const int m = static_cast<int>(samples.size());
  const int kmax = m / 2 - 1;
  auto c = complex_coefficients(samples, kmax);
  for (int k = -kmax; k <= kmax; ++k) c[static_cast<std::size_t>(k + kmax)] *= cplx(0.0, k);
  return complex_grid_values(c, m);
}

double distance_to_curve(cplx x, const PlanarCurve& c) {
  double best = std::numeric_limits<double>::infinity();
  for (const cplx& z : c.points()) best = std::min(best, std::abs(z - x));
  return best;
}

}  // namespace

DomainSpec::DomainSpec(PlanarCurve outer, std::vector<PlanarCurve> holes)
    : outer_(outer.positively_oriented() ? std::move(outer) : outer.reversed()) {
  for (auto& h : holes) {
    holes_.push_back(h.positively_oriented() ? h.reversed() : std::move(h));
  }
  for (const auto& h : holes_) {
    for (const cplx& z : h.points()) {
      if (outer_.winding_number(z) == 0) {
        throw Error(ErrorKind::Curve, "hole boundary leaves the outer domain");
      }
    }
  }
}

const PlanarCurve& DomainSpec::component(int i) const {
  if (i < 0 || i >= components()) throw Error(ErrorKind::Parameter, "component index out of range");
  return i == 0 ? outer_ : holes_[static_cast<std::size_t>(i - 1)];
}

int DomainSpec::total_nodes() const { return node_offset(components()); }

int DomainSpec::node_offset(int i) const {
  int off = 0;
  for (int c = 0; c < i; ++c) off += component(c).size();
  return off;
}

double DomainSpec::clearance(int i) const {
  double best = std::numeric_limits<double>::infinity();
  const PlanarCurve& ci = component(i);
  for (int c = 0; c < components(); ++c) {
    if (c == i) continue;
    for (const cplx& z : component(c).points()) best = std::min(best, distance_to_curve(z, ci));
  }
  return best;
}

ChargeLayout ChargeLayout::standard(const DomainSpec& domain, double offset) {
  if (!(offset > 0.0)) throw Error(ErrorKind::Parameter, "source offset must be positive");
  ChargeLayout layout;
  layout.offset = offset;
  for (int c = 0; c < domain.components(); ++c) {
    const PlanarCurve& curve = domain.component(c);
    double cap = kCapFraction * domain.clearance(c);
    if (c > 0) {
      // sources must also stay well inside the hole
      const cplx centre = curve.centroid();
      cap = std::min(cap, kCapFraction * distance_to_curve(centre, curve));
    }
    for (int j = 0; j < curve.size(); ++j) {
      const double d = std::min(offset * curve.node_spacing(j), cap);
      layout.sources.push_back(curve.points()[static_cast<std::size_t>(j)] +
                               d * curve.right_normal(j));
      layout.owner.push_back(c);
    }
  }
  layout.validate(domain);
  return layout;
}

void ChargeLayout::validate(const DomainSpec& domain) const {
  if (sources.size() != owner.size() || sources.empty()) {
    throw Error(ErrorKind::Layout, "charge layout is empty or inconsistent");
  }
  for (std::size_t j = 0; j < sources.size(); ++j) {
    const int c = owner[j];
    if (c < 0 || c >= domain.components()) throw Error(ErrorKind::Layout, "bad source owner");
    const int wind = domain.component(c).winding_number(sources[j]);
    const bool ok = c == 0 ? wind == 0 : wind != 0;
    if (!ok) {
      throw Error(ErrorKind::Layout, "source " + std::to_string(j) +
                                         " lies on the wrong side of component " +
                                         std::to_string(c));
    }
  }
}

MfsSolver::MfsSolver(const DomainSpec& domain, ChargeLayout layout, OracleOptions options)
    : domain_(domain), layout_(std::move(layout)), options_(options) {
  layout_.validate(domain_);
  const Eigen::Index ns = static_cast<Eigen::Index>(layout_.sources.size());
  const int nodes = domain_.total_nodes();
  system_.resize(2 * nodes, ns + 1);
  normal_.resize(nodes, ns + 1);

  for (int c = 0; c < domain_.components(); ++c) {
    const PlanarCurve& curve = domain_.component(c);
    const auto mids = curve.midpoints();
    const int off = domain_.node_offset(c);
    for (int j = 0; j < curve.size(); ++j) {
      const cplx x = curve.points()[static_cast<std::size_t>(j)];
      const cplx xm = mids[static_cast<std::size_t>(j)];
      const cplx nu = curve.right_normal(j);
      for (Eigen::Index s = 0; s < ns; ++s) {
        const cplx q = layout_.sources[static_cast<std::size_t>(s)];
        const cplx d = x - q;
        system_(off + j, s) = std::log(std::abs(d));
        system_(nodes + off + j, s) = std::log(std::abs(xm - q));
        normal_(off + j, s) = (d * std::conj(nu)).real() / std::norm(d);
      }
      system_(off + j, ns) = 1.0;
      system_(nodes + off + j, ns) = 1.0;
      normal_(off + j, ns) = 0.0;
    }
  }

  svd_.compute(system_, Eigen::ComputeThinU | Eigen::ComputeThinV);
  svd_.setThreshold(options_.svd_cutoff);
  rank_ = svd_.rank();
  if (rank_ < system_.cols() / 2) {
    throw Error(ErrorKind::Layout, "collocation system collapsed to rank " +
                                       std::to_string(rank_) + " of " +
                                       std::to_string(system_.cols()));
  }
}

Eigen::MatrixXcd MfsSolver::collocation_data(const Eigen::MatrixXcd& node_data) const {
  const int nodes = domain_.total_nodes();
  Eigen::MatrixXcd rhs(2 * nodes, node_data.cols());
  rhs.topRows(nodes) = node_data;
  for (int c = 0; c < domain_.components(); ++c) {
    const int m = domain_.component(c).size();
    const int off = domain_.node_offset(c);
    std::vector<cplx> col(static_cast<std::size_t>(m));
    for (Eigen::Index k = 0; k < node_data.cols(); ++k) {
      for (int j = 0; j < m; ++j) col[static_cast<std::size_t>(j)] = node_data(off + j, k);
      const auto shifted = half_shift(col);
      for (int j = 0; j < m; ++j) rhs(nodes + off + j, k) = shifted[static_cast<std::size_t>(j)];
    }
  }
  return rhs;
}

MfsSolver::Solution MfsSolver::solve(const Eigen::MatrixXcd& node_data) const {
  if (node_data.rows() != domain_.total_nodes()) {
    throw Error(ErrorKind::Parameter, "Dirichlet data must have one row per boundary node");
  }
  if (!node_data.allFinite()) throw Error(ErrorKind::Parameter, "Dirichlet data is not finite");
  const Eigen::MatrixXcd rhs = collocation_data(node_data);
  // real system: solve real and imaginary parts together
  const Eigen::Index nc = rhs.cols();
  Eigen::MatrixXd b(rhs.rows(), 2 * nc);
  b.leftCols(nc) = rhs.real();
  b.rightCols(nc) = rhs.imag();
  const Eigen::MatrixXd x = svd_.solve(b);
  const Eigen::MatrixXd r = system_ * x - b;

  Solution out;
  out.coefficients = x.leftCols(nc).cast<cplx>() + cplx(0.0, 1.0) * x.rightCols(nc).cast<cplx>();
  const Eigen::MatrixXd dn = normal_ * x;
  out.normal_derivative =
      dn.leftCols(nc).cast<cplx>() + cplx(0.0, 1.0) * dn.rightCols(nc).cast<cplx>();
  for (Eigen::Index k = 0; k < nc; ++k) {
    const double amp = rhs.col(k).cwiseAbs().maxCoeff();
    if (amp == 0.0) continue;
    const double res = std::hypot(r.col(k).cwiseAbs().maxCoeff(), r.col(k + nc).cwiseAbs().maxCoeff());
    out.residual = std::max(out.residual, res / amp);
  }
  if (out.residual > options_.accuracy_tol) {
    throw Error(ErrorKind::Accuracy, "collocation residual " + std::to_string(out.residual) +
                                         " exceeds tolerance " +
                                         std::to_string(options_.accuracy_tol));
  }
  return out;
}

cplx MfsSolver::evaluate(const Eigen::VectorXcd& coefficients, cplx x) const {
  const Eigen::Index ns = static_cast<Eigen::Index>(layout_.sources.size());
  cplx u = coefficients(ns);
  for (Eigen::Index s = 0; s < ns; ++s) {
    u += coefficients(s) * std::log(std::abs(x - layout_.sources[static_cast<std::size_t>(s)]));
  }
  return u;
}

Eigen::MatrixXd MfsSolver::nodal_dtn() const {
  const int nodes = domain_.total_nodes();
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(nodes, nodes);
  const Eigen::MatrixXcd rhs = collocation_data(id);
  const Eigen::MatrixXd x = svd_.solve(rhs.real());
  return normal_ * x;
}

double DirichletSolution::evaluate(cplx x) const {
  const Eigen::Index ns = static_cast<Eigen::Index>(sources.size());
  double u = coefficients(ns);
  for (Eigen::Index s = 0; s < ns; ++s) {
    u += coefficients(s) * std::log(std::abs(x - sources[static_cast<std::size_t>(s)]));
  }
  return u;
}

DirichletSolution solve_dirichlet(const DomainSpec& domain, const ChargeLayout& layout,
                                  std::span<const double> boundary_data, OracleOptions options) {
  const MfsSolver solver(domain, layout, options);
  Eigen::MatrixXcd data(domain.total_nodes(), 1);
  if (static_cast<int>(boundary_data.size()) != domain.total_nodes()) {
    throw Error(ErrorKind::Parameter, "Dirichlet data must have one value per boundary node");
  }
  for (int j = 0; j < domain.total_nodes(); ++j) data(j, 0) = boundary_data[static_cast<std::size_t>(j)];
  const auto sol = solver.solve(data);
  DirichletSolution out;
  out.residual = sol.residual;
  out.coefficients = sol.coefficients.col(0).real();
  out.sources = layout.sources;
  out.normal_derivative.resize(static_cast<std::size_t>(domain.total_nodes()));
  for (int j = 0; j < domain.total_nodes(); ++j) {
    out.normal_derivative[static_cast<std::size_t>(j)] = sol.normal_derivative(j, 0).real();
  }
  return out;
}

Eigen::VectorXcd project_to_window(const DomainSpec& domain, std::span<const cplx> stacked,
                                   int n_max) {
  const int nb = 2 * n_max + 1;
  Eigen::VectorXcd out(domain.components() * nb);
  for (int c = 0; c < domain.components(); ++c) {
    const int m = domain.component(c).size();
    if (m < 2 * n_max + 2) throw Error(ErrorKind::Window, "n_max too large for the boundary grid");
    const auto coeffs = complex_coefficients(stacked.subspan(static_cast<std::size_t>(domain.node_offset(c)),
                                                             static_cast<std::size_t>(m)),
                                             n_max);
    for (int k = 0; k < nb; ++k) out(c * nb + k) = coeffs[static_cast<std::size_t>(k)];
  }
  return out;
}

namespace {

// Columns e^{i n theta} on component c, zero elsewhere, ordered as in SampledDtN.
Eigen::MatrixXcd window_basis(const DomainSpec& domain, int n_max) {
  const int nb = 2 * n_max + 1;
  Eigen::MatrixXcd e = Eigen::MatrixXcd::Zero(domain.total_nodes(), domain.components() * nb);
  for (int c = 0; c < domain.components(); ++c) {
    const PlanarCurve& curve = domain.component(c);
    const int off = domain.node_offset(c);
    for (int n = -n_max; n <= n_max; ++n) {
      for (int j = 0; j < curve.size(); ++j) {
        e(off + j, c * nb + n + n_max) = std::polar(1.0, n * curve.theta(j));
      }
    }
  }
  return e;
}

Eigen::MatrixXcd project_columns(const DomainSpec& domain, const Eigen::MatrixXcd& nodal,
                                 int n_max) {
  Eigen::MatrixXcd out(domain.components() * (2 * n_max + 1), nodal.cols());
  std::vector<cplx> col(static_cast<std::size_t>(nodal.rows()));
  for (Eigen::Index k = 0; k < nodal.cols(); ++k) {
    for (Eigen::Index j = 0; j < nodal.rows(); ++j) col[static_cast<std::size_t>(j)] = nodal(j, k);
    out.col(k) = project_to_window(domain, col, n_max);
  }
  return out;
}

Eigen::MatrixXcd apply_laplacian_columns(const DomainSpec& domain, const Eigen::MatrixXcd& nodal) {
  Eigen::MatrixXcd out(nodal.rows(), nodal.cols());
  for (int c = 0; c < domain.components(); ++c) {
    const PlanarCurve& curve = domain.component(c);
    const int off = domain.node_offset(c);
    const int m = curve.size();
    std::vector<cplx> col(static_cast<std::size_t>(m));
    for (Eigen::Index k = 0; k < nodal.cols(); ++k) {
      for (int j = 0; j < m; ++j) col[static_cast<std::size_t>(j)] = nodal(off + j, k);
      const auto lap = apply_curve_laplacian(curve, col);
      for (int j = 0; j < m; ++j) out(off + j, k) = lap[static_cast<std::size_t>(j)];
    }
  }
  return out;
}

}  // namespace

SampledDtN dtn_matrix(const MfsSolver& solver, int n_max) {
  const DomainSpec& domain = solver.domain();
  const Eigen::MatrixXcd basis = window_basis(domain, n_max);
  const auto sol = solver.solve(basis);

  SampledDtN out;
  out.n_max = n_max;
  out.components = domain.components();
  out.residual = sol.residual;
  out.effective_rank = solver.effective_rank();
  out.fourier = project_columns(domain, sol.normal_derivative, n_max);

  Eigen::MatrixXcd weighted_nodal = sol.normal_derivative;
  for (int c = 0; c < domain.components(); ++c) {
    const PlanarCurve& curve = domain.component(c);
    const int off = domain.node_offset(c);
    for (int j = 0; j < curve.size(); ++j) weighted_nodal.row(off + j) *= curve.speed(j);
  }
  out.weighted = project_columns(domain, weighted_nodal, n_max);

  const double wn = out.weighted.norm();
  out.symmetry_error = wn > 0.0 ? (out.weighted - out.weighted.adjoint()).norm() / wn : 0.0;

  // total flux of the constant on each component, relative to the flux scale
  double flux = 0.0;
  double scale = 0.0;
  for (int c = 0; c < domain.components(); ++c) {
    cplx total = 0.0;
    for (int cp = 0; cp < domain.components(); ++cp) {
      total += out.weighted(out.index(cp, 0), out.index(c, 0));
    }
    flux = std::max(flux, std::abs(total));
  }
  scale = out.weighted.cwiseAbs().maxCoeff();
  out.flux_error = scale > 0.0 ? flux / scale : flux;
  return out;
}

SampledDtN dtn_matrix(const DomainSpec& domain, const ChargeLayout& layout, int n_max,
                      OracleOptions options) {
  return dtn_matrix(MfsSolver(domain, layout, options), n_max);
}

std::vector<cplx> apply_curve_laplacian(const PlanarCurve& curve, std::span<const cplx> samples) {
  const int m = curve.size();
  if (static_cast<int>(samples.size()) != m) {
    throw Error(ErrorKind::Parameter, "sample count does not match the curve");
  }
  auto d = spectral_derivative(samples);
  for (int j = 0; j < m; ++j) d[static_cast<std::size_t>(j)] /= curve.speed(j);
  auto dd = spectral_derivative(d);
  for (int j = 0; j < m; ++j) dd[static_cast<std::size_t>(j)] /= -curve.speed(j);
  return dd;
}

Eigen::MatrixXcd boundary_laplacian_curve(const PlanarCurve& curve, int n_max) {
  const DomainSpec single(curve);
  const Eigen::MatrixXcd basis = window_basis(single, n_max);
  return project_columns(single, apply_laplacian_columns(single, basis), n_max);
}

OracleCommutator commutator_norm_oracle(const MfsSolver& solver, int n_max) {
  const DomainSpec& domain = solver.domain();
  const Eigen::MatrixXcd basis = window_basis(domain, n_max);
  const Eigen::MatrixXcd lap_basis = apply_laplacian_columns(domain, basis);

  const auto lam = solver.solve(basis);
  const auto lam_lap = solver.solve(lap_basis);
  const Eigen::MatrixXcd lap_lam = apply_laplacian_columns(domain, lam.normal_derivative);

  const Eigen::MatrixXcd comm =
      project_columns(domain, lap_lam - lam_lap.normal_derivative, n_max);
  const Eigen::MatrixXcd lap_w = project_columns(domain, lap_basis, n_max);
  const Eigen::MatrixXcd lam_w = project_columns(domain, lam.normal_derivative, n_max);

  OracleCommutator out;
  out.norm = comm.norm();
  out.scale = lap_w.norm() * lam_w.norm();
  out.residual = std::max(lam.residual, lam_lap.residual);
  out.effective_rank = solver.effective_rank();
  return out;
}

OracleCommutator commutator_norm_oracle(const DomainSpec& domain, const ChargeLayout& layout,
                                        int n_max, OracleOptions options) {
  return commutator_norm_oracle(MfsSolver(domain, layout, options), n_max);
}

}  // namespace dtncomm
