#include <cmath>
#include <cstdio>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "dtncomm/acceptance.hpp"
#include "dtncomm/cylinder_operators.hpp"
#include "dtncomm/disc_operators.hpp"
#include "dtncomm/domain_atlas.hpp"
#include "dtncomm/error.hpp"
#include "dtncomm/fejer_riesz.hpp"
#include "dtncomm/io.hpp"
#include "dtncomm/obstruction.hpp"
#include "dtncomm/planar_oracle.hpp"
#include "dtncomm/run_config.hpp"

using namespace dtncomm;

namespace {

constexpr int kNonCommuting = 2;

// "c0,c1,c-1,c2,c-2,..."; a complex entry is written re:im
LaurentSymmetricPoly parse_laurent(const std::string& text) {
  std::vector<cplx> vals;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    const auto colon = tok.find(':');
    try {
      if (colon == std::string::npos) {
        vals.emplace_back(std::stod(tok), 0.0);
      } else {
        vals.emplace_back(std::stod(tok.substr(0, colon)), std::stod(tok.substr(colon + 1)));
      }
    } catch (const std::exception&) {
      throw Error(ErrorKind::Parse, "bad coefficient '" + tok + "' in --w");
    }
  }
  if (vals.empty() || vals.size() % 2 == 0) {
    throw Error(ErrorKind::Parse, "--w needs c0 followed by (c_k, c_-k) pairs");
  }
  const int n = static_cast<int>(vals.size() / 2);
  std::vector<cplx> a(static_cast<std::size_t>(2 * n + 1));
  a[static_cast<std::size_t>(n)] = vals[0];
  for (int k = 1; k <= n; ++k) {
    a[static_cast<std::size_t>(n + k)] = vals[static_cast<std::size_t>(2 * k - 1)];
    a[static_cast<std::size_t>(n - k)] = vals[static_cast<std::size_t>(2 * k)];
  }
  return LaurentSymmetricPoly(n, std::move(a));
}

json complex_list(std::span<const cplx> z) { return polynomial_to_json(z); }

void emit(const json& j, const std::string& output) {
  const std::string text = dump_json(j);
  std::cout << text;
  if (!output.empty()) write_atomic(output, text);
}

DomainSpec load_domain(const std::string& outer, const std::vector<std::string>& holes) {
  std::vector<PlanarCurve> hs;
  for (const auto& h : holes) hs.push_back(curve_from_csv(read_text(h)));
  return DomainSpec(curve_from_csv(read_text(outer)), std::move(hs));
}

struct CriterionArgs {
  std::string family = "flat";
  double a = 2.0;
  double eps = 0.2;
  int k = 3;
  std::string phi_csv;
  std::string export_path;
};

int cmd_criterion(const CriterionArgs& args, const RunConfig& cfg) {
  const int n = cfg.n_trunc;
  const int grid = std::max(cfg.grid, 8 * n);
  json report;
  std::vector<double> phi;
  if (!args.phi_csv.empty()) {
    phi = samples_from_csv(read_text(args.phi_csv));
    report["source"] = args.phi_csv;
  } else {
    report["family"] = args.family;
    std::function<double(double)> f;
    if (args.family == "flat") {
      f = [](double) { return 0.0; };
    } else if (args.family == "oval") {
      if (!(args.a > 1.0)) throw Error(ErrorKind::Parameter, "--a must exceed 1");
      f = [a = args.a](double t) { return -std::log(std::abs(std::polar(1.0, t) - a)); };
      report["a"] = args.a;
    } else if (args.family == "perturbed") {
      if (!(std::abs(args.eps) < 1.0)) throw Error(ErrorKind::Parameter, "--eps must satisfy |eps| < 1");
      f = [eps = args.eps, k = args.k](double t) { return -0.5 * std::log(1.0 + eps * std::cos(k * t)); };
      report["eps"] = args.eps;
      report["k"] = args.k;
    } else {
      throw Error(ErrorKind::Parameter, "unknown family '" + args.family + "'");
    }
    phi = sample_on_grid(f, grid);
  }
  const ConformalBoundaryFactor factor(std::move(phi));
  const double tail = fourier_support_residual(factor, std::min(n, factor.resolved_freq()));
  const double ref = factor.exp_neg_2phi().max_abs();
  const auto v = refine_commutator(factor, n, cfg.window, 1e-8);
  const bool commuting = tail <= cfg.tol_zero * ref;
  report["tail_residual"] = round_sig(tail);
  report["commutator_norm_N"] = round_sig(v.coarse.norm);
  report["commutator_norm_2N"] = round_sig(v.fine.norm);
  report["relative_norm_N"] = round_sig(v.coarse.relative());
  report["relative_norm_2N"] = round_sig(v.fine.relative());
  report["N"] = n;
  report["W"] = cfg.window;
  report["verdict"] = commuting ? "commuting" : "non-commuting";
  if (!args.export_path.empty()) {
    write_atomic(args.export_path, dump_json(operator_to_json(dtn_conformal_disc(factor, cfg.n_max))));
  }
  emit(report, cfg.output);
  return commuting ? 0 : kNonCommuting;
}

int cmd_factor(const std::string& w_text, const RunConfig& cfg) {
  const auto w = parse_laurent(w_text);
  const auto p = factorize(w);
  double err = 0.0;
  const int grid = 16 * std::max(1, w.degree()) + 64;
  for (int j = 0; j < grid; ++j) {
    const double t = 2.0 * std::numbers::pi * j / grid;
    err = std::max(err, std::abs(std::norm(p.evaluate(std::polar(1.0, t))) - w.on_circle(t)));
  }
  emit({{"degree", p.degree()},
        {"coefficients", polynomial_to_json(p.coeffs())},
        {"roots", complex_list(p.roots())},
        {"c", round_sig(p.c())},
        {"max_error", round_sig(err)}},
       cfg.output);
  return 0;
}

int cmd_reconstruct(const std::string& w_text, int samples, const std::string& curve_path,
                    const std::string& svg_path, const RunConfig& cfg) {
  const auto p = factorize(parse_laurent(w_text));
  const auto res = reconstruct(p, samples);
  json report{{"case", std::string(to_string(res.tag))},
              {"alternate", res.alternate ? json(std::string(to_string(*res.alternate))) : json(nullptr)},
              {"polynomial", polynomial_to_json(p.coeffs())},
              {"roots", complex_list(res.roots)},
              {"samples", res.curve.size()}};
  if (res.tag == CaseTag::Disc) {
    report["mobius"] = complex_list(res.mobius);
  } else {
    report["a"] = round_sig(res.oval_a);
  }
  if (res.reduction) {
    report["reduced_root"] = complex_list(std::span<const cplx>(&res.reduction->reduced_root, 1))[0];
    report["rotation"] = round_sig(res.reduction->rotation);
  }
  write_atomic(curve_path, curve_to_csv(res.curve));
  report["curve_file"] = curve_path;
  if (!svg_path.empty()) write_atomic(svg_path, curve_to_svg(res.curve));
  emit(report, cfg.output);
  return 0;
}

int cmd_oval(double a, int samples, bool normalized, const std::string& curve_path,
             const std::string& svg_path, const RunConfig& cfg) {
  const PlanarCurve c = normalized ? normalized_log_oval(a, samples) : log_oval_boundary(a, samples);
  json report{{"a", a},
              {"normalized", normalized},
              {"samples", c.size()},
              {"length", round_sig(c.length())},
              {"area", round_sig(c.signed_area())},
              {"diameter", round_sig(c.diameter())}};
  if (normalized) {
    report["hausdorff_to_unit_circle"] =
        round_sig(hausdorff_distance(c, PlanarCurve::circle(0.0, 1.0, samples)));
  }
  if (!curve_path.empty()) {
    write_atomic(curve_path, curve_to_csv(c));
    report["curve_file"] = curve_path;
  }
  if (!svg_path.empty()) write_atomic(svg_path, curve_to_svg(c));
  emit(report, cfg.output);
  return 0;
}

struct CylinderArgs {
  double height = 1.0;
  double phi0_const = 0.0, phi0_cos = 0.0;
  double phih_const = 0.0, phih_cos = 0.0;
  std::string export_path;
};

int cmd_cylinder(const CylinderArgs& args, const RunConfig& cfg) {
  const auto make = [&cfg](double c, double e) {
    return ConformalBoundaryFactor::from_function([c, e](double t) { return c + e * std::cos(t); },
                                                  cfg.grid);
  };
  const CylinderSpec spec(args.height, make(args.phi0_const, args.phi0_cos),
                          make(args.phih_const, args.phih_cos));
  const auto norm = commutator_norm_cylinder(spec, cfg.n_trunc, cfg.window);
  const auto [t0, th] = criterion_doubly_connected(spec);
  const double r0 = spec.phi0.exp_neg_2phi().max_abs();
  const double rh = spec.phi_h.exp_neg_2phi().max_abs();
  const bool commuting = t0 <= cfg.tol_zero * r0 && th <= cfg.tol_zero * rh;
  json blocks = json::array();
  for (int n : {0, 1, 2}) {
    const auto b = flat_dtn_block(args.height, n);
    blocks.push_back({{"n", n}, {"self", round_sig(b.self)}, {"cross", round_sig(b.cross)}});
  }
  if (!args.export_path.empty()) {
    write_atomic(args.export_path, dump_json(operator_to_json(dtn_cylinder(spec, cfg.n_max))));
  }
  emit({{"height", args.height},
        {"N", cfg.n_trunc},
        {"W", cfg.window},
        {"commutator_norm", round_sig(norm.norm)},
        {"relative_norm", round_sig(norm.relative())},
        {"tails", json::array({round_sig(t0), round_sig(th)})},
        {"flat_blocks", blocks},
        {"verdict", commuting ? "commuting" : "non-commuting"}},
       cfg.output);
  return commuting ? 0 : kNonCommuting;
}

int cmd_oracle(const std::string& outer, const std::vector<std::string>& holes,
               const std::string& dtn_path, const RunConfig& cfg) {
  const DomainSpec domain = load_domain(outer, holes);
  const OracleOptions opt{cfg.svd_cutoff, 1e-6};
  const MfsSolver solver(domain, ChargeLayout::standard(domain, cfg.mfs_offset), opt);
  const auto dtn = dtn_matrix(solver, cfg.n_max);
  const auto comm = commutator_norm_oracle(solver, cfg.n_max);

  // solver-limited disc reference at the outer curve's resolution
  const DomainSpec disc(PlanarCurve::mobius_circle(0.3, domain.component(0).size()));
  const auto base = commutator_norm_oracle(disc, ChargeLayout::standard(disc, cfg.mfs_offset),
                                           cfg.n_max, opt);
  const double ratio = comm.relative() / base.relative();
  const bool commuting = ratio <= 10.0;
  if (!dtn_path.empty()) write_sampled_dtn(dtn_path, dtn);
  const auto lengths = equal_length_check(domain, 1e-6);
  json lens = json::array();
  for (double l : lengths.component_lengths) lens.push_back(round_sig(l));
  emit({{"components", domain.components()},
        {"n_max", cfg.n_max},
        {"commutator_norm", round_sig(comm.norm)},
        {"scale", round_sig(comm.scale)},
        {"relative_norm", round_sig(comm.relative())},
        {"disc_baseline_relative", round_sig(base.relative())},
        {"ratio_to_disc", round_sig(ratio)},
        {"residual", round_sig(std::max(comm.residual, dtn.residual))},
        {"effective_rank", dtn.effective_rank},
        {"symmetry_error", round_sig(dtn.symmetry_error)},
        {"flux_error", round_sig(dtn.flux_error)},
        {"component_lengths", lens},
        {"verdict", commuting ? "commuting" : "non-commuting"}},
       cfg.output);
  return commuting ? 0 : kNonCommuting;
}

int cmd_obstruction(long g, long k, const std::string& outer, const std::vector<std::string>& holes,
                    double rel_tol, const RunConfig& cfg) {
  const auto m = euler_min_violation(g, k);
  json report{{"g", g}, {"k", k}, {"m_star", m ? json(*m) : json(nullptr)}};
  if (!outer.empty()) {
    const auto r = equal_length_check(load_domain(outer, holes), rel_tol);
    json lens = json::array();
    for (double l : r.component_lengths) lens.push_back(round_sig(l));
    report["component_lengths"] = lens;
    report["equal"] = r.equal;
    report["rel_tol"] = rel_tol;
  }
  emit(report, cfg.output);
  return 0;
}

int cmd_report(const RunConfig& cfg, bool verbose) {
  const auto results = run_acceptance(cfg);
  if (verbose) {
    for (const auto& r : results) std::cerr << format_result(r) << "\n";
  }
  const json summary = acceptance_summary(results);
  emit(summary, cfg.output);
  return summary["all_passed"].get<bool>() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Boundary Laplacian / Dirichlet-to-Neumann commutation toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  app.add_option("--n-trunc", cfg.n_trunc, "Fourier truncation order N")->capture_default_str();
  app.add_option("--window", cfg.window, "commutator window W")->capture_default_str();
  app.add_option("--grid", cfg.grid, "boundary grid size")->capture_default_str();
  app.add_option("--tol-zero", cfg.tol_zero, "relative zero tolerance")->capture_default_str();
  app.add_option("--mfs-offset", cfg.mfs_offset, "source offset in node spacings")->capture_default_str();
  app.add_option("--svd-cutoff", cfg.svd_cutoff, "relative singular value cutoff")->capture_default_str();
  app.add_option("--n-max", cfg.n_max, "oracle / export Fourier window")->capture_default_str();
  app.add_option("--seed", cfg.seed, "seed for randomized families")->capture_default_str();
  app.add_option("-o,--output", cfg.output, "also write the JSON report here");

  CriterionArgs crit;
  auto* c_crit = app.add_subcommand("criterion", "Fourier-support criterion and commutator refinement");
  c_crit->add_option("--family", crit.family, "flat | oval | perturbed")->capture_default_str();
  c_crit->add_option("--a", crit.a, "oval parameter a > 1")->capture_default_str();
  c_crit->add_option("--eps", crit.eps, "perturbation size")->capture_default_str();
  c_crit->add_option("--k", crit.k, "perturbation frequency")->capture_default_str();
  c_crit->add_option("--phi", crit.phi_csv, "CSV of phi samples (last column)");
  c_crit->add_option("--export", crit.export_path, "write the windowed DtN operator as JSON");

  std::string w_text;
  auto* c_factor = app.add_subcommand("factor", "Fejer-Riesz factorization of w");
  c_factor->add_option("--w", w_text, "c0,c1,c-1,c2,c-2,...")->required();

  std::string rw_text, curve_path = "curve.csv", svg_path;
  int samples = 512;
  auto* c_rec = app.add_subcommand("reconstruct", "factorize w and rebuild the commuting domain");
  c_rec->add_option("--w", rw_text, "c0,c1,c-1,c2,c-2,...")->required();
  c_rec->add_option("--samples", samples, "curve samples")->capture_default_str();
  c_rec->add_option("--curve", curve_path, "curve CSV output")->capture_default_str();
  c_rec->add_option("--svg", svg_path, "optional SVG output");

  double oval_a = 2.0;
  bool normalized = false;
  std::string oval_curve, oval_svg;
  auto* c_oval = app.add_subcommand("oval", "logarithmic oval boundary");
  c_oval->add_option("--a", oval_a, "a > 1")->capture_default_str();
  c_oval->add_option("--samples", samples, "curve samples")->capture_default_str();
  c_oval->add_flag("--normalized", normalized, "rescale by a and recentre");
  c_oval->add_option("--curve", oval_curve, "curve CSV output");
  c_oval->add_option("--svg", oval_svg, "optional SVG output");

  CylinderArgs cyl;
  auto* c_cyl = app.add_subcommand("cylinder", "flat or perturbed cylinder");
  c_cyl->add_option("--height", cyl.height, "cylinder height H")->capture_default_str();
  c_cyl->add_option("--phi0-const", cyl.phi0_const, "constant part of phi on h = 0");
  c_cyl->add_option("--phi0-cos", cyl.phi0_cos, "cos theta coefficient of phi on h = 0");
  c_cyl->add_option("--phih-const", cyl.phih_const, "constant part of phi on h = H");
  c_cyl->add_option("--phih-cos", cyl.phih_cos, "cos theta coefficient of phi on h = H");
  c_cyl->add_option("--export", cyl.export_path, "write the DtN operator as JSON");

  std::string domain_path, dtn_path;
  std::vector<std::string> holes;
  auto* c_orc = app.add_subcommand("oracle", "independent planar DtN commutator");
  c_orc->add_option("--domain", domain_path, "outer curve CSV")->required();
  c_orc->add_option("--hole", holes, "hole curve CSV (repeatable)");
  c_orc->add_option("--dtn", dtn_path, "write the sampled DtN CSV and diagnostics");

  long g = 0, k = 3;
  double rel_tol = 1e-6;
  std::string obs_domain;
  std::vector<std::string> obs_holes;
  auto* c_obs = app.add_subcommand("obstruction", "Euler-characteristic obstruction");
  c_obs->add_option("--g", g, "genus")->required();
  c_obs->add_option("--k", k, "boundary components")->required();
  c_obs->add_option("--domain", obs_domain, "outer curve CSV for the equal-length check");
  c_obs->add_option("--hole", obs_holes, "hole curve CSV (repeatable)");
  c_obs->add_option("--rel-tol", rel_tol, "equal-length tolerance")->capture_default_str();

  bool verbose = false;
  auto* c_rep = app.add_subcommand("report", "run the acceptance suite");
  c_rep->add_flag("-v,--verbose", verbose, "print one line per criterion to stderr");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    cfg.validate();
    if (*c_crit) return cmd_criterion(crit, cfg);
    if (*c_factor) return cmd_factor(w_text, cfg);
    if (*c_rec) return cmd_reconstruct(rw_text, samples, curve_path, svg_path, cfg);
    if (*c_oval) return cmd_oval(oval_a, samples, normalized, oval_curve, oval_svg, cfg);
    if (*c_cyl) return cmd_cylinder(cyl, cfg);
    if (*c_orc) return cmd_oracle(domain_path, holes, dtn_path, cfg);
    if (*c_obs) return cmd_obstruction(g, k, obs_domain, obs_holes, rel_tol, cfg);
    if (*c_rep) return cmd_report(cfg, verbose);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
