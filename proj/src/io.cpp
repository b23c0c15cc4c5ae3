#include "dtncomm/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include "dtncomm/error.hpp"

namespace dtncomm {

namespace {

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

json cplx_pair(cplx z) { return json::array({round_sig(z.real()), round_sig(z.imag())}); }

json matrix_entries(const Eigen::MatrixXcd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(cplx_pair(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string matrix_csv(const Eigen::MatrixXcd& m, const std::string& header) {
  std::string out = header;
  out += "row,col,re,im\n";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      out += std::to_string(i) + "," + std::to_string(j) + "," + fmt17(m(i, j).real()) + "," +
             fmt17(m(i, j).imag()) + "\n";
    }
  }
  return out;
}

std::vector<std::vector<double>> numeric_rows(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    std::vector<double> vals;
    std::istringstream cells(line);
    std::string cell;
    bool numeric = true;
    while (std::getline(cells, cell, ',')) {
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      if (end == cell.c_str()) {
        numeric = false;
        break;
      }
      while (*end == ' ' || *end == '\t') ++end;
      if (*end != '\0') {
        numeric = false;
        break;
      }
      vals.push_back(v);
    }
    if (!numeric) {
      if (rows.empty()) continue;  // header
      throw Error(ErrorKind::Parse, "non-numeric CSV line " + std::to_string(lineno));
    }
    if (!rows.empty() && vals.size() != rows.front().size()) {
      throw Error(ErrorKind::Parse, "ragged CSV line " + std::to_string(lineno));
    }
    rows.push_back(std::move(vals));
  }
  return rows;
}

}  // namespace

double round_sig(double x, int digits) {
  if (!std::isfinite(x) || x == 0.0) return x;
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*e", digits - 1, x);
  return std::strtod(buf, nullptr);
}

std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

json signal_to_json(const BoundarySignal& s) {
  json out = json::array();
  for (int k = -s.max_freq(); k <= s.max_freq(); ++k) {
    out.push_back(json::array({k, round_sig(s[k].real()), round_sig(s[k].imag())}));
  }
  return out;
}

BoundarySignal signal_from_json(const json& j, int grid_size) {
  if (!j.is_array()) throw Error(ErrorKind::Parse, "signal must be an array of [k, re, im]");
  int n = 0;
  for (const auto& t : j) {
    if (!t.is_array() || t.size() != 3) throw Error(ErrorKind::Parse, "signal entries are [k, re, im]");
    n = std::max(n, std::abs(t[0].get<int>()));
  }
  std::vector<cplx> c(static_cast<std::size_t>(2 * n + 1));
  for (const auto& t : j) {
    c[static_cast<std::size_t>(t[0].get<int>() + n)] = {t[1].get<double>(), t[2].get<double>()};
  }
  return BoundarySignal(n, std::move(c), grid_size);
}

json polynomial_to_json(std::span<const cplx> coeffs) {
  json out = json::array();
  for (const cplx& z : coeffs) out.push_back(cplx_pair(z));
  return out;
}

std::vector<cplx> polynomial_from_json(const json& j) {
  if (!j.is_array()) throw Error(ErrorKind::Parse, "polynomial must be an array of [re, im]");
  std::vector<cplx> out;
  for (const auto& t : j) {
    if (!t.is_array() || t.size() != 2) throw Error(ErrorKind::Parse, "coefficients are [re, im]");
    out.emplace_back(t[0].get<double>(), t[1].get<double>());
  }
  return out;
}

json operator_to_json(const FrequencyOperator& op) {
  return {{"N", op.order()}, {"W", op.window()}, {"entries", matrix_entries(op.matrix())}};
}

std::string operator_to_csv(const FrequencyOperator& op) {
  return matrix_csv(op.matrix(), "# N=" + std::to_string(op.order()) +
                                     " W=" + std::to_string(op.window()) +
                                     " index=freq+N\n");
}

json operator_to_json(const TwoCircleOperator& op) {
  return {{"N", op.order()},
          {"W", op.window()},
          {"components", json::array({"h=0", "h=H"})},
          {"entries", matrix_entries(op.matrix())}};
}

std::string operator_to_csv(const TwoCircleOperator& op) {
  return matrix_csv(op.matrix(), "# N=" + std::to_string(op.order()) +
                                     " W=" + std::to_string(op.window()) +
                                     " components=h=0,h=H index=component*(2N+1)+freq+N\n");
}

std::string curve_to_csv(const PlanarCurve& c) {
  std::string out = "theta,re,im\n";
  for (int j = 0; j < c.size(); ++j) {
    const cplx z = c.points()[static_cast<std::size_t>(j)];
    out += fmt17(c.theta(j)) + "," + fmt17(z.real()) + "," + fmt17(z.imag()) + "\n";
  }
  return out;
}

PlanarCurve curve_from_csv(const std::string& text) {
  const auto rows = numeric_rows(text);
  if (rows.empty()) throw Error(ErrorKind::Parse, "curve CSV has no samples");
  if (rows.front().size() != 3) throw Error(ErrorKind::Parse, "curve CSV needs theta,re,im");
  const int m = static_cast<int>(rows.size());
  std::vector<cplx> pts;
  for (int j = 0; j < m; ++j) {
    const double expect = 2.0 * std::numbers::pi * j / m;
    if (std::abs(rows[static_cast<std::size_t>(j)][0] - expect) > 1e-9) {
      throw Error(ErrorKind::Parse, "curve CSV theta column must be 2 pi j / M");
    }
    pts.emplace_back(rows[static_cast<std::size_t>(j)][1], rows[static_cast<std::size_t>(j)][2]);
  }
  return PlanarCurve::from_samples(std::move(pts));
}

std::string curve_to_svg(const PlanarCurve& c) {
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const cplx& z : c.points()) {
    xmin = std::min(xmin, z.real());
    xmax = std::max(xmax, z.real());
    ymin = std::min(ymin, -z.imag());
    ymax = std::max(ymax, -z.imag());
  }
  const double pad = 0.05 * std::max(xmax - xmin, ymax - ymin);
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"%.6g %.6g %.6g %.6g\">\n",
                xmin - pad, ymin - pad, xmax - xmin + 2 * pad, ymax - ymin + 2 * pad);
  std::string out = buf;
  out += "<path fill=\"none\" stroke=\"black\" stroke-width=\"" +
         std::to_string(0.005 * (xmax - xmin)) + "\" d=\"";
  for (int j = 0; j < c.size(); ++j) {
    const cplx z = c.points()[static_cast<std::size_t>(j)];
    std::snprintf(buf, sizeof buf, "%s%.8g %.8g ", j == 0 ? "M" : "L", z.real(), -z.imag());
    out += buf;
  }
  out += "Z\"/>\n</svg>\n";
  return out;
}

std::vector<double> samples_from_csv(const std::string& text) {
  const auto rows = numeric_rows(text);
  if (rows.empty()) throw Error(ErrorKind::Parse, "CSV has no samples");
  std::vector<double> out;
  for (const auto& r : rows) out.push_back(r.back());
  return out;
}

std::string samples_to_csv(std::span<const double> values) {
  std::string out = "theta,value\n";
  const int m = static_cast<int>(values.size());
  for (int j = 0; j < m; ++j) {
    out += fmt17(2.0 * std::numbers::pi * j / m) + "," + fmt17(values[static_cast<std::size_t>(j)]) + "\n";
  }
  return out;
}

std::string sampled_dtn_csv(const SampledDtN& d) {
  return matrix_csv(d.fourier, "# n_max=" + std::to_string(d.n_max) +
                                   " components=" + std::to_string(d.components) +
                                   " index=component*(2n_max+1)+freq+n_max\n");
}

json sampled_dtn_diagnostics(const SampledDtN& d) {
  return {{"n_max", d.n_max},
          {"components", d.components},
          {"residual", round_sig(d.residual)},
          {"effective_rank", d.effective_rank},
          {"symmetry_error", round_sig(d.symmetry_error)},
          {"flux_error", round_sig(d.flux_error)}};
}

void write_sampled_dtn(const std::filesystem::path& path, const SampledDtN& d) {
  write_atomic(path, sampled_dtn_csv(d));
  write_atomic(path.string() + ".json", dump_json(sampled_dtn_diagnostics(d)));
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::Io, "cannot write " + tmp.string());
    out << content;
    if (!out) throw Error(ErrorKind::Io, "write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error(ErrorKind::Io, "cannot rename onto " + path.string() + ": " + ec.message());
}

}  // namespace dtncomm
