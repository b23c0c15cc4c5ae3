#include "dtncomm/fourier_ring.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <unsupported/Eigen/FFT>

#include "dtncomm/error.hpp"

namespace dtncomm {

namespace detail {

std::vector<cplx> dft_forward(std::span<const cplx> in) {
  std::vector<cplx> src(in.begin(), in.end());
  std::vector<cplx> out;
  Eigen::FFT<double> fft;
  fft.fwd(out, src);
  return out;
}

std::vector<cplx> dft_inverse(std::span<const cplx> in) {
  std::vector<cplx> src(in.begin(), in.end());
  std::vector<cplx> out;
  Eigen::FFT<double> fft;
  fft.SetFlag(Eigen::FFT<double>::Unscaled);
  fft.inv(out, src);
  return out;
}

}  // namespace detail

BoundarySignal::BoundarySignal(int max_freq, std::vector<cplx> coeffs, int grid_size)
    : n_(max_freq), grid_(grid_size), c_(std::move(coeffs)) {
  if (max_freq < 0 || c_.size() != static_cast<std::size_t>(2 * max_freq + 1)) {
    throw Error(ErrorKind::Parameter, "coefficient vector must have size 2N+1");
  }
  if (grid_size < 2) {
    throw Error(ErrorKind::Parameter, "grid size must be positive and even");
  }
}

BoundarySignal BoundarySignal::constant(double value, int grid_size) {
  return BoundarySignal(0, {cplx(value, 0.0)}, even_grid(grid_size));
}

double BoundarySignal::max_abs() const noexcept {
  double m = 0.0;
  for (const auto& c : c_) m = std::max(m, std::abs(c));
  return m;
}

double BoundarySignal::hermitian_defect() const noexcept {
  double d = 0.0;
  for (int k = 0; k <= n_; ++k) {
    d = std::max(d, std::abs((*this)[-k] - std::conj((*this)[k])));
  }
  return d;
}

void BoundarySignal::require_hermitian(const char* where) const {
  if (hermitian_defect() > kRoundoffZero * std::max(max_abs(), 1e-300)) {
    throw Error(ErrorKind::SymmetryViolation,
                std::string(where) + ": coefficients are not Hermitian-symmetric");
  }
}

int even_grid(int n) {
  n = std::max(n, 2);
  return (n % 2 == 0) ? n : n + 1;
}

std::vector<double> grid_nodes(int grid_size) {
  std::vector<double> nodes(static_cast<std::size_t>(grid_size));
  for (int j = 0; j < grid_size; ++j) {
    nodes[static_cast<std::size_t>(j)] = 2.0 * std::numbers::pi * j / grid_size;
  }
  return nodes;
}

std::vector<double> sample_on_grid(const std::function<double(double)>& f, int grid_size) {
  std::vector<double> s;
  s.reserve(static_cast<std::size_t>(grid_size));
  for (double t : grid_nodes(grid_size)) s.push_back(f(t));
  return s;
}

std::vector<cplx> complex_coefficients(std::span<const cplx> samples, int max_freq) {
  const int m = static_cast<int>(samples.size());
  if (max_freq < 0 || m < 2 * max_freq + 2) {
    throw Error(ErrorKind::TruncationOrder,
                "grid of " + std::to_string(m) + " samples cannot resolve frequency " +
                    std::to_string(max_freq) + " (need M >= 2N+2)");
  }
  const auto spectrum = detail::dft_forward(samples);
  std::vector<cplx> c(static_cast<std::size_t>(2 * max_freq + 1));
  for (int k = -max_freq; k <= max_freq; ++k) {
    c[static_cast<std::size_t>(k + max_freq)] =
        spectrum[static_cast<std::size_t>(((k % m) + m) % m)] / static_cast<double>(m);
  }
  return c;
}

BoundarySignal coefficients(std::span<const double> samples, int max_freq) {
  const int m = static_cast<int>(samples.size());
  if (m % 2 != 0) {
    throw Error(ErrorKind::TruncationOrder, "grid size must be even");
  }
  for (double s : samples) {
    if (!std::isfinite(s)) throw Error(ErrorKind::Parameter, "non-finite sample");
  }
  std::vector<cplx> z(samples.begin(), samples.end());
  auto c = complex_coefficients(z, max_freq);
  for (int k = 0; k <= max_freq; ++k) {
    auto& pos = c[static_cast<std::size_t>(max_freq + k)];
    auto& neg = c[static_cast<std::size_t>(max_freq - k)];
    const cplx avg = 0.5 * (pos + std::conj(neg));
    pos = avg;
    neg = std::conj(avg);
  }
  return BoundarySignal(max_freq, std::move(c), m);
}

std::vector<double> synthesize(const BoundarySignal& signal, std::span<const double> nodes) {
  signal.require_hermitian("synthesize");
  double amplitude = 0.0;
  for (const auto& c : signal.data()) amplitude += std::abs(c);
  const int n = signal.max_freq();
  std::vector<double> out;
  out.reserve(nodes.size());
  for (double t : nodes) {
    cplx acc{};
    for (int k = -n; k <= n; ++k) acc += signal[k] * std::polar(1.0, k * t);
    if (std::abs(acc.imag()) > kRoundoffZero * std::max(amplitude, 1e-300)) {
      throw Error(ErrorKind::SymmetryViolation, "synthesized value has imaginary residue");
    }
    out.push_back(acc.real());
  }
  return out;
}

std::vector<cplx> complex_grid_values(std::span<const cplx> coeffs, int grid_size) {
  const int n = (static_cast<int>(coeffs.size()) - 1) / 2;
  if (grid_size <= 2 * n) {
    throw Error(ErrorKind::TruncationOrder, "grid too small for synthesis");
  }
  std::vector<cplx> spectrum(static_cast<std::size_t>(grid_size));
  for (int k = -n; k <= n; ++k) {
    spectrum[static_cast<std::size_t>(((k % grid_size) + grid_size) % grid_size)] +=
        coeffs[static_cast<std::size_t>(k + n)];
  }
  return detail::dft_inverse(spectrum);
}

std::vector<double> grid_values(const BoundarySignal& signal, int grid_size) {
  const auto z = complex_grid_values(signal.data(), grid_size);
  std::vector<double> out(z.size());
  std::transform(z.begin(), z.end(), out.begin(), [](const cplx& v) { return v.real(); });
  return out;
}

BoundarySignal product(const BoundarySignal& a, const BoundarySignal& b) {
  a.require_hermitian("product");
  b.require_hermitian("product");
  const int n = a.max_freq() + b.max_freq();
  const int m = even_grid(std::max({2 * n + 2, a.grid_size(), b.grid_size()}));
  const auto va = grid_values(a, m);
  const auto vb = grid_values(b, m);
  std::vector<double> prod(va.size());
  for (std::size_t j = 0; j < va.size(); ++j) prod[j] = va[j] * vb[j];
  return coefficients(prod, n);
}

BoundarySignal derivative(const BoundarySignal& signal) {
  signal.require_hermitian("derivative");
  const int n = signal.max_freq();
  std::vector<cplx> c(static_cast<std::size_t>(2 * n + 1));
  for (int k = -n; k <= n; ++k) {
    c[static_cast<std::size_t>(k + n)] = cplx(0.0, k) * signal[k];
  }
  return BoundarySignal(n, std::move(c), signal.grid_size());
}

double tail_max(const BoundarySignal& signal, int k0) {
  if (k0 < 1 || k0 > signal.max_freq()) {
    throw Error(ErrorKind::Window, "tail start " + std::to_string(k0) +
                                       " outside 1.." + std::to_string(signal.max_freq()));
  }
  double t = 0.0;
  for (int k = k0; k <= signal.max_freq(); ++k) {
    t = std::max({t, std::abs(signal[k]), std::abs(signal[-k])});
  }
  return t;
}

}  // namespace dtncomm
