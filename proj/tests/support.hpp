#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "dtncomm/error.hpp"

#define EXPECT_ERROR_KIND(stmt, expected_kind)                                  \
  do {                                                                          \
    bool threw_ = false;                                                        \
    try {                                                                       \
      stmt;                                                                     \
    } catch (const ::dtncomm::Error& e_) {                                      \
      threw_ = true;                                                            \
      EXPECT_EQ(e_.kind(), expected_kind) << e_.what();                         \
    }                                                                           \
    EXPECT_TRUE(threw_) << "expected " << ::dtncomm::to_string(expected_kind);  \
  } while (0)

namespace testing_support {

inline constexpr double kPi = std::numbers::pi;

// (1/2pi) integral e^{-ik theta} f dtheta by a plain trapezoidal sum at high
// resolution; no FFT involved.
inline std::complex<double> quadrature_coefficient(const std::function<double(double)>& f, int k,
                                                   int points = 4096) {
  std::complex<double> s = 0.0;
  for (int j = 0; j < points; ++j) {
    const double t = 2.0 * kPi * j / points;
    s += f(t) * std::polar(1.0, -k * t);
  }
  return s / static_cast<double>(points);
}

inline std::complex<double> quadrature_coefficient_c(
    const std::function<std::complex<double>(double)>& f, int k, int points = 4096) {
  std::complex<double> s = 0.0;
  for (int j = 0; j < points; ++j) {
    const double t = 2.0 * kPi * j / points;
    s += f(t) * std::polar(1.0, -k * t);
  }
  return s / static_cast<double>(points);
}

}  // namespace testing_support
