#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dtncomm {

enum class ErrorKind {
  TruncationOrder,
  SymmetryViolation,
  Window,
  BoundaryRoot,
  Positivity,
  Pairing,
  OutOfClassification,
  OuterViolation,
  Degenerate,
  Parameter,
  Curve,
  Accuracy,
  Layout,
  Parse,
  Io,
};

std::string_view to_string(ErrorKind kind);

// Every failure raised by the library carries a kind so callers (and tests)
// can branch on the designated error rather than on message text.
class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::TruncationOrder: return "truncation-order";
    case ErrorKind::SymmetryViolation: return "symmetry-violation";
    case ErrorKind::Window: return "window";
    case ErrorKind::BoundaryRoot: return "boundary-root";
    case ErrorKind::Positivity: return "positivity";
    case ErrorKind::Pairing: return "pairing";
    case ErrorKind::OutOfClassification: return "out-of-classification";
    case ErrorKind::OuterViolation: return "outer-violation";
    case ErrorKind::Degenerate: return "degenerate";
    case ErrorKind::Parameter: return "parameter";
    case ErrorKind::Curve: return "curve";
    case ErrorKind::Accuracy: return "accuracy";
    case ErrorKind::Layout: return "layout";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::Io: return "io";
  }
  return "unknown";
}

}  // namespace dtncomm
