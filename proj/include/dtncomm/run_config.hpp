#pragma once

#include <cstdint>
#include <string>

namespace dtncomm {

struct RunConfig {
  int n_trunc = 256;
  int window = 64;
  int grid = 1024;
  double tol_zero = 1e-10;
  double mfs_offset = 4.0;
  double svd_cutoff = 1e-12;
  int n_max = 16;
  std::uint64_t seed = 20240601;
  std::string output;

  // Throws Parameter / Window / TruncationOrder on inconsistent settings.
  void validate() const;
};

}  // namespace dtncomm
