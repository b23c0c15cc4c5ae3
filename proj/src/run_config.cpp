#include "dtncomm/run_config.hpp"

#include "dtncomm/error.hpp"

namespace dtncomm {

void RunConfig::validate() const {
  if (n_trunc < 3) throw Error(ErrorKind::TruncationOrder, "n_trunc must be >= 3");
  if (window < 0 || 2 * window > n_trunc) {
    throw Error(ErrorKind::Window, "window must satisfy 0 <= window <= n_trunc/2");
  }
  if (grid % 2 != 0 || grid < 2 * n_trunc + 2) {
    throw Error(ErrorKind::TruncationOrder, "grid must be even and >= 2 n_trunc + 2");
  }
  if (!(tol_zero > 0.0)) throw Error(ErrorKind::Parameter, "tol_zero must be positive");
  if (!(mfs_offset > 0.0)) throw Error(ErrorKind::Parameter, "mfs_offset must be positive");
  if (!(svd_cutoff > 0.0 && svd_cutoff < 1.0)) {
    throw Error(ErrorKind::Parameter, "svd_cutoff must lie in (0, 1)");
  }
  if (n_max < 0) throw Error(ErrorKind::Window, "n_max must be >= 0");
}

}  // namespace dtncomm
