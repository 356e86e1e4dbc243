#pragma once

#include <cstddef>
#include <functional>

namespace npsobol {

struct BrentResult {
  double x;
  double fx;
  bool converged;
  std::size_t evaluations;
};

/// Brent's parabolic/golden-section minimizer on [lo, hi].
///
/// Stops when the bracket around the current best point is within `tol`
/// (absolute, in the units of x). The returned point is the best of the
/// interior minimizer and the two endpoints. A non-finite objective value
/// aborts the search with converged = false and the best finite point seen.
BrentResult brent_minimize(const std::function<double(double)>& objective, double lo, double hi,
                           double tol, std::size_t max_iter);

} // namespace npsobol
