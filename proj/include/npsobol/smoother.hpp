#pragma once

#include "npsobol/kernels.hpp"
#include "npsobol/sample.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace npsobol {

/// Raised (as a record, not an exception) when |f̂(x0)| falls under the floor.
struct DegenerateDenominator {
  double x0;
  double density;
};

/// A Nadaraya-Watson prediction. When `degenerate` is set, `value` holds the
/// fallback (global mean of the response) and callers decide what to do with it.
struct NwPrediction {
  double value;
  std::optional<DegenerateDenominator> degenerate;
};

/// Fitted values at every design point.
struct DesignFit {
  std::vector<double> values;
  std::size_t degenerate_points = 0;
};

// |f̂| below floor_scale / h counts as an empty neighbourhood.
inline constexpr double kDenominatorFloor = 1e-12;

/// f̂(x0) = (1/nh) Σ K((x0 - X_l)/h).
double density_nw(double x0, const RegressionSample& sample, double h, const KernelSpec& kernel);

/// ĝ(x0) = (1/nh) Σ Y_l K((x0 - X_l)/h).
double numerator_nw(double x0, const RegressionSample& sample, double h, const KernelSpec& kernel);

/// m̂(x0) = ĝ(x0) / f̂(x0), with the global-mean fallback on a degenerate denominator.
NwPrediction regression_nw(double x0, const RegressionSample& sample, double h,
                           const KernelSpec& kernel);

/// Leave-one-out prediction at X_k from all other points (k is 0-based here).
NwPrediction loo_regression_nw(std::size_t k, const RegressionSample& sample, double h,
                               const KernelSpec& kernel);

/// NW fit of an arbitrary response on the sample's design, evaluated at every
/// design point. With `leave_one_out` point k is excluded from its own fit.
/// `response` must have sample.size() entries; the fallback is mean(response).
DesignFit fit_design(const RegressionSample& design, std::span<const double> response, double h,
                     const KernelSpec& kernel, bool leave_one_out = false);

/// Same as fit_design on the sample's own response.
DesignFit fit_design(const RegressionSample& sample, double h, const KernelSpec& kernel,
                     bool leave_one_out = false);

} // namespace npsobol
