#pragma once

#include "npsobol/bootstrap.hpp"
#include "npsobol/kernels.hpp"
#include "npsobol/random.hpp"
#include "npsobol/sample.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace npsobol {

struct BandwidthSearchSpec {
  double h_min;
  double h_max;
  std::size_t grid_size = 32;
  double tol = 1e-4;          // in log(h)
  std::size_t max_iter = 100; // 0 = grid only

  void validate() const;
};

/// User-facing search options; unset bounds come from the data.
struct SearchOptions {
  std::optional<double> h_min;
  std::optional<double> h_max;
  std::size_t grid_size = 32;
  double tol = 1e-4;
  std::size_t max_iter = 100;
};

/// h_min = max(1e-4, 0.25 * median gap of the distinct sorted x), h_max = range(x),
/// unless overridden.
BandwidthSearchSpec resolve_search(const SearchOptions& options, const RegressionSample& sample);

struct BandwidthResult {
  double h = 0.0;
  double objective = 0.0;
  bool converged = false;
  bool flat_curve = false;
  std::size_t evaluations = 0;
  std::size_t degenerate_points = 0; // at the selected h
};

struct CriterionValue {
  double value;
  std::size_t degenerate_points;
};

/// CVLS(h) = (1/n) Σ (Y_k - m̂_{-k}(X_k))².
CriterionValue cvls(double h, const RegressionSample& sample, const KernelSpec& kernel);

/// BLS(h) = (1/n) Σ (Y_k - mean_curve_k)².
double bls(double h, const RegressionSample& sample, std::span<const double> ensemble_mean);

/// Log-spaced scan followed by Brent refinement inside the best grid cell.
/// `objective` maps h to a criterion value and must be deterministic. Grid
/// values within `tie_tolerance` of the minimum count as ties, won by the
/// larger h.
BandwidthResult minimize_bandwidth(const std::function<CriterionValue(double)>& objective,
                                   const BandwidthSearchSpec& spec, double tie_tolerance = 0.0);

/// Size of rounding noise in a squared-error criterion on this response
/// (a small multiple of eps² · mean(y²)); differences below it are ties.
double criterion_rounding_floor(const RegressionSample& sample);

BandwidthResult select_cv(const RegressionSample& sample, const KernelSpec& kernel,
                          const BandwidthSearchSpec& spec);

/// Everything select_boot builds along the way, reused by the bootstrap index.
struct BootSelection {
  BandwidthResult result;
  BandwidthResult pilot; // the CV bandwidth used as h0
  ResidualSet residuals;
  BootstrapResponses responses;
};

/// Bootstrap selection seeded with an already computed CV bandwidth.
BootSelection select_boot_with_pilot(const RegressionSample& sample, const KernelSpec& kernel,
                                     const BandwidthSearchSpec& spec, const BootstrapConfig& boot,
                                     const RandomStream& rng, const BandwidthResult& pilot);

BootSelection select_boot_detailed(const RegressionSample& sample, const KernelSpec& kernel,
                                   const BandwidthSearchSpec& spec, const BootstrapConfig& boot,
                                   const RandomStream& rng);

BandwidthResult select_boot(const RegressionSample& sample, const KernelSpec& kernel,
                            const BandwidthSearchSpec& spec, const BootstrapConfig& boot,
                            const RandomStream& rng);

} // namespace npsobol
