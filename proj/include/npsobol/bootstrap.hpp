#pragma once

#include "npsobol/kernels.hpp"
#include "npsobol/random.hpp"
#include "npsobol/sample.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace npsobol {

enum class SigmaMode { Smoothed, Global };

struct BootstrapConfig {
  std::size_t B = 100;
  // Defaults to 1e-8 * (1 + stdev(y)) when unset.
  std::optional<double> sigma_floor;
  SigmaMode sigma_mode = SigmaMode::Smoothed;

  double floor_for(const RegressionSample& sample) const;
  void validate() const;
};

/// Pilot fit and normalised residuals of one input column.
struct ResidualSet {
  std::vector<double> fitted;  // m̂_{h0}(X_k)
  std::vector<double> epsilon; // Y_k - m̂_{h0}(X_k)
  double epsilon_bar = 0.0;
  std::vector<double> sigma;   // conditional standard deviation at X_k, >= floor
  std::vector<double> nu;      // centred normalised residuals
  double h0 = 0.0;
};

/// B reconstructed responses on the fixed design. Independent of the trial
/// bandwidth, so one set serves every objective evaluation.
struct BootstrapResponses {
  std::vector<std::vector<double>> responses;
  std::vector<double> mean_response;
};

struct BootstrapEnsemble {
  std::vector<std::vector<double>> responses; // Y*(b)
  std::vector<std::vector<double>> curves;    // m̂(b) at the design points
  std::vector<double> mean_curve;
  double h = 0.0;
};

ResidualSet residuals(const RegressionSample& sample, double h0, const KernelSpec& kernel,
                      const BootstrapConfig& cfg);

/// σ(X_k) for each design point, never below the configured floor.
/// Smoothed mode: square root of the second-order NW smooth of (ε - ε̄)² at bandwidth h0.
/// Global mode: population standard deviation of ε.
std::vector<double> conditional_sd(const RegressionSample& sample, std::span<const double> epsilon,
                                   double h0, const KernelSpec& kernel, const BootstrapConfig& cfg);

/// Y*_k = m̂_{h0}(X_k) + σ(X_k) ν*_k with ν* drawn with replacement from ν.
std::vector<double> reconstruct_response(const RegressionSample& sample, const ResidualSet& rs,
                                         RandomStream& rng);

/// Draws the B responses; replicate b uses rng.child(b).
BootstrapResponses draw_responses(const RegressionSample& sample, const ResidualSet& rs,
                                  const BootstrapConfig& cfg, const RandomStream& rng);

/// Refits every replicate at bandwidth h on the fixed design.
BootstrapEnsemble bootstrap_curves(const RegressionSample& sample, const ResidualSet& rs, double h,
                                   const KernelSpec& kernel, const BootstrapConfig& cfg,
                                   const RandomStream& rng);

BootstrapEnsemble bootstrap_curves(const RegressionSample& sample, const BootstrapResponses& drawn,
                                   double h, const KernelSpec& kernel);

/// Mean of the B curves at bandwidth h. NW is linear in the response for a fixed
/// design and bandwidth (the empty-window fallback included), so this is the fit
/// of the mean response.
std::vector<double> ensemble_mean_curve(const RegressionSample& sample,
                                        const BootstrapResponses& drawn, double h,
                                        const KernelSpec& kernel);

} // namespace npsobol
