#pragma once

#include "npsobol/bandwidth.hpp"
#include "npsobol/bootstrap.hpp"
#include "npsobol/kernels.hpp"
#include "npsobol/random.hpp"
#include "npsobol/sample.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace npsobol {

enum class Method { PlugIn, CV, Boot, Exact, PickFreeze };

std::string_view to_string(Method m);
Method method_from_string(std::string_view s);

struct SobolEstimate {
  std::size_t variable = 0;
  double value = 0.0;
  Method method = Method::PlugIn;
  std::optional<double> h; // set for PlugIn, CV and Boot
  bool flat_curve = false;
  std::size_t degenerate_points = 0;

  bool negative() const noexcept { return value < 0.0; }
};

struct ResponseMoments {
  double mean;
  double var; // divisor n - 1
};

ResponseMoments response_moments(std::span<const double> y);

/// V̂(h) = (1/n) Σ m̂_h(X_k)².
double v_hat(const RegressionSample& sample, double h, const KernelSpec& kernel);

/// Ŝ(h): centred spread of the fitted curve, (1/n) Σ (m̂_h(X_k) - Ȳ)², over s_Y².
/// Throws DegenerateResponse when s_Y² = 0.
SobolEstimate sobol_plugin(const RegressionSample& sample, double h, const KernelSpec& kernel,
                           std::size_t variable = 0);

SobolEstimate sobol_cv(const RegressionSample& sample, const KernelSpec& kernel,
                       const BandwidthSearchSpec& search, std::size_t variable = 0);

/// Variance (divisor n - 1) of the bootstrap mean curve at ĥ_boot over s_Y².
SobolEstimate sobol_boot(const RegressionSample& sample, const KernelSpec& kernel,
                         const BandwidthSearchSpec& search, const BootstrapConfig& boot,
                         const RandomStream& rng, std::size_t variable = 0);

/// Both estimators from a single CV search; the bootstrap reuses the CV pilot.
struct PairedEstimates {
  std::optional<SobolEstimate> cv;
  std::optional<SobolEstimate> boot;
};

PairedEstimates sobol_cv_and_boot(const RegressionSample& sample, const KernelSpec& kernel,
                                  const BandwidthSearchSpec& search, const BootstrapConfig& boot,
                                  const RandomStream& rng, std::size_t variable, bool want_cv,
                                  bool want_boot);

/// Column-major design with named columns and a response.
struct Dataset {
  std::vector<std::string> names;
  std::vector<std::vector<double>> columns;
  std::string response_name = "y";
  std::vector<double> response;

  std::size_t rows() const noexcept { return response.size(); }
  std::size_t inputs() const noexcept { return columns.size(); }
  void validate() const;
};

struct EstimateConfig {
  KernelSpec kernel{};
  SearchOptions search{};
  BootstrapConfig boot{};
  std::vector<Method> methods{Method::CV};
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

/// One record per (column, method); a failed column carries its error and no estimate.
struct EstimateRecord {
  std::size_t variable;
  std::string name;
  Method method;
  std::optional<SobolEstimate> estimate;
  std::string error;
};

/// Runs the configured estimators on every input column. A column draws its
/// bootstrap noise from a child stream keyed by its name, so results depend
/// neither on scheduling nor on column order.
std::vector<EstimateRecord> estimate_all(const Dataset& data, const EstimateConfig& config);

} // namespace npsobol
