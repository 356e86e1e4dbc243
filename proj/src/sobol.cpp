#include "npsobol/sobol.hpp"

#include "npsobol/errors.hpp"
#include "npsobol/parallel.hpp"
#include "npsobol/smoother.hpp"

#include <cmath>
#include <cstdint>
#include <string>

namespace npsobol {

std::string_view to_string(Method m)
{
  switch (m) {
  case Method::PlugIn:
    return "plugin";
  case Method::CV:
    return "cv";
  case Method::Boot:
    return "boot";
  case Method::Exact:
    return "exact";
  case Method::PickFreeze:
    return "pickfreeze";
  }
  return "unknown";
}

Method method_from_string(std::string_view s)
{
  for (Method m : {Method::PlugIn, Method::CV, Method::Boot, Method::Exact, Method::PickFreeze})
    if (to_string(m) == s)
      return m;
  throw DomainError("unknown method '" + std::string(s) + "'");
}

ResponseMoments response_moments(std::span<const double> y)
{
  if (y.size() < 2)
    throw DomainError("response moments need at least two values");
  const double m = mean(y);
  double ss = 0.0;
  for (double v : y)
    ss += (v - m) * (v - m);
  return {m, ss / static_cast<double>(y.size() - 1)};
}

double v_hat(const RegressionSample& sample, double h, const KernelSpec& kernel)
{
  const auto fit = fit_design(sample, h, kernel);
  double s = 0.0;
  for (double m : fit.values)
    s += m * m;
  return s / static_cast<double>(sample.size());
}

namespace {

ResponseMoments checked_moments(const RegressionSample& sample)
{
  const auto mom = response_moments(sample.y());
  if (!(mom.var > 0.0))
    throw DegenerateResponse("response has zero variance");
  return mom;
}

// (1/n) Σ (m̂_k - Ȳ)²
double centred_spread(std::span<const double> fitted, double y_bar)
{
  double s = 0.0;
  for (double m : fitted)
    s += (m - y_bar) * (m - y_bar);
  return s / static_cast<double>(fitted.size());
}

double variance_n1(std::span<const double> v)
{
  const double m = mean(v);
  double ss = 0.0;
  for (double x : v)
    ss += (x - m) * (x - m);
  return ss / static_cast<double>(v.size() - 1);
}

SobolEstimate plugin_at(const RegressionSample& sample, double h, const KernelSpec& kernel,
                        const ResponseMoments& mom, std::size_t variable)
{
  const auto fit = fit_design(sample, h, kernel);
  SobolEstimate est;
  est.variable = variable;
  est.method = Method::PlugIn;
  est.h = h;
  est.value = centred_spread(fit.values, mom.mean) / mom.var;
  est.degenerate_points = fit.degenerate_points;
  return est;
}

SobolEstimate boot_estimate(const RegressionSample& sample, const KernelSpec& kernel,
                            const BootSelection& sel, const ResponseMoments& mom,
                            std::size_t variable)
{
  const auto fit = fit_design(sample, sel.responses.mean_response, sel.result.h, kernel);
  SobolEstimate est;
  est.variable = variable;
  est.method = Method::Boot;
  est.h = sel.result.h;
  est.flat_curve = sel.result.flat_curve;
  est.value = variance_n1(fit.values) / mom.var;
  est.degenerate_points = fit.degenerate_points;
  return est;
}

} // namespace

SobolEstimate sobol_plugin(const RegressionSample& sample, double h, const KernelSpec& kernel,
                           std::size_t variable)
{
  if (!(h > 0.0))
    throw DomainError("bandwidth must be positive");
  return plugin_at(sample, h, kernel, checked_moments(sample), variable);
}

SobolEstimate sobol_cv(const RegressionSample& sample, const KernelSpec& kernel,
                       const BandwidthSearchSpec& search, std::size_t variable)
{
  const auto mom = checked_moments(sample);
  const auto sel = select_cv(sample, kernel, search);
  auto est = plugin_at(sample, sel.h, kernel, mom, variable);
  est.method = Method::CV;
  est.flat_curve = sel.flat_curve;
  return est;
}

SobolEstimate sobol_boot(const RegressionSample& sample, const KernelSpec& kernel,
                         const BandwidthSearchSpec& search, const BootstrapConfig& boot,
                         const RandomStream& rng, std::size_t variable)
{
  const auto mom = checked_moments(sample);
  const auto sel = select_boot_detailed(sample, kernel, search, boot, rng);
  return boot_estimate(sample, kernel, sel, mom, variable);
}

PairedEstimates sobol_cv_and_boot(const RegressionSample& sample, const KernelSpec& kernel,
                                  const BandwidthSearchSpec& search, const BootstrapConfig& boot,
                                  const RandomStream& rng, std::size_t variable, bool want_cv,
                                  bool want_boot)
{
  PairedEstimates out;
  if (!want_cv && !want_boot)
    return out;
  const auto mom = checked_moments(sample);
  const auto pilot = select_cv(sample, kernel, search);
  if (want_cv) {
    auto est = plugin_at(sample, pilot.h, kernel, mom, variable);
    est.method = Method::CV;
    est.flat_curve = pilot.flat_curve;
    out.cv = est;
  }
  if (want_boot) {
    const auto sel = select_boot_with_pilot(sample, kernel, search, boot, rng, pilot);
    out.boot = boot_estimate(sample, kernel, sel, mom, variable);
  }
  return out;
}

void Dataset::validate() const
{
  if (columns.empty())
    throw DomainError("dataset has no input columns");
  if (names.size() != columns.size())
    throw DomainError("dataset column names do not match the columns");
  for (const auto& c : columns)
    if (c.size() != response.size())
      throw DomainError("dataset columns have different lengths");
}

namespace {

std::uint64_t name_key(const std::string& name)
{
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : name) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

} // namespace

std::vector<EstimateRecord> estimate_all(const Dataset& data, const EstimateConfig& config)
{
  data.validate();
  bool want_cv = false;
  bool want_boot = false;
  for (Method m : config.methods) {
    if (m == Method::CV)
      want_cv = true;
    else if (m == Method::Boot)
      want_boot = true;
    else
      throw DomainError("estimate_all supports the cv and boot methods only");
  }

  const std::size_t p = data.inputs();
  std::vector<std::vector<EstimateRecord>> per_column(p);
  const RandomStream master(config.seed);

  parallel_for(p, config.threads, [&](std::size_t i) {
    auto& out = per_column[i];
    auto record = [&](Method m) { return EstimateRecord{i, data.names[i], m, std::nullopt, {}}; };
    try {
      const RegressionSample sample(data.columns[i], data.response);
      const auto spec = resolve_search(config.search, sample);
      const auto est = sobol_cv_and_boot(sample, config.kernel, spec, config.boot,
                                         master.child(name_key(data.names[i])), i, want_cv,
                                         want_boot);
      for (Method m : config.methods) {
        auto r = record(m);
        r.estimate = m == Method::CV ? est.cv : est.boot;
        out.push_back(std::move(r));
      }
    } catch (const std::exception& e) {
      for (Method m : config.methods) {
        auto r = record(m);
        r.error = e.what();
        out.push_back(std::move(r));
      }
    }
  });

  std::vector<EstimateRecord> records;
  for (auto& col : per_column)
    for (auto& r : col)
      records.push_back(std::move(r));
  return records;
}

} // namespace npsobol
