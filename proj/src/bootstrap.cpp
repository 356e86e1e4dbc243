#include "npsobol/bootstrap.hpp"

#include "npsobol/errors.hpp"
#include "npsobol/smoother.hpp"

#include <algorithm>
#include <cmath>

namespace npsobol {

namespace {

double population_sd(std::span<const double> v)
{
  const double m = mean(v);
  double ss = 0.0;
  for (double x : v)
    ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(v.size()));
}

double sample_sd(std::span<const double> v)
{
  if (v.size() < 2)
    return 0.0;
  const double m = mean(v);
  double ss = 0.0;
  for (double x : v)
    ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

} // namespace

double BootstrapConfig::floor_for(const RegressionSample& sample) const
{
  if (sigma_floor)
    return *sigma_floor;
  return 1e-8 * (1.0 + sample_sd(sample.y()));
}

void BootstrapConfig::validate() const
{
  if (B < 1)
    throw DomainError("bootstrap needs B >= 1");
  if (sigma_floor && !(*sigma_floor > 0.0))
    throw DomainError("sigma floor must be positive");
}

std::vector<double> conditional_sd(const RegressionSample& sample, std::span<const double> epsilon,
                                   double h0, const KernelSpec& /*kernel*/,
                                   const BootstrapConfig& cfg)
{
  const std::size_t n = sample.size();
  if (epsilon.size() != n)
    throw DomainError("residual vector length does not match the sample");
  const double floor = cfg.floor_for(sample);

  std::vector<double> sigma(n);
  if (cfg.sigma_mode == SigmaMode::Global) {
    std::fill(sigma.begin(), sigma.end(), std::max(population_sd(epsilon), floor));
    return sigma;
  }

  // The variance smoother always uses the nonnegative second-order kernel so
  // the estimate stays a weighted average of squares, whatever the regression
  // kernel order.
  const double eps_bar = mean(epsilon);
  std::vector<double> sq(n);
  for (std::size_t k = 0; k < n; ++k)
    sq[k] = (epsilon[k] - eps_bar) * (epsilon[k] - eps_bar);
  const auto var = fit_design(sample, sq, h0, KernelSpec(KernelOrder::Second));
  for (std::size_t k = 0; k < n; ++k)
    sigma[k] = std::max(std::sqrt(std::max(var.values[k], 0.0)), floor);
  return sigma;
}

ResidualSet residuals(const RegressionSample& sample, double h0, const KernelSpec& kernel,
                      const BootstrapConfig& cfg)
{
  cfg.validate();
  const std::size_t n = sample.size();
  auto fit = fit_design(sample, h0, kernel);
  if (fit.degenerate_points == n)
    throw ConditioningError("pilot smoother is degenerate at every design point (h0 = " +
                            std::to_string(h0) + ")");

  ResidualSet rs;
  rs.h0 = h0;
  rs.fitted = std::move(fit.values);
  rs.epsilon.resize(n);
  for (std::size_t k = 0; k < n; ++k)
    rs.epsilon[k] = sample.y()[k] - rs.fitted[k];
  rs.epsilon_bar = mean(rs.epsilon);
  rs.sigma = conditional_sd(sample, rs.epsilon, h0, kernel, cfg);
  rs.nu.resize(n);
  for (std::size_t k = 0; k < n; ++k)
    rs.nu[k] = (rs.epsilon[k] - rs.epsilon_bar) / rs.sigma[k];
  const double nu_bar = mean(rs.nu);
  for (double& v : rs.nu)
    v -= nu_bar;
  return rs;
}

std::vector<double> reconstruct_response(const RegressionSample& sample, const ResidualSet& rs,
                                         RandomStream& rng)
{
  const std::size_t n = sample.size();
  if (rs.fitted.size() != n || rs.sigma.size() != n || rs.nu.size() != n)
    throw DomainError("residual set was not built from this sample");
  std::vector<double> y(n);
  for (std::size_t k = 0; k < n; ++k)
    y[k] = rs.fitted[k] + rs.sigma[k] * rs.nu[rng.index(n)];
  return y;
}

BootstrapResponses draw_responses(const RegressionSample& sample, const ResidualSet& rs,
                                  const BootstrapConfig& cfg, const RandomStream& rng)
{
  cfg.validate();
  const std::size_t n = sample.size();
  BootstrapResponses out;
  out.responses.reserve(cfg.B);
  out.mean_response.assign(n, 0.0);
  for (std::size_t b = 0; b < cfg.B; ++b) {
    auto stream = rng.child(b);
    out.responses.push_back(reconstruct_response(sample, rs, stream));
    for (std::size_t k = 0; k < n; ++k)
      out.mean_response[k] += out.responses.back()[k];
  }
  for (double& v : out.mean_response)
    v /= static_cast<double>(cfg.B);
  return out;
}

BootstrapEnsemble bootstrap_curves(const RegressionSample& sample, const BootstrapResponses& drawn,
                                   double h, const KernelSpec& kernel)
{
  const std::size_t n = sample.size();
  const std::size_t B = drawn.responses.size();
  BootstrapEnsemble ens;
  ens.h = h;
  ens.responses = drawn.responses;
  ens.curves.reserve(B);
  ens.mean_curve.assign(n, 0.0);
  for (const auto& y : drawn.responses) {
    ens.curves.push_back(fit_design(sample, y, h, kernel).values);
    for (std::size_t k = 0; k < n; ++k)
      ens.mean_curve[k] += ens.curves.back()[k];
  }
  for (double& v : ens.mean_curve)
    v /= static_cast<double>(B);
  return ens;
}

BootstrapEnsemble bootstrap_curves(const RegressionSample& sample, const ResidualSet& rs, double h,
                                   const KernelSpec& kernel, const BootstrapConfig& cfg,
                                   const RandomStream& rng)
{
  return bootstrap_curves(sample, draw_responses(sample, rs, cfg, rng), h, kernel);
}

std::vector<double> ensemble_mean_curve(const RegressionSample& sample,
                                        const BootstrapResponses& drawn, double h,
                                        const KernelSpec& kernel)
{
  return fit_design(sample, drawn.mean_response, h, kernel).values;
}

} // namespace npsobol
