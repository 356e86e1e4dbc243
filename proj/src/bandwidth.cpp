#include "npsobol/bandwidth.hpp"

#include "npsobol/brent.hpp"
#include "npsobol/errors.hpp"
#include "npsobol/smoother.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

namespace npsobol {

void BandwidthSearchSpec::validate() const
{
  if (!(h_min > 0.0) || !(h_min < h_max) || !std::isfinite(h_max))
    throw DomainError("bandwidth search needs 0 < h_min < h_max, got [" + std::to_string(h_min) +
                      ", " + std::to_string(h_max) + "]");
  if (grid_size < 8)
    throw DomainError("bandwidth grid needs at least 8 points");
  if (!(tol > 0.0))
    throw DomainError("bandwidth tolerance must be positive");
}

BandwidthSearchSpec resolve_search(const SearchOptions& options, const RegressionSample& sample)
{
  const auto& sx = sample.sorted_x();
  std::vector<double> gaps;
  gaps.reserve(sx.size());
  for (std::size_t r = 1; r < sx.size(); ++r)
    if (sx[r] > sx[r - 1])
      gaps.push_back(sx[r] - sx[r - 1]);

  BandwidthSearchSpec spec{};
  if (options.h_min) {
    spec.h_min = *options.h_min;
  } else {
    double median_gap = 0.0;
    if (!gaps.empty()) {
      const auto mid = gaps.begin() + static_cast<std::ptrdiff_t>(gaps.size() / 2);
      std::nth_element(gaps.begin(), mid, gaps.end());
      median_gap = *mid;
      if (gaps.size() % 2 == 0) {
        const double lower = *std::max_element(gaps.begin(), mid);
        median_gap = 0.5 * (median_gap + lower);
      }
    }
    spec.h_min = std::max(1e-4, 0.25 * median_gap);
  }
  spec.h_max = options.h_max ? *options.h_max : sample.max_x() - sample.min_x();
  spec.grid_size = options.grid_size;
  spec.tol = options.tol;
  spec.max_iter = options.max_iter;
  spec.validate();
  return spec;
}

CriterionValue cvls(double h, const RegressionSample& sample, const KernelSpec& kernel)
{
  if (!(h > 0.0))
    throw DomainError("bandwidth must be positive");
  if (sample.size() < 3)
    throw DomainError("CVLS needs at least three observations");
  const auto fit = fit_design(sample, h, kernel, /*leave_one_out=*/true);
  const auto& y = sample.y();
  double ss = 0.0;
  for (std::size_t k = 0; k < y.size(); ++k) {
    const double r = y[k] - fit.values[k];
    ss += r * r;
  }
  return {ss / static_cast<double>(y.size()), fit.degenerate_points};
}

double bls(double h, const RegressionSample& sample, std::span<const double> ensemble_mean)
{
  if (!(h > 0.0))
    throw DomainError("bandwidth must be positive");
  if (ensemble_mean.size() != sample.size())
    throw DomainError("ensemble mean curve length does not match the sample");
  const auto& y = sample.y();
  double ss = 0.0;
  for (std::size_t k = 0; k < y.size(); ++k) {
    const double r = y[k] - ensemble_mean[k];
    ss += r * r;
  }
  return ss / static_cast<double>(y.size());
}

BandwidthResult minimize_bandwidth(const std::function<CriterionValue(double)>& objective,
                                   const BandwidthSearchSpec& spec, double tie_tolerance)
{
  if (!(tie_tolerance >= 0.0))
    throw DomainError("tie tolerance must be nonnegative");
  spec.validate();
  std::map<double, CriterionValue> seen;
  auto eval = [&](double h) {
    h = std::clamp(h, spec.h_min, spec.h_max);
    auto it = seen.find(h);
    if (it == seen.end()) {
      auto v = objective(h);
      if (!std::isfinite(v.value))
        v.value = std::numeric_limits<double>::infinity();
      it = seen.emplace(h, v).first;
    }
    return it->second.value;
  };

  const double t_min = std::log(spec.h_min);
  const double t_max = std::log(spec.h_max);
  const std::size_t m = spec.grid_size;
  std::vector<double> grid(m);
  for (std::size_t i = 0; i < m; ++i)
    grid[i] = std::exp(t_min + (t_max - t_min) * static_cast<double>(i) /
                                   static_cast<double>(m - 1));
  grid.front() = spec.h_min;
  grid.back() = spec.h_max;

  double min_value = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < m; ++i)
    min_value = std::min(min_value, eval(grid[i]));
  // Largest grid point within the tie tolerance of the minimum.
  std::size_t best = 0;
  for (std::size_t i = 0; i < m; ++i)
    if (eval(grid[i]) <= min_value + tie_tolerance)
      best = i;
  double best_value = eval(grid[best]);

  BandwidthResult result;
  result.h = grid[best];
  result.objective = best_value;
  result.converged = std::isfinite(best_value);

  if (spec.max_iter > 0 && std::isfinite(best_value)) {
    const double lo = std::log(grid[best == 0 ? 0 : best - 1]);
    const double hi = std::log(grid[best + 1 == m ? m - 1 : best + 1]);
    const auto refined = brent_minimize([&](double t) { return eval(std::exp(t)); }, lo, hi,
                                        spec.tol, spec.max_iter);
    const double h = std::clamp(std::exp(refined.x), spec.h_min, spec.h_max);
    const double v = eval(h);
    if (v < best_value - tie_tolerance) {
      result.h = h;
      result.objective = v;
    }
    result.converged = refined.converged;
  }

  if (best + 1 == m && std::log(spec.h_max) - std::log(result.h) <= spec.tol) {
    result.flat_curve = true;
    result.h = spec.h_max;
    result.objective = eval(spec.h_max);
  }
  result.evaluations = seen.size();
  result.degenerate_points = seen.at(result.h).degenerate_points;
  return result;
}

double criterion_rounding_floor(const RegressionSample& sample)
{
  double mean_sq = 0.0;
  for (double v : sample.y())
    mean_sq += v * v;
  mean_sq /= static_cast<double>(sample.size());
  constexpr double eps = std::numeric_limits<double>::epsilon();
  return 1e4 * eps * eps * mean_sq;
}

BandwidthResult select_cv(const RegressionSample& sample, const KernelSpec& kernel,
                          const BandwidthSearchSpec& spec)
{
  return minimize_bandwidth([&](double h) { return cvls(h, sample, kernel); }, spec,
                            criterion_rounding_floor(sample));
}

BootSelection select_boot_with_pilot(const RegressionSample& sample, const KernelSpec& kernel,
                                     const BandwidthSearchSpec& spec, const BootstrapConfig& boot,
                                     const RandomStream& rng, const BandwidthResult& pilot)
{
  boot.validate();
  BootSelection out;
  out.pilot = pilot;
  out.residuals = residuals(sample, out.pilot.h, kernel, boot);
  // Common random numbers: one set of reconstructed responses for every trial h.
  out.responses = draw_responses(sample, out.residuals, boot, rng);
  out.result = minimize_bandwidth(
    [&](double h) {
      const auto fit = fit_design(sample, out.responses.mean_response, h, kernel);
      return CriterionValue{bls(h, sample, fit.values), fit.degenerate_points};
    },
    spec, criterion_rounding_floor(sample));
  return out;
}

BootSelection select_boot_detailed(const RegressionSample& sample, const KernelSpec& kernel,
                                   const BandwidthSearchSpec& spec, const BootstrapConfig& boot,
                                   const RandomStream& rng)
{
  return select_boot_with_pilot(sample, kernel, spec, boot, rng, select_cv(sample, kernel, spec));
}

BandwidthResult select_boot(const RegressionSample& sample, const KernelSpec& kernel,
                            const BandwidthSearchSpec& spec, const BootstrapConfig& boot,
                            const RandomStream& rng)
{
  return select_boot_detailed(sample, kernel, spec, boot, rng).result;
}

} // namespace npsobol
