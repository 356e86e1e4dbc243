#include "npsobol/smoother.hpp"

#include "npsobol/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace npsobol {

namespace {

void check_bandwidth(double h)
{
  if (!(h > 0.0) || !std::isfinite(h))
    throw DomainError("bandwidth must be positive and finite, got " + std::to_string(h));
}

void check_point(double x0)
{
  if (!std::isfinite(x0))
    throw DomainError("evaluation point must be finite");
}

// Kernel sums Σ K and Σ y K over the points within h of x0, optionally skipping
// one sorted position.
struct WindowSums {
  double s0 = 0.0;
  double s1 = 0.0;
};

WindowSums window_sums(double x0, const RegressionSample& s, std::span<const double> response,
                       double h, const KernelSpec& kernel, std::size_t skip_rank)
{
  const auto& sx = s.sorted_x();
  const auto& order = s.order();
  const auto lo = std::lower_bound(sx.begin(), sx.end(), x0 - h) - sx.begin();
  const auto hi = std::upper_bound(sx.begin(), sx.end(), x0 + h) - sx.begin();
  WindowSums acc;
  for (auto r = static_cast<std::size_t>(lo); r < static_cast<std::size_t>(hi); ++r) {
    if (r == skip_rank)
      continue;
    const double w = kernel.weight((x0 - sx[r]) / h);
    acc.s0 += w;
    acc.s1 += w * response[order[r]];
  }
  return acc;
}

constexpr std::size_t kNoSkip = static_cast<std::size_t>(-1);

bool below_floor(double kernel_sum, std::size_t count)
{
  // |f̂| = |Σ K| / (count h) < floor / h
  return std::abs(kernel_sum) < kDenominatorFloor * static_cast<double>(count);
}

} // namespace

double density_nw(double x0, const RegressionSample& sample, double h, const KernelSpec& kernel)
{
  check_bandwidth(h);
  check_point(x0);
  const auto sums = window_sums(x0, sample, sample.y(), h, kernel, kNoSkip);
  return sums.s0 / (static_cast<double>(sample.size()) * h);
}

double numerator_nw(double x0, const RegressionSample& sample, double h, const KernelSpec& kernel)
{
  check_bandwidth(h);
  check_point(x0);
  const auto sums = window_sums(x0, sample, sample.y(), h, kernel, kNoSkip);
  return sums.s1 / (static_cast<double>(sample.size()) * h);
}

NwPrediction regression_nw(double x0, const RegressionSample& sample, double h,
                           const KernelSpec& kernel)
{
  check_bandwidth(h);
  check_point(x0);
  const auto sums = window_sums(x0, sample, sample.y(), h, kernel, kNoSkip);
  if (below_floor(sums.s0, sample.size())) {
    const double density = sums.s0 / (static_cast<double>(sample.size()) * h);
    return {sample.mean_y(), DegenerateDenominator{x0, density}};
  }
  return {sums.s1 / sums.s0, std::nullopt};
}

NwPrediction loo_regression_nw(std::size_t k, const RegressionSample& sample, double h,
                               const KernelSpec& kernel)
{
  check_bandwidth(h);
  if (sample.size() < 2)
    throw DomainError("leave-one-out needs at least two points");
  if (k >= sample.size())
    throw DomainError("leave-one-out index out of range");
  const double x0 = sample.x()[k];
  const auto sums = window_sums(x0, sample, sample.y(), h, kernel, sample.rank()[k]);
  const std::size_t count = sample.size() - 1;
  if (below_floor(sums.s0, count)) {
    const double density = sums.s0 / (static_cast<double>(count) * h);
    return {sample.mean_y(), DegenerateDenominator{x0, density}};
  }
  return {sums.s1 / sums.s0, std::nullopt};
}

DesignFit fit_design(const RegressionSample& design, std::span<const double> response, double h,
                     const KernelSpec& kernel, bool leave_one_out)
{
  check_bandwidth(h);
  const std::size_t n = design.size();
  if (response.size() != n)
    throw DomainError("response length does not match the design");
  if (leave_one_out && n < 2)
    throw DomainError("leave-one-out needs at least two points");

  const auto& sx = design.sorted_x();
  const auto& order = design.order();
  const double fallback = mean(response);
  const std::size_t count = leave_one_out ? n - 1 : n;

  DesignFit fit;
  fit.values.resize(n);
  std::size_t lo = 0;
  std::size_t hi = 0;
  for (std::size_t r = 0; r < n; ++r) {
    const double x0 = sx[r];
    while (lo < n && sx[lo] < x0 - h)
      ++lo;
    if (hi < lo)
      hi = lo;
    while (hi < n && sx[hi] <= x0 + h)
      ++hi;
    double s0 = 0.0;
    double s1 = 0.0;
    for (std::size_t j = lo; j < hi; ++j) {
      if (leave_one_out && j == r)
        continue;
      const double w = kernel.weight((x0 - sx[j]) / h);
      s0 += w;
      s1 += w * response[order[j]];
    }
    double value;
    if (below_floor(s0, count)) {
      value = fallback;
      ++fit.degenerate_points;
    } else {
      value = s1 / s0;
    }
    fit.values[order[r]] = value;
  }
  return fit;
}

DesignFit fit_design(const RegressionSample& sample, double h, const KernelSpec& kernel,
                     bool leave_one_out)
{
  return fit_design(sample, sample.y(), h, kernel, leave_one_out);
}

} // namespace npsobol
