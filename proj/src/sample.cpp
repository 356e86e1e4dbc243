#include "npsobol/sample.hpp"

#include "npsobol/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace npsobol {

double mean(std::span<const double> v)
{
  if (v.empty())
    return 0.0;
  double s = 0.0;
  for (double x : v)
    s += x;
  return s / static_cast<double>(v.size());
}

RegressionSample::RegressionSample(std::vector<double> x, std::vector<double> y)
  : x_(std::move(x)), y_(std::move(y))
{
  validate();
  const std::size_t n = x_.size();
  order_.resize(n);
  std::iota(order_.begin(), order_.end(), std::size_t{0});
  std::stable_sort(order_.begin(), order_.end(),
                   [this](std::size_t a, std::size_t b) { return x_[a] < x_[b]; });
  rank_.resize(n);
  sorted_x_.resize(n);
  for (std::size_t r = 0; r < n; ++r) {
    rank_[order_[r]] = r;
    sorted_x_[r] = x_[order_[r]];
  }
  mean_y_ = mean(y_);
}

RegressionSample::RegressionSample(std::vector<double> x, std::vector<double> y,
                                   const RegressionSample& design)
  : x_(std::move(x)), y_(std::move(y)), order_(design.order_), rank_(design.rank_),
    sorted_x_(design.sorted_x_)
{
  validate();
  mean_y_ = mean(y_);
}

void RegressionSample::validate() const
{
  if (x_.size() != y_.size())
    throw DomainError("x and y must have the same length");
  if (x_.empty())
    throw DomainError("regression sample is empty");
  for (std::size_t k = 0; k < x_.size(); ++k)
    if (!std::isfinite(x_[k]) || !std::isfinite(y_[k]))
      throw DomainError("regression sample has a non-finite entry at index " +
                        std::to_string(k));
}

RegressionSample RegressionSample::with_response(std::vector<double> y) const
{
  return RegressionSample(x_, std::move(y), *this);
}

RegressionSample RegressionSample::without(std::size_t k) const
{
  if (size() < 2 || k >= size())
    throw DomainError("cannot remove point " + std::to_string(k));
  std::vector<double> x, y;
  x.reserve(size() - 1);
  y.reserve(size() - 1);
  for (std::size_t j = 0; j < size(); ++j) {
    if (j == k)
      continue;
    x.push_back(x_[j]);
    y.push_back(y_[j]);
  }
  return RegressionSample(std::move(x), std::move(y));
}

} // namespace npsobol
