#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace npsobol {

//! One input column paired with the response, plus a sorted view of the
//! input used by the compact-support smoothing loops.
class RegressionSample {
public:
  RegressionSample(std::vector<double> x, std::vector<double> y);

  std::size_t size() const noexcept { return x_.size(); }
  const std::vector<double>& x() const noexcept { return x_; }
  const std::vector<double>& y() const noexcept { return y_; }

  // order()[r] is the original index of the r-th smallest x.
  const std::vector<std::size_t>& order() const noexcept { return order_; }
  // rank()[k] is the sorted position of observation k.
  const std::vector<std::size_t>& rank() const noexcept { return rank_; }
  const std::vector<double>& sorted_x() const noexcept { return sorted_x_; }

  double min_x() const noexcept { return sorted_x_.front(); }
  double max_x() const noexcept { return sorted_x_.back(); }
  double mean_y() const noexcept { return mean_y_; }

  // Same design, different response (bootstrap refits).
  RegressionSample with_response(std::vector<double> y) const;
  // Sample with observation k removed; requires size() >= 2.
  RegressionSample without(std::size_t k) const;

private:
  RegressionSample(std::vector<double> x, std::vector<double> y, const RegressionSample& design);
  void validate() const;

  std::vector<double> x_;
  std::vector<double> y_;
  std::vector<std::size_t> order_;
  std::vector<std::size_t> rank_;
  std::vector<double> sorted_x_;
  double mean_y_ = 0.0;
};

double mean(std::span<const double> v);

} // namespace npsobol
