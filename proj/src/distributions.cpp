#include "npsobol/distributions.hpp"

#include "npsobol/errors.hpp"

#include <boost/math/distributions/normal.hpp>

#include <algorithm>
#include <cmath>

namespace npsobol {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double gumbel_cdf(const GumbelTruncated& g, double x)
{
  return std::exp(-std::exp(-(x - g.mu) / g.beta));
}

double normal_cdf(const NormalTruncated& d, double x)
{
  if (x == std::numeric_limits<double>::infinity())
    return 1.0;
  if (x == -std::numeric_limits<double>::infinity())
    return 0.0;
  return boost::math::cdf(boost::math::normal(d.mean, d.sd), x);
}

// Maps p in (0, 1) onto [F(lo), F(hi)] for a truncated law.
double truncated_level(double f_lo, double f_hi, double p)
{
  return f_lo + p * (f_hi - f_lo);
}

} // namespace

void validate(const DistributionSpec& spec)
{
  std::visit(overloaded{
               [](const Uniform& d) {
                 if (!(d.lo < d.hi))
                   throw DomainError("uniform needs lo < hi");
               },
               [](const Triangular& d) {
                 if (!(d.lo < d.hi) || d.mode < d.lo || d.mode > d.hi)
                   throw DomainError("triangular needs lo <= mode <= hi and lo < hi");
               },
               [](const GumbelTruncated& d) {
                 if (!(d.beta > 0.0) || !(d.lo < d.hi))
                   throw DomainError("truncated gumbel needs beta > 0 and lo < hi");
               },
               [](const NormalTruncated& d) {
                 if (!(d.sd > 0.0) || !(d.lo < d.hi) || !std::isfinite(d.lo))
                   throw DomainError("truncated normal needs sd > 0 and finite lo < hi");
               },
             },
             spec);
}

double cdf(const DistributionSpec& spec, double x)
{
  return std::visit(
    overloaded{
      [x](const Uniform& d) { return std::clamp((x - d.lo) / (d.hi - d.lo), 0.0, 1.0); },
      [x](const Triangular& d) {
        if (x <= d.lo)
          return 0.0;
        if (x >= d.hi)
          return 1.0;
        const double width = d.hi - d.lo;
        if (x <= d.mode)
          return (x - d.lo) * (x - d.lo) / (width * (d.mode - d.lo));
        return 1.0 - (d.hi - x) * (d.hi - x) / (width * (d.hi - d.mode));
      },
      [x](const GumbelTruncated& d) {
        if (x <= d.lo)
          return 0.0;
        if (x >= d.hi)
          return 1.0;
        const double lo = gumbel_cdf(d, d.lo);
        return (gumbel_cdf(d, x) - lo) / (gumbel_cdf(d, d.hi) - lo);
      },
      [x](const NormalTruncated& d) {
        if (x <= d.lo)
          return 0.0;
        if (x >= d.hi)
          return 1.0;
        const double lo = normal_cdf(d, d.lo);
        return (normal_cdf(d, x) - lo) / (normal_cdf(d, d.hi) - lo);
      },
    },
    spec);
}

double quantile(const DistributionSpec& spec, double p)
{
  if (!(p > 0.0 && p < 1.0))
    throw DomainError("quantile level must lie in (0, 1)");
  return std::visit(
    overloaded{
      [p](const Uniform& d) { return std::clamp(d.lo + p * (d.hi - d.lo), d.lo, d.hi); },
      [p](const Triangular& d) {
        const double width = d.hi - d.lo;
        const double at_mode = (d.mode - d.lo) / width;
        const double x = p < at_mode ? d.lo + std::sqrt(p * width * (d.mode - d.lo))
                                     : d.hi - std::sqrt((1.0 - p) * width * (d.hi - d.mode));
        return std::clamp(x, d.lo, d.hi);
      },
      [p](const GumbelTruncated& d) {
        const double level = truncated_level(gumbel_cdf(d, d.lo), gumbel_cdf(d, d.hi), p);
        const double x = d.mu - d.beta * std::log(-std::log(level));
        return std::clamp(x, d.lo, d.hi);
      },
      [p](const NormalTruncated& d) {
        const double level = truncated_level(normal_cdf(d, d.lo), normal_cdf(d, d.hi), p);
        const double x = boost::math::quantile(boost::math::normal(d.mean, d.sd), level);
        return std::clamp(x, d.lo, d.hi);
      },
    },
    spec);
}

std::vector<double> sample_distribution(const DistributionSpec& spec, std::size_t n,
                                        RandomStream& rng)
{
  validate(spec);
  if (n < 1)
    throw DomainError("sample size must be at least 1");
  std::vector<double> out(n);
  for (auto& v : out)
    v = quantile(spec, rng.uniform_open01());
  return out;
}

} // namespace npsobol
