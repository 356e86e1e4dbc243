#pragma once

#include "npsobol/random.hpp"

#include <cstddef>
#include <limits>
#include <variant>
#include <vector>

namespace npsobol {

struct Uniform {
  double lo;
  double hi;
};

struct Triangular {
  double lo;
  double mode;
  double hi;
};

// Gumbel (maximum) with location mu and scale beta, restricted to [lo, hi].
struct GumbelTruncated {
  double mu;
  double beta;
  double lo;
  double hi;
};

// Normal restricted to [lo, hi]; hi may be +infinity.
struct NormalTruncated {
  double mean;
  double sd;
  double lo;
  double hi = std::numeric_limits<double>::infinity();
};

using DistributionSpec = std::variant<Uniform, Triangular, GumbelTruncated, NormalTruncated>;

void validate(const DistributionSpec& spec);

double cdf(const DistributionSpec& spec, double x);
/// Inverse CDF on (0, 1); the result always lies inside the support.
double quantile(const DistributionSpec& spec, double p);

/// n inverse-CDF draws. Truncated laws draw p uniformly on [CDF(lo), CDF(hi)].
std::vector<double> sample_distribution(const DistributionSpec& spec, std::size_t n,
                                        RandomStream& rng);

} // namespace npsobol
