#pragma once

// Brute-force reference implementations for the tests. They work on raw
// vectors and share no code with the library.

#include <cmath>
#include <cstddef>
#include <random>
#include <vector>

namespace oracle {

inline double k2(double u)
{
  return std::abs(u) <= 1.0 ? 0.75 * (1.0 - u * u) : 0.0;
}

inline double k4(double u)
{
  return std::abs(u) <= 1.0 ? 45.0 / 32.0 * (1.0 - 7.0 * u * u / 3.0) * (1.0 - u * u) : 0.0;
}

inline double kern(double u, int order)
{
  return order == 2 ? k2(u) : k4(u);
}

inline double density(double x0, const std::vector<double>& x, double h, int order,
                      std::size_t skip = static_cast<std::size_t>(-1))
{
  double s = 0.0;
  std::size_t m = 0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (j == skip)
      continue;
    s += kern((x0 - x[j]) / h, order);
    ++m;
  }
  return s / (static_cast<double>(m) * h);
}

inline double numerator(double x0, const std::vector<double>& x, const std::vector<double>& y,
                        double h, int order, std::size_t skip = static_cast<std::size_t>(-1))
{
  double s = 0.0;
  std::size_t m = 0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (j == skip)
      continue;
    s += kern((x0 - x[j]) / h, order) * y[j];
    ++m;
  }
  return s / (static_cast<double>(m) * h);
}

inline double mean(const std::vector<double>& v)
{
  double s = 0.0;
  for (double a : v)
    s += a;
  return s / static_cast<double>(v.size());
}

// Weighted average with the global-mean fallback for a vanishing weight sum.
inline double nw(double x0, const std::vector<double>& x, const std::vector<double>& y, double h,
                 int order)
{
  double w = 0.0, wy = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    const double k = kern((x0 - x[j]) / h, order);
    w += k;
    wy += k * y[j];
  }
  if (std::abs(w) < 1e-12 * static_cast<double>(x.size()))
    return mean(y);
  return wy / w;
}

// Explicit refit without observation k; falls back to the full-sample mean.
inline double loo(std::size_t k, const std::vector<double>& x, const std::vector<double>& y,
                  double h, int order)
{
  std::vector<double> xr, yr;
  for (std::size_t j = 0; j < x.size(); ++j)
    if (j != k) {
      xr.push_back(x[j]);
      yr.push_back(y[j]);
    }
  double w = 0.0, wy = 0.0;
  for (std::size_t j = 0; j < xr.size(); ++j) {
    const double kk = kern((x[k] - xr[j]) / h, order);
    w += kk;
    wy += kk * yr[j];
  }
  if (std::abs(w) < 1e-12 * static_cast<double>(xr.size()))
    return mean(y);
  return wy / w;
}

inline double cvls(const std::vector<double>& x, const std::vector<double>& y, double h, int order)
{
  double s = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double r = y[k] - loo(k, x, y, h, order);
    s += r * r;
  }
  return s / static_cast<double>(x.size());
}

// Two-pass sample variance, divisor n - 1.
inline double var(const std::vector<double>& v)
{
  const double m = mean(v);
  double s = 0.0;
  for (double a : v)
    s += (a - m) * (a - m);
  return s / static_cast<double>(v.size() - 1);
}

inline double g_function(const std::vector<double>& x, const std::vector<double>& a)
{
  double p = 1.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    p *= (std::abs(4.0 * x[i] - 2.0) + a[i]) / (1.0 + a[i]);
  return p;
}

inline std::vector<double> uniforms(std::mt19937_64& gen, std::size_t n, double lo = 0.0,
                                    double hi = 1.0)
{
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> v(n);
  for (double& a : v)
    a = u(gen);
  return v;
}

} // namespace oracle
