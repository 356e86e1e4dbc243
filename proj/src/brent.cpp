#include "npsobol/brent.hpp"

#include "npsobol/errors.hpp"

#include <cmath>
#include <limits>

namespace npsobol {

BrentResult brent_minimize(const std::function<double(double)>& objective, double lo, double hi,
                           double tol, std::size_t max_iter)
{
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi))
    throw DomainError("brent_minimize needs an ordered finite bracket");
  if (!(tol > 0.0))
    throw DomainError("brent_minimize needs tol > 0");

  constexpr double golden = 0.3819660112501051; // (3 - sqrt 5) / 2
  const double eps = std::sqrt(std::numeric_limits<double>::epsilon());

  std::size_t evaluations = 0;
  auto eval = [&](double x) {
    ++evaluations;
    return objective(x);
  };

  BrentResult best{lo, eval(lo), true, 0};
  const double f_hi = eval(hi);
  if (!std::isfinite(best.fx) || (std::isfinite(f_hi) && f_hi < best.fx))
    best = {hi, f_hi, true, 0};
  if (!std::isfinite(best.fx)) {
    best.converged = false;
    best.evaluations = evaluations;
    return best;
  }

  double a = lo;
  double b = hi;
  double x = a + golden * (b - a);
  double fx = eval(x);
  if (!std::isfinite(fx)) {
    best.converged = false;
    best.evaluations = evaluations;
    return best;
  }
  double w = x, v = x;
  double fw = fx, fv = fx;
  double d = 0.0, e = 0.0;
  bool converged = false;

  for (std::size_t iter = 0; iter < max_iter; ++iter) {
    const double xm = 0.5 * (a + b);
    const double tol1 = eps * std::abs(x) * 1e-6 + tol / 3.0;
    const double tol2 = 2.0 * tol1;
    if (std::abs(x - xm) <= tol2 - 0.5 * (b - a)) {
      converged = true;
      break;
    }
    bool golden_step = true;
    if (std::abs(e) > tol1) {
      // Parabola through x, w, v.
      double r = (x - w) * (fx - fv);
      double q = (x - v) * (fx - fw);
      double p = (x - v) * q - (x - w) * r;
      q = 2.0 * (q - r);
      if (q > 0.0)
        p = -p;
      q = std::abs(q);
      const double e_prev = e;
      e = d;
      if (std::abs(p) < std::abs(0.5 * q * e_prev) && p > q * (a - x) && p < q * (b - x)) {
        d = p / q;
        const double u = x + d;
        if (u - a < tol2 || b - u < tol2)
          d = xm >= x ? tol1 : -tol1;
        golden_step = false;
      }
    }
    if (golden_step) {
      e = (x >= xm) ? a - x : b - x;
      d = golden * e;
    }
    const double u = std::abs(d) >= tol1 ? x + d : x + (d > 0.0 ? tol1 : -tol1);
    const double fu = eval(u);
    if (!std::isfinite(fu)) {
      if (fx < best.fx)
        best = {x, fx, false, 0};
      best.converged = false;
      best.evaluations = evaluations;
      return best;
    }
    if (fu <= fx) {
      if (u >= x)
        a = x;
      else
        b = x;
      v = w;
      fv = fw;
      w = x;
      fw = fx;
      x = u;
      fx = fu;
    } else {
      if (u < x)
        a = u;
      else
        b = u;
      if (fu <= fw || w == x) {
        v = w;
        fv = fw;
        w = u;
        fw = fu;
      } else if (fu <= fv || v == x || v == w) {
        v = u;
        fv = fu;
      }
    }
  }

  // Endpoints win ties so a monotone objective returns the boundary exactly.
  if (fx < best.fx)
    best = {x, fx, true, 0};
  best.converged = converged;
  best.evaluations = evaluations;
  return best;
}

} // namespace npsobol
