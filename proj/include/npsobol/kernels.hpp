#pragma once

#include <cstddef>

namespace npsobol {

enum class KernelFamily { Epanechnikov };
enum class KernelOrder { Second = 2, Fourth = 4 };

//! Compactly supported smoothing kernel on [-1, 1].
class KernelSpec {
public:
  explicit KernelSpec(KernelOrder order = KernelOrder::Second,
                      KernelFamily family = KernelFamily::Epanechnikov);

  // Accepts 2 or 4; anything else throws DomainError.
  static KernelSpec from_order(int order);

  KernelFamily family() const noexcept { return family_; }
  KernelOrder order() const noexcept { return order_; }
  int order_number() const noexcept { return static_cast<int>(order_); }

  // Unchecked evaluation used inside the smoothing loops.
  double weight(double u) const noexcept
  {
    if (u < -1.0 || u > 1.0)
      return 0.0;
    const double u2 = u * u;
    if (order_ == KernelOrder::Second)
      return 0.75 * (1.0 - u2);
    return (45.0 / 32.0) * (1.0 - (7.0 / 3.0) * u2) * (1.0 - u2);
  }

  friend bool operator==(const KernelSpec&, const KernelSpec&) = default;

private:
  KernelOrder order_;
  KernelFamily family_;
};

/// K(u) for the given kernel; exactly 0 outside [-1, 1]. Throws DomainError for non-finite u.
double kernel_eval(double u, const KernelSpec& spec);

struct KernelMoments {
  double m0;
  double m1;
  double m2;
};

/// Composite Simpson integrals of K, uK and u^2 K over [-1, 1].
/// `quadrature_points` is the number of subintervals (rounded up to even), at least 64.
KernelMoments kernel_moments(const KernelSpec& spec, std::size_t quadrature_points);

} // namespace npsobol
