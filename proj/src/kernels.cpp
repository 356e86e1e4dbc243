#include "npsobol/kernels.hpp"

#include "npsobol/errors.hpp"

#include <cmath>
#include <string>

namespace npsobol {

KernelSpec::KernelSpec(KernelOrder order, KernelFamily family) : order_(order), family_(family)
{
  if (order != KernelOrder::Second && order != KernelOrder::Fourth)
    throw DomainError("kernel order must be 2 or 4");
}

KernelSpec KernelSpec::from_order(int order)
{
  if (order == 2)
    return KernelSpec(KernelOrder::Second);
  if (order == 4)
    return KernelSpec(KernelOrder::Fourth);
  throw DomainError("kernel order must be 2 or 4, got " + std::to_string(order));
}

double kernel_eval(double u, const KernelSpec& spec)
{
  if (!std::isfinite(u))
    throw DomainError("kernel argument must be finite");
  return spec.weight(u);
}

KernelMoments kernel_moments(const KernelSpec& spec, std::size_t quadrature_points)
{
  if (quadrature_points < 64)
    throw DomainError("kernel_moments needs at least 64 quadrature points");
  const std::size_t m = quadrature_points + (quadrature_points % 2);
  const double step = 2.0 / static_cast<double>(m);

  KernelMoments acc{0.0, 0.0, 0.0};
  for (std::size_t i = 0; i <= m; ++i) {
    const double u = -1.0 + step * static_cast<double>(i);
    const double w = (i == 0 || i == m) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    const double k = spec.weight(u);
    acc.m0 += w * k;
    acc.m1 += w * u * k;
    acc.m2 += w * u * u * k;
  }
  const double scale = step / 3.0;
  return {acc.m0 * scale, acc.m1 * scale, acc.m2 * scale};
}

} // namespace npsobol
