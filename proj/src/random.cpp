#include "npsobol/random.hpp"

#include "npsobol/errors.hpp"

#include <limits>

namespace npsobol {

std::uint64_t splitmix64(std::uint64_t x) noexcept
{
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

RandomStream::RandomStream(std::uint64_t seed) : seed_(seed), engine_(splitmix64(seed)) {}

RandomStream RandomStream::child(std::uint64_t key) const
{
  return RandomStream(splitmix64(seed_ ^ splitmix64(key + 0x5851f42d4c957f2dULL)));
}

RandomStream RandomStream::child(std::initializer_list<std::uint64_t> keys) const
{
  RandomStream out = *this;
  for (auto k : keys)
    out = out.child(k);
  return out;
}

double RandomStream::uniform01()
{
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RandomStream::uniform_open01()
{
  return (static_cast<double>(engine_() >> 12) + 0.5) * 0x1.0p-52;
}

double RandomStream::uniform(double lo, double hi)
{
  return lo + (hi - lo) * uniform01();
}

std::size_t RandomStream::index(std::size_t n)
{
  if (n == 0)
    throw DomainError("index() needs a positive range");
  const std::uint64_t range = n;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % range;
  std::uint64_t v = engine_();
  while (v >= limit)
    v = engine_();
  return static_cast<std::size_t>(v % range);
}

} // namespace npsobol
