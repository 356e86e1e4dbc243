#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace npsobol {

//! Seeded 64-bit generator with deterministic child streams.
//!
//! Children are derived from the stream's seed and a key path only, never from
//! the generator state, so child(k) is the same no matter how many draws the
//! parent has made or which thread asks for it.
class RandomStream {
public:
  explicit RandomStream(std::uint64_t seed = 0);

  std::uint64_t seed() const noexcept { return seed_; }

  RandomStream child(std::uint64_t key) const;
  RandomStream child(std::initializer_list<std::uint64_t> keys) const;

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform01();
  // Uniform on (0, 1); never returns 0, for quantile transforms.
  double uniform_open01();
  double uniform(double lo, double hi);
  // Uniform integer in [0, n), unbiased.
  std::size_t index(std::size_t n);

private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

} // namespace npsobol
