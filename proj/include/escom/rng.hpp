#pragma once

#include <cstdint>
#include <random>

#include "escom/vector.hpp"

namespace escom {

/// Portable seeded generator: std::mt19937_64 (bit-exact by the standard)
/// initialized through std::seed_seq from (seed, stream). Real-valued draws
/// use explicit 53-bit conversions instead of <random> distributions, whose
/// algorithms are implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on the open interval (0, 1).
  double uniform_open();

  /// Uniform on the open interval (lo, hi); draws that round onto an
  /// endpoint are redrawn.
  double uniform(double lo, double hi);

  /// Standard normal via Box-Muller (test data only).
  double normal();

  Vector uniform_vector(std::size_t n, double lo, double hi);
  Vector normal_vector(std::size_t n);

 private:
  std::mt19937_64 engine_;
};

}  // namespace escom
