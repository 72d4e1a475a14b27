#include "escom/rng.hpp"

#include <cmath>
#include <numbers>

namespace escom {
namespace {

std::mt19937_64 seeded(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream),
                    static_cast<std::uint32_t>(stream >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace

Rng::Rng(std::uint64_t seed, std::uint64_t stream)
    : engine_(seeded(seed, stream)) {}

double Rng::uniform_open() {
  // Midpoints of the 2^53 equal cells of [0,1): never 0, never 1.
  return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) {
  for (;;) {
    const double x = lo + (hi - lo) * uniform_open();
    if (x > lo && x < hi) return x;
  }
}

double Rng::normal() {
  const double u1 = uniform_open();
  const double u2 = uniform_open();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Vector Rng::uniform_vector(std::size_t n, double lo, double hi) {
  Vector v(n);
  for (double& x : v) x = uniform(lo, hi);
  return v;
}

Vector Rng::normal_vector(std::size_t n) {
  Vector v(n);
  for (double& x : v) x = normal();
  return v;
}

}  // namespace escom
