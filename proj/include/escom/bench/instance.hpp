#pragma once

// Random minimum-norm test problems: minimize 0.5||x||^2 subject to Ax <= 0
// and x in [u, v]^k. The origin is always the unique solution when u <= 0 <= v.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "escom/field.hpp"
#include "escom/operators.hpp"
#include "escom/vector.hpp"

namespace escom::bench {

struct MinNormInstance {
  std::size_t m = 0;
  std::size_t k = 0;
  std::vector<double> a;  // row-major m x k, entries in (-5, 5)
  double box_lo = -1.0;
  double box_hi = 1.0;
  std::uint64_t seed = 0;

  Vector row(std::size_t i) const;
};

/// Throws Errc::bad_shape if m or k is 0 or u > v.
MinNormInstance generate_instance(std::size_t m, std::size_t k, double u,
                                  double v, std::uint64_t seed);

/// Coordinates uniform on (0, 1).
Vector generate_start(std::size_t k, std::uint64_t seed);

struct Problem {
  VIField field;
  CutterChain chain;  // m half-spaces <a_i, x> <= 0, then the box
};

Problem build_problem(const MinNormInstance& inst);

}  // namespace escom::bench
