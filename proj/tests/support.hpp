#pragma once

// Problem builders shared by the unit and acceptance suites.

#include <cmath>
#include <vector>

#include "escom/field.hpp"
#include "escom/operators.hpp"
#include "escom/rng.hpp"
#include "escom/solvers.hpp"

namespace escom::testing {

/// Chain of m cutters in dimension n whose fixed sets all contain z.
inline CutterChain random_chain(Rng& rng, std::size_t n, std::size_t m,
                                const Vector& z, bool with_subgradient) {
  std::vector<Cutter> cs;
  for (std::size_t i = 0; i < m; ++i) {
    const int kind = static_cast<int>(rng.next_u64() % (with_subgradient ? 4 : 3));
    if (kind == 0) {
      const Vector a = rng.normal_vector(n);
      cs.push_back(Cutter::halfspace(a, dot(a, z) + std::fabs(rng.normal())));
    } else if (kind == 1) {
      Vector lo(n), hi(n);
      for (std::size_t j = 0; j < n; ++j) {
        lo[j] = z[j] - 0.1 - 2.0 * rng.uniform_open();
        hi[j] = z[j] + 0.1 + 2.0 * rng.uniform_open();
      }
      cs.push_back(Cutter::box(lo, hi));
    } else if (kind == 2) {
      const Vector c = add_scaled(z, 1.0, rng.normal_vector(n));
      cs.push_back(Cutter::ball(c, dist(c, z) + 0.1 + rng.uniform_open()));
    } else {
      const Vector c = add_scaled(z, 0.5, rng.normal_vector(n));
      const double r2 = dist_sq(c, z) + 0.1 + rng.uniform_open();
      cs.push_back(Cutter::subgradient(
          [c, r2](const Vector& x) { return dist_sq(x, c) - r2; },
          [c](const Vector& x) { return scaled(2.0, sub(x, c)); }));
    }
  }
  return CutterChain(std::move(cs));
}

/// 2-D regression instance: [x2 <= x1, box [-1, 1]^2].
inline CutterChain regression_chain() {
  return CutterChain({Cutter::halfspace({-1, 1}, 0),
                      Cutter::box({-1, -1}, {1, 1})});
}

/// [x2 <= 0, x2 <= x1, box [-1, 1]^2]: consecutive steps are not orthogonal.
inline CutterChain skewed_chain() {
  return CutterChain({Cutter::halfspace({0, 1}, 0),
                      Cutter::halfspace({-1, 1}, 0),
                      Cutter::box({-1, -1}, {1, 1})});
}

inline Schedules regression_schedules() { return Schedules{1e-4, 0.01, 0.1, 1.2}; }

}  // namespace escom::testing
