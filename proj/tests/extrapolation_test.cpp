#include <cmath>
#include <vector>

#include "doctest.h"
#include "escom/error.hpp"
#include "escom/extrapolation.hpp"
#include "support.hpp"

using namespace escom;

TEST_CASE("sigma from the defining sum") {
  const CutterChain one({Cutter::halfspace({1, 2}, 0)});
  const SigmaResult s1 = sigma_general(sweep(one, {3, 1}), 1e-12);
  CHECK_FALSE(s1.in_fixed_set);
  CHECK(s1.value == doctest::Approx(1.0).epsilon(1e-15));

  const CutterChain skew({Cutter::halfspace({0, 1}, 0),
                          Cutter::halfspace({-1, 1}, 0)});
  const SigmaResult s = sigma_general(sweep(skew, {-1, 1}), 1e-12);
  CHECK(s.value == doctest::Approx(0.8).epsilon(1e-15));
  CHECK(s.residual_sq == doctest::Approx(2.5).epsilon(1e-15));

  const SigmaResult f = sigma_general(sweep(skew, {2, -1}), 1e-12);
  CHECK(f.in_fixed_set);
  CHECK(f.value == 1.0);
  CHECK(f.residual_sq == 0.0);
}

TEST_CASE("sigma from step totals matches the defining sum") {
  const CutterChain skew({Cutter::halfspace({0, 1}, 0),
                          Cutter::halfspace({-1, 1}, 0)});
  Vector u{-1, 1};
  const double steps = sweep_in_place(skew, u);
  const SigmaResult s = sigma_from_steps(dist_sq(u, {-1, 1}), steps, 1e-12);
  CHECK(s.value == doctest::Approx(0.8).epsilon(1e-15));
  CHECK(sigma_from_steps(0.0, 0.0, 0.0).in_fixed_set);
}

TEST_CASE("sigma over functional constraints") {
  // All satisfied: trajectory is constant.
  const std::vector<Violation> none{{-0.5, {}}};
  SweepTrajectory still;
  still.points = {Vector{0.1, 0.2}, Vector{0.1, 0.2}, Vector{0.1, 0.2}};
  const SigmaResult s0 = sigma_functional(still, none, 1e-12);
  CHECK(s0.in_fixed_set);
  CHECK(s0.value == 1.0);

  // Disk c(x) = ||x||^2 - 1 then box [-3, 3]^2 from (2, 0).
  const CutterChain chain(
      {Cutter::subgradient([](const Vector& x) { return norm_sq(x) - 1.0; },
                           [](const Vector& x) { return scaled(2.0, x); }),
       Cutter::box({-3, -3}, {3, 3})});
  const SweepTrajectory t = sweep(chain, {2, 0});
  CHECK(t.points[1][0] == doctest::Approx(1.25));
  const std::vector<Violation> v{{3.0, {4, 0}}};
  const SigmaResult s = sigma_functional(t, v, 1e-12);
  CHECK(s.value == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(s.value == doctest::Approx(sigma_general(t, 1e-12).value).epsilon(1e-14));

  SweepTrajectory bad = t;
  CHECK_THROWS_AS(sigma_functional(bad, {}, 1e-12), Error);
  const std::vector<Violation> flat{{3.0, {0, 0}}};
  try {
    sigma_functional(t, flat, 1e-12);
    FAIL("expected ZeroSubgradient");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::zero_subgradient);
  }
}

TEST_CASE("extrapolated point") {
  CHECK(extrapolated_point({1, 2}, {1, 2}, 1.7, 1.2) == Vector{1, 2});
  CHECK(extrapolated_point({0.3, -0.1}, {0.25, 0.7}, 1.0, 1.0) ==
        Vector{0.25, 0.7});
  const Vector p = extrapolated_point({0, 0}, {1, 0}, 0.8, 1.2);
  CHECK(p[0] == doctest::Approx(0.96).epsilon(1e-15));
  CHECK(p[1] == 0.0);

  auto code_of = [](auto f) {
    try {
      f();
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::io_error;
  };
  CHECK(code_of([] { extrapolated_point({0}, {1}, 1.0, 1.5, 0.6); }) ==
        Errc::bad_relaxation);
  CHECK(code_of([] { extrapolated_point({0}, {1}, 1.0, 2.0); }) ==
        Errc::bad_relaxation);
  CHECK(code_of([] { extrapolated_point({0}, {1}, 0.0, 1.0); }) ==
        Errc::bad_relaxation);
  CHECK(code_of([] { extrapolated_point({0}, {1}, 1.0, 1.0, 1.0); }) ==
        Errc::bad_relaxation);
  CHECK(relaxation_epsilon(1.2) == doctest::Approx(0.4));
  CHECK(relaxation_epsilon(0.1) == doctest::Approx(0.05));
}

TEST_CASE("sigma bounds and the extrapolated cutter on random chains") {
  Rng rng(31337);
  std::size_t off_fixed = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + rng.next_u64() % 6;
    const std::size_t m = 1 + rng.next_u64() % 8;
    const Vector z = rng.normal_vector(n);
    const CutterChain chain = testing::random_chain(rng, n, m, z, true);
    const Vector y = add_scaled(z, 4.0, rng.normal_vector(n));
    const SweepTrajectory t = sweep(chain, y);
    const SigmaResult s = sigma_general(t, default_fixed_tolerance(y));
    if (s.in_fixed_set) {
      CHECK(s.value == 1.0);
      continue;
    }
    ++off_fixed;
    CHECK(s.value >= 1.0 / (2.0 * static_cast<double>(m)) - 1e-12);
    double steps = 0.0;
    for (std::size_t i = 1; i < t.points.size(); ++i) {
      steps += dist_sq(t.points[i], t.points[i - 1]);
    }
    CHECK(s.value >= 0.5 * steps / s.residual_sq - 1e-10);
    const SigmaResult streamed =
        sigma_from_steps(s.residual_sq, steps, default_fixed_tolerance(y));
    CHECK(streamed.value == doctest::Approx(s.value).epsilon(1e-10));

    const Vector ts = add_scaled(y, s.value, sub(t.output(), y));
    CHECK(dot(sub(y, ts), sub(z, ts)) <= 1e-10 * (1.0 + norm_sq(y)));
  }
  CHECK(off_fixed > 900);
}

TEST_CASE("functional and general sigma agree on linear constraints") {
  Rng rng(4242);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + trial % 5;
    const std::size_t m = 2 + trial % 6;
    std::vector<Cutter> cs;
    std::vector<Vector> normals;
    for (std::size_t i = 0; i + 1 < m; ++i) {
      Vector a = rng.normal_vector(n);
      normals.push_back(a);
      cs.push_back(Cutter::subgradient(
          [a](const Vector& x) { return dot(a, x); },
          [a](const Vector&) { return a; }));
    }
    cs.push_back(Cutter::box(Vector(n, -1.0), Vector(n, 1.0)));
    const CutterChain chain(std::move(cs));
    const Vector y = scaled(2.0, rng.normal_vector(n));
    const SweepTrajectory t = sweep(chain, y);

    std::vector<Violation> v;
    for (std::size_t i = 0; i + 1 < m; ++i) {
      v.push_back({dot(normals[i], t.points[i]), normals[i]});
    }
    const double tol = default_fixed_tolerance(y);
    const SigmaResult g = sigma_general(t, tol);
    const SigmaResult f = sigma_functional(t, v, tol);
    CHECK(f.in_fixed_set == g.in_fixed_set);
    CHECK(std::fabs(f.value - g.value) <= 1e-10 * std::fabs(g.value));
  }
}
