#include <cmath>
#include <vector>

#include "doctest.h"
#include "escom/error.hpp"
#include "escom/operators.hpp"
#include "escom/rng.hpp"

using namespace escom;

namespace {

Cutter disk_cutter() {
  return Cutter::subgradient(
      [](const Vector& x) { return norm_sq(x) - 1.0; },
      [](const Vector& x) { return scaled(2.0, x); });
}

template <class F>
void expect_error(Errc code, F&& f) {
  try {
    f();
    FAIL("no exception");
  } catch (const Error& e) {
    CHECK(e.code() == code);
  }
}

// One cutter of each kind in dimension n, and a sampler of its fixed set.
struct Sample {
  Cutter cutter;
  Vector (*feasible)(const Cutter&, Rng&, std::size_t);
};

Vector in_unit_ball(Rng& rng, std::size_t n) {
  Vector u = rng.normal_vector(n);
  return scaled(rng.uniform_open() / norm(u), u);
}

std::vector<Sample> samples(Rng& rng, std::size_t n) {
  std::vector<Sample> out;
  out.push_back({Cutter::halfspace(rng.normal_vector(n), rng.normal()),
                 [](const Cutter& c, Rng& r, std::size_t k) {
                   return c.apply(scaled(3.0, r.normal_vector(k)));
                 }});
  out.push_back({Cutter::box(Vector(n, -1.0), Vector(n, 2.0)),
                 [](const Cutter& c, Rng& r, std::size_t k) {
                   return c.apply(scaled(3.0, r.normal_vector(k)));
                 }});
  out.push_back({Cutter::ball(rng.normal_vector(n), 1.5),
                 [](const Cutter& c, Rng& r, std::size_t k) {
                   return c.apply(scaled(3.0, r.normal_vector(k)));
                 }});
  out.push_back({disk_cutter(), [](const Cutter&, Rng& r, std::size_t k) {
                   return in_unit_ball(r, k);
                 }});
  return out;
}

}  // namespace

TEST_CASE("half-space projection") {
  CHECK(project_halfspace({1, 0}, 0, {2, 3}) == Vector{0, 3});
  CHECK(project_halfspace({1, 0}, 0, {-1, 5}) == Vector{-1, 5});
  const Vector p = project_halfspace({1, 1}, 0, {0, 2});
  CHECK(p[0] == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(p[1] == doctest::Approx(1.0).epsilon(1e-15));
  expect_error(Errc::zero_normal, [] { project_halfspace({0, 0}, 0, {1, 1}); });
}

TEST_CASE("box projection") {
  CHECK(project_box({-1, -1}, {1, 1}, {0.5, -0.2}) == Vector{0.5, -0.2});
  CHECK(project_box({-1, -1}, {1, 1}, {3, -7}) == Vector{1, -1});
  CHECK(project_box({0, 0}, {0, 0}, {9, 9}) == Vector{0, 0});
  expect_error(Errc::bad_box, [] { project_box({1, 0}, {0, 0}, {0, 0}); });
}

TEST_CASE("ball projection") {
  CHECK(project_ball({0, 0}, 1, {0.3, 0}) == Vector{0.3, 0});
  CHECK(project_ball({0, 0}, 1, {2, 0}) == Vector{1, 0});
  const Vector p = project_ball({1, 1}, 2, {1, 5});
  CHECK(p[0] == 1.0);
  CHECK(p[1] == doctest::Approx(3.0).epsilon(1e-15));
  expect_error(Errc::bad_radius, [] { project_ball({0, 0}, 0, {1, 1}); });
  expect_error(Errc::bad_radius, [] { project_ball({0, 0}, -1, {1, 1}); });
}

TEST_CASE("subgradient projection") {
  auto c = [](const Vector& x) { return norm_sq(x) - 1.0; };
  auto g = [](const Vector& x) { return scaled(2.0, x); };
  CHECK(project_subgradient(c, g, {0.5, 0}) == Vector{0.5, 0});
  const Vector p = project_subgradient(c, g, {2, 0});
  CHECK(p[0] == doctest::Approx(1.25).epsilon(1e-15));
  CHECK(p[1] == 0.0);
  CHECK(c(p) < c({2, 0}));

  auto lin = [](const Vector& x) { return x[0]; };
  auto lin_g = [](const Vector&) { return Vector{1, 0}; };
  CHECK(project_subgradient(lin, lin_g, {2, 3}) == Vector{0, 3});

  auto flat_g = [](const Vector&) { return Vector{0, 0}; };
  expect_error(Errc::zero_subgradient,
               [&] { project_subgradient(lin, flat_g, {2, 3}); });
}

TEST_CASE("sweep trajectories") {
  const CutterChain orth({Cutter::halfspace({1, 0}, 0),
                          Cutter::halfspace({0, 1}, 0)});
  const SweepTrajectory t = sweep(orth, {1, 1});
  REQUIRE(t.points.size() == 3);
  CHECK(t.points[0] == Vector{1, 1});
  CHECK(t.points[1] == Vector{0, 1});
  CHECK(t.points[2] == Vector{0, 0});

  const CutterChain skew({Cutter::halfspace({0, 1}, 0),
                          Cutter::halfspace({-1, 1}, 0)});
  const SweepTrajectory s = sweep(skew, {-1, 1});
  CHECK(s.points[1] == Vector{-1, 0});
  CHECK(s.points[2][0] == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK(s.points[2][1] == doctest::Approx(-0.5).epsilon(1e-15));

  const SweepTrajectory f = sweep(skew, {3, -4});
  for (const Vector& p : f.points) CHECK(p == Vector{3, -4});
}

TEST_CASE("chain validation") {
  expect_error(Errc::empty_chain, [] { CutterChain({}); });
  expect_error(Errc::dimension_mismatch, [] {
    CutterChain({Cutter::halfspace({1, 0}, 0), Cutter::box({0}, {1})});
  });
  const CutterChain c({Cutter::box({0, 0}, {1, 1})});
  expect_error(Errc::dimension_mismatch, [&] { sweep(c, {1, 2, 3}); });
  expect_error(Errc::non_finite, [&] { sweep(c, {NAN, 0}); });
}

TEST_CASE("fixed-point test") {
  const CutterChain c({Cutter::halfspace({1, 0}, 0)});
  CHECK(is_fixed(c, {-2, 7}, 0.0));
  CHECK_FALSE(is_fixed(c, {1, 0}, 1e-12));
  CHECK(is_fixed(c, {kZeroSubgradientSq / 2, 0}, kZeroSubgradientSq));
  CHECK(is_fixed(c, {-1, 0}));
}

TEST_CASE("cutter inequalities on random samples") {
  Rng rng(2024);
  for (std::size_t n : {1u, 2u, 5u, 17u}) {
    for (const Sample& s : samples(rng, n)) {
      CAPTURE(n);
      CAPTURE(static_cast<int>(s.cutter.kind()));
      for (int trial = 0; trial < 1000; ++trial) {
        const Vector z = s.feasible(s.cutter, rng, n);
        REQUIRE(s.cutter.contains(z));
        const Vector x = scaled(4.0, rng.normal_vector(n));
        const Vector tx = s.cutter.apply(x);
        const double xsq = norm_sq(x);
        CHECK(dot(sub(x, tx), sub(z, tx)) <= 1e-10 * (1.0 + xsq));
        CHECK(dist_sq(tx, z) <=
              dist_sq(x, z) - dist_sq(tx, x) + 1e-10 * (1.0 + xsq));
        CHECK(dot(sub(tx, x), sub(z, x)) >= dist_sq(tx, x) - 1e-10 * (1.0 + xsq));
      }
    }
  }
}

TEST_CASE("projections are idempotent bit for bit") {
  Rng rng(99);
  for (std::size_t n : {1u, 3u, 8u, 200u}) {
    for (const Sample& s : samples(rng, n)) {
      if (s.cutter.kind() == CutterKind::subgradient) continue;
      for (int trial = 0; trial < 200; ++trial) {
        const Vector once = s.cutter.apply(scaled(5.0, rng.normal_vector(n)));
        Vector twice = once;
        CHECK(s.cutter.apply_in_place(twice) == 0.0);
        CHECK(twice == once);
        CHECK(s.cutter.contains(once));
      }
    }
  }
}

TEST_CASE("subgradient cutter leaves its sublevel set alone") {
  Rng rng(5);
  const Cutter c = disk_cutter();
  for (int trial = 0; trial < 500; ++trial) {
    const Vector x = in_unit_ball(rng, 4);
    CHECK(c.apply(x) == x);
  }
}

TEST_CASE("in-place sweep reproduces the stored trajectory") {
  Rng rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + trial % 9;
    std::vector<Cutter> cs;
    for (int i = 0; i < 6; ++i) {
      cs.push_back(Cutter::halfspace(rng.normal_vector(n), rng.normal()));
    }
    cs.push_back(Cutter::ball(Vector(n), 3.0));
    cs.push_back(Cutter::box(Vector(n, -2.0), Vector(n, 2.0)));
    const CutterChain chain(std::move(cs));
    const Vector x = scaled(4.0, rng.normal_vector(n));

    const SweepTrajectory t1 = sweep(chain, x);
    const SweepTrajectory t2 = sweep(chain, x);
    CHECK(t1.points == t2.points);
    for (std::size_t i = 1; i < t1.points.size(); ++i) {
      CHECK(chain[i - 1].apply(t1.points[i - 1]) == t1.points[i]);
    }

    Vector u = x;
    const double moved = sweep_in_place(chain, u);
    CHECK(u == t1.output());
    double expect = 0.0;
    for (std::size_t i = 1; i < t1.points.size(); ++i) {
      expect += dist_sq(t1.points[i], t1.points[i - 1]);
    }
    CHECK(moved == doctest::Approx(expect).epsilon(1e-12));
  }
}
