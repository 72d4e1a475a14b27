#include "escom/extrapolation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "escom/error.hpp"

namespace escom {
namespace {

bool fixed(double residual_sq, double tol_fixed) {
  return residual_sq <= tol_fixed * tol_fixed;
}

void check_traj(const SweepTrajectory& traj) {
  if (traj.points.size() < 2) {
    fail(Errc::empty_chain, "trajectory needs at least one sweep step");
  }
}

}  // namespace

double default_fixed_tolerance(const Vector& y) {
  return kFixedPointRelTol * (1.0 + norm(y));
}

SigmaResult sigma_general(const SweepTrajectory& traj, double tol_fixed) {
  check_traj(traj);
  const Vector& x = traj.input();
  const Vector& tx = traj.output();
  const double residual_sq = dist_sq(tx, x);
  if (fixed(residual_sq, tol_fixed)) return {1.0, residual_sq, true};

  double num = 0.0;
  for (std::size_t i = 1; i < traj.points.size(); ++i) {
    const Vector& prev = traj.points[i - 1];
    num += dot(sub(tx, prev), sub(traj.points[i], prev));
  }
  return {num / residual_sq, residual_sq, false};
}

SigmaResult sigma_functional(const SweepTrajectory& traj,
                             std::span<const Violation> violations,
                             double tol_fixed) {
  check_traj(traj);
  const std::size_t m = traj.steps();
  if (violations.size() != m - 1) {
    fail(Errc::dimension_mismatch,
         "expected " + std::to_string(m - 1) + " constraint records, got " +
             std::to_string(violations.size()));
  }
  const Vector& x = traj.input();
  const Vector& tx = traj.output();
  const double residual_sq = dist_sq(tx, x);
  if (fixed(residual_sq, tol_fixed)) return {1.0, residual_sq, true};

  double num = dot(sub(tx, x), sub(tx, traj.points[m - 1]));
  for (std::size_t i = 1; i < m; ++i) {
    const Violation& v = violations[i - 1];
    const double c_plus = std::max(v.value, 0.0);
    if (c_plus == 0.0) continue;
    const double gsq = norm_sq(v.subgradient);
    if (gsq <= kZeroSubgradientSq) {
      fail(Errc::zero_subgradient, "zero subgradient at step " +
                                       std::to_string(i) +
                                       " with positive constraint value");
    }
    const double t = c_plus / gsq;
    num += -t * dot(sub(traj.points[i - 1], x), v.subgradient) + c_plus * t;
  }
  return {num / residual_sq, residual_sq, false};
}

SigmaResult sigma_from_steps(double residual_sq, double step_sq_sum,
                             double tol_fixed) {
  if (fixed(residual_sq, tol_fixed)) return {1.0, residual_sq, true};
  return {0.5 + 0.5 * (step_sq_sum / residual_sq), residual_sq, false};
}

double relaxation_epsilon(double lambda) {
  return std::min(lambda, 2.0 - lambda) / 2.0;
}

Vector extrapolated_point(const Vector& y, const Vector& Ty, double sigma,
                          double lambda, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) {
    fail(Errc::bad_relaxation, "epsilon must lie in (0, 1)");
  }
  if (!(lambda >= eps && lambda <= 2.0 - eps)) {
    fail(Errc::bad_relaxation, "lambda=" + std::to_string(lambda) +
                                   " outside [" + std::to_string(eps) + ", " +
                                   std::to_string(2.0 - eps) + "]");
  }
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    fail(Errc::bad_relaxation, "step size sigma must be positive and finite");
  }
  require_same_dim(y, Ty, "extrapolated_point");
  const double factor = lambda * sigma;
  if (factor == 1.0) return Ty;
  return add_scaled(y, factor, sub(Ty, y));
}

Vector extrapolated_point(const Vector& y, const Vector& Ty, double sigma,
                          double lambda) {
  return extrapolated_point(y, Ty, sigma, lambda, relaxation_epsilon(lambda));
}

}  // namespace escom
