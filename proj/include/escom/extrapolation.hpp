#pragma once

// Extrapolation step size for a sequential sweep T = T_m ... T_1:
//
//   sigma(x) = sum_i <Tx - S_{i-1}x, S_i x - S_{i-1}x> / ||Tx - x||^2
//
// off the common fixed set, and 1 on it. Three evaluation routes are provided
// and cross-checked in the tests: directly from a stored trajectory, from the
// subgradient-step expansion used with functional constraints, and from the
// per-step squared displacements accumulated during an in-place sweep.

#include <span>

#include "escom/operators.hpp"
#include "escom/vector.hpp"

namespace escom {

struct SigmaResult {
  double value = 1.0;
  double residual_sq = 0.0;  // ||Tx - x||^2
  bool in_fixed_set = true;
};

/// c_i(u_{i-1}) and a subgradient g_i(u_{i-1}) for one functional constraint.
struct Violation {
  double value = 0.0;
  Vector subgradient;
};

/// kFixedPointRelTol * (1 + ||y||).
double default_fixed_tolerance(const Vector& y);

/// The defining sum over a stored trajectory.
SigmaResult sigma_general(const SweepTrajectory& traj, double tol_fixed);

/// Trajectory of [P_{c_1}, ..., P_{c_{m-1}}, proj_{C_m}] with the constraint
/// data seen at each step (violations.size() == m - 1). Evaluates the
/// numerator as
///   <u_m - u_0, u_m - u_{m-1}>
///   + sum_i [ -(c_i^+/||g_i||^2) <u_{i-1} - u_0, g_i> + (c_i^+/||g_i||)^2 ].
SigmaResult sigma_functional(const SweepTrajectory& traj,
                             std::span<const Violation> violations,
                             double tol_fixed);

/// With v_i = u_i - u_{i-1}, the numerator equals
/// (||sum v_i||^2 + sum ||v_i||^2) / 2, so sigma = 1/2 + step_sq_sum /
/// (2 residual_sq). Needs only the totals an in-place sweep produces.
SigmaResult sigma_from_steps(double residual_sq, double step_sq_sum,
                             double tol_fixed);

/// min(lambda, 2 - lambda) / 2: the widest band [eps, 2 - eps] admitting a
/// constant relaxation lambda.
double relaxation_epsilon(double lambda);

/// y + lambda * sigma * (Ty - y). Returns Ty itself when lambda*sigma == 1.
/// Throws Errc::bad_relaxation if lambda is outside [eps, 2 - eps], eps is
/// outside (0, 1), or sigma <= 0.
Vector extrapolated_point(const Vector& y, const Vector& Ty, double sigma,
                          double lambda, double eps);

Vector extrapolated_point(const Vector& y, const Vector& Ty, double sigma,
                          double lambda);

}  // namespace escom
