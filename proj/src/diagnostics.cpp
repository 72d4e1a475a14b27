#include "escom/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace escom {

DescentMonitor::DescentMonitor(Vector feasible_point)
    : z_(std::move(feasible_point)),
      z_sq_(norm_sq(z_)),
      worst_relaxed_(std::numeric_limits<double>::infinity()),
      worst_sum_(std::numeric_limits<double>::infinity()) {}

void DescentMonitor::record(std::size_t n, const char* check, double margin) {
  if (margin < 0.0) violations_.push_back({n, check, margin});
}

void DescentMonitor::operator()(const StepInfo& s) {
  ++steps_;
  const double lam_band = s.lambda * (2.0 - s.lambda);
  const double next_sq = dist_sq(s.x_next, z_);

  const double relaxed_rhs =
      dist_sq(s.y, z_) - lam_band * s.sigma * s.sigma * s.residual_sq +
      kRelaxedTol * (1.0 + z_sq_);
  const double relaxed = relaxed_rhs - next_sq;
  worst_relaxed_ = std::min(worst_relaxed_, relaxed);
  record(s.n, "relaxed-descent", relaxed);

  const double step = s.mu * s.beta;
  const double d_norm = norm(s.d);
  const double x_dist = dist(s.x, z_);
  const double xi = step * step * d_norm * d_norm + 2.0 * step * x_dist * d_norm;
  const double sum_rhs =
      x_dist * x_dist -
      lam_band / (4.0 * static_cast<double>(s.chain_length)) * s.step_sq_sum +
      xi + kSumTol;
  const double sum = sum_rhs - next_sq;
  worst_sum_ = std::min(worst_sum_, sum);
  record(s.n, "sum-descent", sum);

  if (s.n == 1) max_f_ = d_norm;  // d^1 = -F(x^1)
  max_f_ = std::max(max_f_, norm(s.fx_next));
  max_d_ = std::max(max_d_, d_norm);
  const double d_next_norm = norm(s.d_next);
  max_d_ = std::max(max_d_, d_next_norm);
  if (!std::isfinite(d_next_norm)) record(s.n, "direction-finite", -1.0);
  if (s.phi_next <= 0.5) {
    ++direction_checks_;
    record(s.n, "direction-bound",
           max_f_ + 0.5 * d_norm + kDirectionTol - d_next_norm);
  }
}

StepObserver DescentMonitor::observer() {
  return [this](const StepInfo& s) { (*this)(s); };
}

}  // namespace escom
