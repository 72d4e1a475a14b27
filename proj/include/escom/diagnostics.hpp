#pragma once

// Runtime checks of the descent inequalities an ESCoM-CGD run must satisfy
// relative to a known point z of the common fixed set. Attach a monitor as a
// StepObserver; it records violations and never alters the run.

#include <cstddef>
#include <string>
#include <vector>

#include "escom/solvers.hpp"
#include "escom/vector.hpp"

namespace escom {

struct DescentViolation {
  std::size_t n;
  std::string check;
  double margin;  // rhs - lhs; negative means violated
};

class DescentMonitor {
 public:
  explicit DescentMonitor(Vector feasible_point);

  /// ||x+ - z||^2 <= ||y - z||^2 - lambda(2-lambda) sigma^2 ||Ty - y||^2
  ///                 + 1e-8 (1 + ||z||^2)
  static constexpr double kRelaxedTol = 1e-8;
  /// ||x+ - z||^2 <= ||x - z||^2 - lambda(2-lambda)/(4m) sum ||v_i||^2
  ///                 + xi_n + 1e-8,
  /// xi_n = mu^2 beta^2 ||d||^2 + 2 mu beta ||x - z|| ||d||
  static constexpr double kSumTol = 1e-8;
  /// ||d+|| <= max ||F|| + ||d|| / 2 + 1e-10 once phi_{n+1} <= 1/2
  static constexpr double kDirectionTol = 1e-10;

  void operator()(const StepInfo& step);

  StepObserver observer();

  std::size_t steps_checked() const noexcept { return steps_; }
  std::size_t direction_checks() const noexcept { return direction_checks_; }
  const std::vector<DescentViolation>& violations() const noexcept {
    return violations_;
  }
  bool ok() const noexcept { return violations_.empty(); }

  double worst_relaxed_margin() const noexcept { return worst_relaxed_; }
  double worst_sum_margin() const noexcept { return worst_sum_; }
  double max_direction_norm() const noexcept { return max_d_; }

 private:
  void record(std::size_t n, const char* check, double margin);

  Vector z_;
  double z_sq_;
  std::size_t steps_ = 0;
  std::size_t direction_checks_ = 0;
  double max_f_ = 0.0;
  double max_d_ = 0.0;
  double worst_relaxed_;
  double worst_sum_;
  std::vector<DescentViolation> violations_;
};

}  // namespace escom
