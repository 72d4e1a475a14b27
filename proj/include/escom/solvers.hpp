#pragma once

// Iterative solvers for the variational inequality over the common fixed-point
// set of a cutter chain:
//
//   escom_cgd   extrapolated sequential sweep with conjugate-gradient direction
//   hsdm        hybrid steepest descent            x+ = T(x - mu b_n F(x))
//   hcgm        hybrid conjugate gradient          x+ = T(x + mu b_n d)
//   htcgm       hybrid three-term conjugate gradient
//
// The baselines use the full sweep endpoint T = T_m ... T_1 as their operator.

#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <string_view>
#include <vector>

#include "escom/extrapolation.hpp"
#include "escom/field.hpp"
#include "escom/operators.hpp"
#include "escom/vector.hpp"

namespace escom {

enum class Method { escom_cgd, hcgm, htcgm, hsdm };

std::string_view to_string(Method method) noexcept;

/// Accepts "escom", "escom_cgd", "escom-cgd", "hcgm", "htcgm", "hsdm".
std::optional<Method> parse_method(std::string_view name) noexcept;

/// beta_n = (n+1)^-b, phi_n = (n+1)^-a, constant relaxation lambda.
/// phi_exponent = +infinity gives phi_n == 0.
struct Schedules {
  double mu = 1e-4;
  double beta_exponent = 0.01;  // b in (0, 1]
  double phi_exponent = 0.1;    // a > 0
  double lambda = 1.2;          // in (0, 2)

  double beta(std::size_t n) const;
  double phi(std::size_t n) const;

  /// Checks b, a, lambda and mu in (0, 2 eta / kappa^2) for this field.
  void validate(const VIField& field) const;
};

struct ScheduleValues {
  double beta;
  double phi;
};

ScheduleValues schedule_values(const Schedules& sched, std::size_t n);

/// Third sequence of the three-term direction.
enum class WRule {
  field_difference,      // w^n = F(x^n) - F(x^{n-1})
  iterate_difference,    // w^n = x^n - x^{n-1}
  zero,
};

std::optional<WRule> parse_w_rule(std::string_view name) noexcept;

struct SolverState {
  std::size_t n = 1;
  Vector x;   // x^n
  Vector d;   // d^n
  Vector fx;  // F(x^n)
  double last_sigma = 1.0;
  double last_residual = 0.0;  // ||T y - y|| of the step that produced x
};

/// n = 1, d^1 = -F(x^1).
SolverState initial_state(const Vector& x1, const VIField& field);

enum class SigmaRoute {
  streaming,   // closed form from the in-place sweep's step norms
  trajectory,  // stored trajectory, sigma_general
};

struct EscomOptions {
  SigmaRoute route = SigmaRoute::streaming;
  std::optional<double> sigma_cap;  // ablation only; uncapped by default
  bool unit_sigma = false;          // force sigma := 1
  double fixed_rel_tol = kFixedPointRelTol;
};

/// Everything one step computed; references are valid only during the
/// observer call.
struct StepInfo {
  Method method;
  std::size_t n;
  const Vector& x;       // x^n
  const Vector& d;       // d^n
  const Vector& y;       // x^n + mu beta_n d^n (for hsdm: x^n - mu beta_n F(x^n))
  const Vector& ty;      // T y
  const Vector& x_next;  // x^{n+1}
  const Vector& d_next;  // d^{n+1}
  const Vector& fx_next; // F(x^{n+1})
  double mu;
  double lambda;
  double beta;
  double phi_next;
  double sigma;          // value used, after cap / override
  double residual_sq;    // ||T y - y||^2
  double step_sq_sum;    // sum_i ||u_i - u_{i-1}||^2
  bool in_fixed_set;
  std::size_t chain_length;
};

using StepObserver = std::function<void(const StepInfo&)>;

SolverState escom_cgd_step(const SolverState& state, const VIField& field,
                           const CutterChain& chain, const Schedules& sched,
                           const EscomOptions& opts = {},
                           const StepObserver& observe = {});

SolverState hsdm_step(const SolverState& state, const VIField& field,
                      const CutterChain& chain, const Schedules& sched,
                      const StepObserver& observe = {});

SolverState hcgm_step(const SolverState& state, const VIField& field,
                      const CutterChain& chain, const Schedules& sched,
                      const StepObserver& observe = {});

SolverState htcgm_step(const SolverState& state, const VIField& field,
                       const CutterChain& chain, const Schedules& sched,
                       WRule w_rule = WRule::field_difference,
                       const StepObserver& observe = {});

inline constexpr std::size_t kDefaultMaxIters = 1'000'000;

/// Any enabled criterion stops the run; max_iters always applies.
struct StopRule {
  std::optional<double> norm_below;      // ||x^{n+1}|| <= tol
  std::optional<double> residual_below;  // ||x^{n+1} - x^n|| <= tol
  std::size_t max_iters = kDefaultMaxIters;

  static StopRule norm(double tol, std::size_t max_iters = kDefaultMaxIters);
  static StopRule residual(double tol,
                           std::size_t max_iters = kDefaultMaxIters);
  static StopRule iterations(std::size_t n);

  void validate() const;
};

enum class RunStatus { converged, max_iters_hit };

std::string_view to_string(RunStatus status) noexcept;

struct IterationRow {
  std::size_t n;
  double norm_x;     // ||x^n||
  double step_norm;  // ||x^{n+1} - x^n||
  double sigma;      // 1 for the baselines
  double beta;       // beta_n
  double phi;        // phi_n
};

struct RunRecord {
  Method method = Method::escom_cgd;
  std::vector<IterationRow> rows;
  RunStatus status = RunStatus::max_iters_hit;
  std::size_t iterations_used = 0;
  double wall_time_s = 0.0;
  Vector x_final;
};

struct SolverConfig {
  Method method = Method::escom_cgd;
  Schedules sched;
  EscomOptions escom;
  WRule w_rule = WRule::field_difference;
};

RunRecord solve(const SolverConfig& config, const Vector& x1,
                const VIField& field, const CutterChain& chain,
                const StopRule& stop, const StepObserver& observe = {});

RunRecord escom_cgd_solve(const Vector& x1, const VIField& field,
                          const CutterChain& chain, const Schedules& sched,
                          const StopRule& stop, const EscomOptions& opts = {},
                          const StepObserver& observe = {});

/// ESCoM-CGD over sublevel sets {c_i <= 0}, i < m, followed by a projection
/// onto a box or ball C_m. The sweep uses subgradient steps, sigma comes from
/// sigma_functional, and every iterate stays in C_m. Throws
/// Errc::infeasible_start unless x1 lies in C_m.
RunRecord escom_cgd_functional_solve(const Vector& x1, const VIField& field,
                                     const std::vector<Sublevel>& constraints,
                                     const Cutter& box_or_ball,
                                     const Schedules& sched,
                                     const StopRule& stop,
                                     const EscomOptions& opts = {},
                                     const StepObserver& observe = {});

}  // namespace escom
