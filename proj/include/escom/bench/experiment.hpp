#pragma once

// Parameter sweeps and size scaling over random minimum-norm instances. Every
// grid point solves the same `samples` (instance, start) pairs, seeded
// base_seed + sample index, so methods and parameter values are compared on
// identical data.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "escom/solvers.hpp"

namespace escom::bench {

enum class SweepParam { a, b, mu, lambda };

std::string_view to_string(SweepParam p) noexcept;
std::optional<SweepParam> parse_sweep_param(std::string_view name) noexcept;

/// Sets the swept field of sched.
void apply_param(Schedules& sched, SweepParam p, double value);

struct Size {
  std::size_t m;
  std::size_t k;
};

/// "100x25" -> {100, 25}. Throws Errc::bad_shape.
Size parse_size(std::string_view text);
std::string format_size(Size s);

struct ExperimentSpec {
  std::vector<Method> methods;
  std::map<Method, Schedules> base;  // per-method schedules before the sweep
  std::vector<Size> sizes;
  std::optional<SweepParam> param;   // none: one row per size
  std::vector<double> values;
  std::size_t samples = 10;
  double tol = 1e-6;
  std::size_t max_iters = kDefaultMaxIters;
  std::uint64_t base_seed = 0;
  double box_lo = -1.0;
  double box_hi = 1.0;
  unsigned workers = 1;
  WRule w_rule = WRule::field_difference;
  EscomOptions escom;

  void validate() const;
};

/// Paper's best per-method settings: mu = 1e-4, a = 0.1; b = 0.01 and
/// lambda = 1.2 for ESCoM-CGD, b = 0.5 for the hybrid methods.
std::map<Method, Schedules> tuned_schedules();

/// Base schedules for a sweep over p:
///   a       mu = 1, b = 0.5, lambda = 0.7
///   b       mu = 1, a = 0.1, lambda = 0.7
///   mu      a = 0.1, lambda = 0.7, tuned b per method
///   lambda  mu = 1e-4, a = 0.1, b = 0.01
std::map<Method, Schedules> sweep_schedules(SweepParam p);

/// Grid values used for p when the caller gives none.
std::vector<double> default_values(SweepParam p);

ExperimentSpec sweep_spec(SweepParam p, std::vector<Method> methods,
                          std::vector<double> values, Size size,
                          std::size_t samples, std::uint64_t seed);

ExperimentSpec scale_spec(std::vector<Method> methods, std::vector<Size> sizes,
                          std::size_t samples, std::uint64_t seed);

struct AggregateRow {
  std::string method;
  std::string param_name;  // a, b, mu, lambda, or size=MxK
  double param_value = 0.0;  // swept value, or m for size rows
  double mean_iterations = 0.0;
  double mean_time_s = 0.0;
  std::size_t samples = 0;
  std::size_t flagged_runs = 0;  // counted at max_iters

  bool operator==(const AggregateRow&) const = default;
};

struct SampleResult {
  std::size_t iterations;
  double time_s;
  bool converged;
  double final_norm;
  double max_constraint;  // max_i <a_i, x>
  double max_row_norm;    // max_i ||a_i||
};

/// Rows in grid order (size, value, method); per-sample results are
/// appended to `samples_out` in the same order when given.
std::vector<AggregateRow> run_experiment(
    const ExperimentSpec& spec,
    std::vector<SampleResult>* samples_out = nullptr);

}  // namespace escom::bench
