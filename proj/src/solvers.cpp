#include "escom/solvers.hpp"

#include <chrono>
#include <cmath>
#include <string>

#include "escom/error.hpp"

namespace escom {
namespace {

// d^{n+1} = -F(x^{n+1}) + phi_{n+1} d^n, elementwise in that order.
Vector cg_direction(const Vector& fx_next, double phi_next, const Vector& d) {
  Vector out(fx_next.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = -fx_next[i] + phi_next * d[i];
  }
  return out;
}

bool projection_kind(const Cutter& c) {
  return c.kind() != CutterKind::subgradient;
}

struct SweepOutcome {
  Vector ty;
  double step_sq_sum;
  SigmaResult sigma;
};

SweepOutcome sweep_with_sigma(const CutterChain& chain, const Vector& y,
                              const EscomOptions& opts) {
  const double tol = opts.fixed_rel_tol * (1.0 + norm(y));
  if (opts.route == SigmaRoute::trajectory) {
    SweepTrajectory traj = sweep(chain, y);
    double step_sq = 0.0;
    for (std::size_t i = 1; i < traj.points.size(); ++i) {
      step_sq += dist_sq(traj.points[i], traj.points[i - 1]);
    }
    SigmaResult s = sigma_general(traj, tol);
    return {std::move(traj.points.back()), step_sq, s};
  }
  Vector u = y;
  const double step_sq = sweep_in_place(chain, u);
  const SigmaResult s = sigma_from_steps(dist_sq(u, y), step_sq, tol);
  return {std::move(u), step_sq, s};
}

double effective_sigma(const SigmaResult& s, const EscomOptions& opts) {
  if (opts.unit_sigma) return 1.0;
  double v = s.value;
  if (opts.sigma_cap && v > *opts.sigma_cap) v = *opts.sigma_cap;
  return v;
}

// x^{n+1} = T_last(y + lambda sigma (Ty - y)). When lambda sigma == 1 the
// extrapolated point is Ty, already in the range of an idempotent T_last.
Vector relaxed_then_last(const Vector& y, const Vector& ty, double sigma,
                         double lambda, const Cutter& last) {
  if (lambda * sigma == 1.0 && projection_kind(last)) return ty;
  Vector z = extrapolated_point(y, ty, sigma, lambda);
  last.apply_in_place(z);
  return z;
}

SolverState next_state(const SolverState& s, Vector x_next, Vector d_next,
                       Vector fx_next, double sigma, double residual) {
  SolverState out;
  out.n = s.n + 1;
  out.x = std::move(x_next);
  out.d = std::move(d_next);
  out.fx = std::move(fx_next);
  out.last_sigma = sigma;
  out.last_residual = residual;
  return out;
}

// Shared body of hsdm / hcgm / htcgm once the predictor y is known.
SolverState baseline_finish(Method method, const SolverState& state,
                            const VIField& field, const CutterChain& chain,
                            const Schedules& sched, Vector y, double beta,
                            double phi_next, const WRule* w_rule,
                            const StepObserver& observe) {
  Vector ty = y;
  const double step_sq = sweep_in_place(chain, ty);
  const double residual_sq = dist_sq(ty, y);
  Vector fx_next = field(ty);
  Vector d_next;
  if (method == Method::hsdm) {
    d_next = scaled(-1.0, fx_next);
  } else {
    d_next = cg_direction(fx_next, phi_next, state.d);
    if (w_rule && *w_rule != WRule::zero) {
      const Vector w = *w_rule == WRule::field_difference
                           ? sub(fx_next, state.fx)
                           : sub(ty, state.x);
      axpy(-phi_next, w, d_next);
    }
  }
  if (observe) {
    observe(StepInfo{method, state.n, state.x, state.d, y, ty, ty, d_next,
                     fx_next, sched.mu, 1.0, beta, phi_next, 1.0, residual_sq,
                     step_sq, residual_sq == 0.0, chain.size()});
  }
  Vector x_next = ty;
  return next_state(state, std::move(x_next), std::move(d_next),
                    std::move(fx_next), 1.0, std::sqrt(residual_sq));
}

void check_state(const SolverState& state, const CutterChain& chain) {
  if (state.n < 1) fail(Errc::bad_config, "iteration counter must be >= 1");
  require_same_dim(state.x, state.d, "solver state");
  require_finite(state.x, "iterate");
  require_finite(state.d, "direction");
  if (auto dim = chain.dimension(); dim && *dim != state.x.size()) {
    fail(Errc::dimension_mismatch,
         "iterate of dimension " + std::to_string(state.x.size()) +
             " for a chain of dimension " + std::to_string(*dim));
  }
}

using StepFn = std::function<SolverState(const SolverState&)>;

RunRecord drive(Method method, const Vector& x1, const VIField& field,
                const Schedules& sched, const StopRule& stop,
                const StepFn& step) {
  stop.validate();
  RunRecord rec;
  rec.method = method;
  SolverState state = initial_state(x1, field);
  const auto t0 = std::chrono::steady_clock::now();

  bool done = stop.norm_below && norm(state.x) <= *stop.norm_below;
  while (!done && rec.iterations_used < stop.max_iters) {
    SolverState next = step(state);
    const double step_norm = dist(next.x, state.x);
    rec.rows.push_back({state.n, norm(state.x), step_norm, next.last_sigma,
                        sched.beta(state.n), sched.phi(state.n)});
    ++rec.iterations_used;
    if (stop.norm_below && norm(next.x) <= *stop.norm_below) done = true;
    if (stop.residual_below && step_norm <= *stop.residual_below) done = true;
    state = std::move(next);
  }

  rec.wall_time_s = std::chrono::duration<double>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
  rec.status = done ? RunStatus::converged : RunStatus::max_iters_hit;
  rec.x_final = std::move(state.x);
  return rec;
}

}  // namespace

std::string_view to_string(Method method) noexcept {
  switch (method) {
    case Method::escom_cgd: return "escom_cgd";
    case Method::hcgm: return "hcgm";
    case Method::htcgm: return "htcgm";
    case Method::hsdm: return "hsdm";
  }
  return "?";
}

std::optional<Method> parse_method(std::string_view name) noexcept {
  if (name == "escom" || name == "escom_cgd" || name == "escom-cgd") {
    return Method::escom_cgd;
  }
  if (name == "hcgm") return Method::hcgm;
  if (name == "htcgm") return Method::htcgm;
  if (name == "hsdm") return Method::hsdm;
  return std::nullopt;
}

std::optional<WRule> parse_w_rule(std::string_view name) noexcept {
  if (name == "field" || name == "field_difference") {
    return WRule::field_difference;
  }
  if (name == "iterate" || name == "iterate_difference") {
    return WRule::iterate_difference;
  }
  if (name == "zero") return WRule::zero;
  return std::nullopt;
}

double Schedules::beta(std::size_t n) const {
  return std::pow(static_cast<double>(n + 1), -beta_exponent);
}

double Schedules::phi(std::size_t n) const {
  return std::pow(static_cast<double>(n + 1), -phi_exponent);
}

void Schedules::validate(const VIField& field) const {
  if (!(beta_exponent > 0.0 && beta_exponent <= 1.0)) {
    fail(Errc::bad_schedule,
         "beta exponent b=" + std::to_string(beta_exponent) +
             " outside (0, 1]");
  }
  if (!(phi_exponent > 0.0)) {
    fail(Errc::bad_schedule,
         "phi exponent a=" + std::to_string(phi_exponent) + " must be > 0");
  }
  if (!(lambda > 0.0 && lambda < 2.0)) {
    fail(Errc::bad_relaxation,
         "lambda=" + std::to_string(lambda) + " outside (0, 2)");
  }
  compute_tau(mu, field.eta(), field.kappa());
}

ScheduleValues schedule_values(const Schedules& sched, std::size_t n) {
  if (n < 1) fail(Errc::bad_schedule, "schedules are indexed from n = 1");
  return {sched.beta(n), sched.phi(n)};
}

SolverState initial_state(const Vector& x1, const VIField& field) {
  require_finite(x1, "starting point");
  SolverState s;
  s.n = 1;
  s.x = x1;
  s.fx = field(x1);
  s.d = scaled(-1.0, s.fx);
  return s;
}

SolverState escom_cgd_step(const SolverState& state, const VIField& field,
                           const CutterChain& chain, const Schedules& sched,
                           const EscomOptions& opts,
                           const StepObserver& observe) {
  check_state(state, chain);
  const double beta = sched.beta(state.n);
  const double phi_next = sched.phi(state.n + 1);
  const Vector y = add_scaled(state.x, sched.mu * beta, state.d);

  SweepOutcome sw = sweep_with_sigma(chain, y, opts);
  const double sigma = effective_sigma(sw.sigma, opts);
  Vector x_next = relaxed_then_last(y, sw.ty, sigma, sched.lambda,
                                    chain.last());
  Vector fx_next = field(x_next);
  Vector d_next = cg_direction(fx_next, phi_next, state.d);

  if (observe) {
    observe(StepInfo{Method::escom_cgd, state.n, state.x, state.d, y, sw.ty,
                     x_next, d_next, fx_next, sched.mu, sched.lambda, beta,
                     phi_next, sigma, sw.sigma.residual_sq, sw.step_sq_sum,
                     sw.sigma.in_fixed_set, chain.size()});
  }
  return next_state(state, std::move(x_next), std::move(d_next),
                    std::move(fx_next), sigma,
                    std::sqrt(sw.sigma.residual_sq));
}

SolverState hsdm_step(const SolverState& state, const VIField& field,
                      const CutterChain& chain, const Schedules& sched,
                      const StepObserver& observe) {
  check_state(state, chain);
  const double beta = sched.beta(state.n);
  Vector y = add_scaled(state.x, -(sched.mu * beta), state.fx);
  return baseline_finish(Method::hsdm, state, field, chain, sched,
                         std::move(y), beta, 0.0, nullptr, observe);
}

SolverState hcgm_step(const SolverState& state, const VIField& field,
                      const CutterChain& chain, const Schedules& sched,
                      const StepObserver& observe) {
  check_state(state, chain);
  const double beta = sched.beta(state.n);
  Vector y = add_scaled(state.x, sched.mu * beta, state.d);
  return baseline_finish(Method::hcgm, state, field, chain, sched,
                         std::move(y), beta, sched.phi(state.n + 1), nullptr,
                         observe);
}

SolverState htcgm_step(const SolverState& state, const VIField& field,
                       const CutterChain& chain, const Schedules& sched,
                       WRule w_rule, const StepObserver& observe) {
  check_state(state, chain);
  const double beta = sched.beta(state.n);
  Vector y = add_scaled(state.x, sched.mu * beta, state.d);
  return baseline_finish(Method::htcgm, state, field, chain, sched,
                         std::move(y), beta, sched.phi(state.n + 1), &w_rule,
                         observe);
}

StopRule StopRule::norm(double tol, std::size_t max_iters) {
  StopRule r;
  r.norm_below = tol;
  r.max_iters = max_iters;
  return r;
}

StopRule StopRule::residual(double tol, std::size_t max_iters) {
  StopRule r;
  r.residual_below = tol;
  r.max_iters = max_iters;
  return r;
}

StopRule StopRule::iterations(std::size_t n) {
  StopRule r;
  r.max_iters = n;
  return r;
}

void StopRule::validate() const {
  if (max_iters < 1) fail(Errc::bad_stop_rule, "max_iters must be >= 1");
  if (norm_below && !(*norm_below > 0.0)) {
    fail(Errc::bad_stop_rule, "norm tolerance must be > 0");
  }
  if (residual_below && !(*residual_below > 0.0)) {
    fail(Errc::bad_stop_rule, "residual tolerance must be > 0");
  }
}

std::string_view to_string(RunStatus status) noexcept {
  return status == RunStatus::converged ? "converged" : "max_iters_hit";
}

RunRecord solve(const SolverConfig& config, const Vector& x1,
                const VIField& field, const CutterChain& chain,
                const StopRule& stop, const StepObserver& observe) {
  config.sched.validate(field);
  const Schedules& sc = config.sched;
  StepFn step;
  switch (config.method) {
    case Method::escom_cgd:
      step = [&](const SolverState& s) {
        return escom_cgd_step(s, field, chain, sc, config.escom, observe);
      };
      break;
    case Method::hsdm:
      step = [&](const SolverState& s) {
        return hsdm_step(s, field, chain, sc, observe);
      };
      break;
    case Method::hcgm:
      step = [&](const SolverState& s) {
        return hcgm_step(s, field, chain, sc, observe);
      };
      break;
    case Method::htcgm:
      step = [&](const SolverState& s) {
        return htcgm_step(s, field, chain, sc, config.w_rule, observe);
      };
      break;
  }
  return drive(config.method, x1, field, sc, stop, step);
}

RunRecord escom_cgd_solve(const Vector& x1, const VIField& field,
                          const CutterChain& chain, const Schedules& sched,
                          const StopRule& stop, const EscomOptions& opts,
                          const StepObserver& observe) {
  SolverConfig config;
  config.method = Method::escom_cgd;
  config.sched = sched;
  config.escom = opts;
  return solve(config, x1, field, chain, stop, observe);
}

RunRecord escom_cgd_functional_solve(const Vector& x1, const VIField& field,
                                     const std::vector<Sublevel>& constraints,
                                     const Cutter& box_or_ball,
                                     const Schedules& sched,
                                     const StopRule& stop,
                                     const EscomOptions& opts,
                                     const StepObserver& observe) {
  if (box_or_ball.kind() != CutterKind::box &&
      box_or_ball.kind() != CutterKind::ball) {
    fail(Errc::bad_config, "the trailing set must be a box or a ball");
  }
  if (auto dim = box_or_ball.dimension(); *dim != x1.size()) {
    fail(Errc::dimension_mismatch, "starting point dimension " +
                                       std::to_string(x1.size()) +
                                       " does not match the trailing set");
  }
  if (!box_or_ball.contains(x1)) {
    fail(Errc::infeasible_start, "starting point lies outside the trailing set");
  }
  sched.validate(field);
  const std::size_t m = constraints.size() + 1;

  auto step = [&](const SolverState& state) {
    const double beta = sched.beta(state.n);
    const double phi_next = sched.phi(state.n + 1);
    const Vector y = add_scaled(state.x, sched.mu * beta, state.d);

    SweepTrajectory traj;
    traj.points.reserve(m + 1);
    traj.points.push_back(y);
    std::vector<Violation> violations;
    violations.reserve(m - 1);
    double step_sq = 0.0;
    Vector u = y;
    for (const Sublevel& c : constraints) {
      Violation v;
      v.value = c.value(u);
      if (!std::isfinite(v.value)) {
        fail(Errc::non_finite, "constraint value is not finite");
      }
      if (v.value > 0.0) {
        v.subgradient = c.subgradient(u);
        step_sq += subgradient_step(v.value, v.subgradient, u);
      }
      violations.push_back(std::move(v));
      traj.points.push_back(u);
    }
    step_sq += box_or_ball.apply_in_place(u);
    traj.points.push_back(u);

    const SigmaResult sr = sigma_functional(
        traj, violations, opts.fixed_rel_tol * (1.0 + norm(y)));
    const double sigma = effective_sigma(sr, opts);
    const Vector& ty = traj.output();
    Vector x_next = relaxed_then_last(y, ty, sigma, sched.lambda, box_or_ball);
    Vector fx_next = field(x_next);
    Vector d_next = cg_direction(fx_next, phi_next, state.d);

    if (observe) {
      observe(StepInfo{Method::escom_cgd, state.n, state.x, state.d, y, ty,
                       x_next, d_next, fx_next, sched.mu, sched.lambda, beta,
                       phi_next, sigma, sr.residual_sq, step_sq,
                       sr.in_fixed_set, m});
    }
    return next_state(state, std::move(x_next), std::move(d_next),
                      std::move(fx_next), sigma, std::sqrt(sr.residual_sq));
  };
  return drive(Method::escom_cgd, x1, field, sched, stop, step);
}

}  // namespace escom
