#include "escom/bench/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <thread>

#include "escom/bench/instance.hpp"
#include "escom/error.hpp"

namespace escom::bench {
namespace {

struct Job {
  Size size;
  Method method;
  Schedules sched;
  std::uint64_t seed;
};

SampleResult run_job(const ExperimentSpec& spec, const Job& job) {
  const MinNormInstance inst = generate_instance(
      job.size.m, job.size.k, spec.box_lo, spec.box_hi, job.seed);
  const Vector x1 = generate_start(job.size.k, job.seed);
  const Problem prob = build_problem(inst);

  SolverConfig config;
  config.method = job.method;
  config.sched = job.sched;
  config.escom = spec.escom;
  config.w_rule = spec.w_rule;
  const RunRecord rec = solve(config, x1, prob.field, prob.chain,
                              StopRule::norm(spec.tol, spec.max_iters));

  double max_c = -INFINITY;
  double max_row = 0.0;
  for (std::size_t i = 0; i < inst.m; ++i) {
    const Vector a = inst.row(i);
    max_c = std::max(max_c, dot(a, rec.x_final));
    max_row = std::max(max_row, norm(a));
  }
  return {rec.iterations_used, rec.wall_time_s,
          rec.status == RunStatus::converged, norm(rec.x_final), max_c,
          max_row};
}

}  // namespace

std::string_view to_string(SweepParam p) noexcept {
  switch (p) {
    case SweepParam::a: return "a";
    case SweepParam::b: return "b";
    case SweepParam::mu: return "mu";
    case SweepParam::lambda: return "lambda";
  }
  return "?";
}

std::optional<SweepParam> parse_sweep_param(std::string_view name) noexcept {
  if (name == "a") return SweepParam::a;
  if (name == "b") return SweepParam::b;
  if (name == "mu") return SweepParam::mu;
  if (name == "lambda") return SweepParam::lambda;
  return std::nullopt;
}

void apply_param(Schedules& sched, SweepParam p, double value) {
  switch (p) {
    case SweepParam::a: sched.phi_exponent = value; break;
    case SweepParam::b: sched.beta_exponent = value; break;
    case SweepParam::mu: sched.mu = value; break;
    case SweepParam::lambda: sched.lambda = value; break;
  }
}

Size parse_size(std::string_view text) {
  const auto x = text.find('x');
  Size s{0, 0};
  if (x != std::string_view::npos) {
    const char* first = text.data();
    const char* mid = first + x;
    const char* last = first + text.size();
    const auto r1 = std::from_chars(first, mid, s.m);
    const auto r2 = std::from_chars(mid + 1, last, s.k);
    if (r1.ec == std::errc{} && r1.ptr == mid && r2.ec == std::errc{} &&
        r2.ptr == last && s.m > 0 && s.k > 0) {
      return s;
    }
  }
  fail(Errc::bad_shape, "size '" + std::string(text) + "' is not MxK");
}

std::string format_size(Size s) {
  return std::to_string(s.m) + "x" + std::to_string(s.k);
}

void ExperimentSpec::validate() const {
  if (methods.empty()) fail(Errc::bad_config, "no methods selected");
  if (sizes.empty()) fail(Errc::bad_config, "no problem sizes");
  if (samples < 1) fail(Errc::bad_config, "samples must be >= 1");
  if (!(tol > 0.0)) fail(Errc::bad_stop_rule, "tol must be > 0");
  if (max_iters < 1) fail(Errc::bad_stop_rule, "max_iters must be >= 1");
  if (param && values.empty()) fail(Errc::bad_config, "empty sweep grid");
  if (workers < 1) fail(Errc::bad_config, "workers must be >= 1");
  const VIField id = make_identity_field(1);
  for (Method m : methods) {
    auto it = base.find(m);
    if (it == base.end()) {
      fail(Errc::bad_config,
           "no schedules for method " + std::string(escom::to_string(m)));
    }
    if (param) {
      for (double v : values) {
        Schedules s = it->second;
        apply_param(s, *param, v);
        s.validate(id);
      }
    } else {
      it->second.validate(id);
    }
  }
}

std::map<Method, Schedules> tuned_schedules() {
  std::map<Method, Schedules> out;
  out[Method::escom_cgd] = Schedules{1e-4, 0.01, 0.1, 1.2};
  out[Method::hcgm] = Schedules{1e-4, 0.5, 0.1, 1.0};
  out[Method::htcgm] = Schedules{1e-4, 0.5, 0.1, 1.0};
  out[Method::hsdm] = Schedules{1e-4, 0.5, 0.1, 1.0};
  return out;
}

std::map<Method, Schedules> sweep_schedules(SweepParam p) {
  std::map<Method, Schedules> out = tuned_schedules();
  for (auto& [method, s] : out) {
    switch (p) {
      case SweepParam::a:
        s = Schedules{1.0, 0.5, 0.1, 0.7};
        break;
      case SweepParam::b:
        s = Schedules{1.0, 0.5, 0.1, 0.7};
        break;
      case SweepParam::mu:
        s.lambda = 0.7;
        break;
      case SweepParam::lambda:
        s = Schedules{1e-4, 0.01, 0.1, 1.2};
        break;
    }
    if (method != Method::escom_cgd) s.lambda = 1.0;
  }
  return out;
}

std::vector<double> default_values(SweepParam p) {
  switch (p) {
    case SweepParam::a: return {0.005, 0.01, 0.05, 0.1};
    case SweepParam::b: return {0.01, 0.05, 0.1, 0.5};
    case SweepParam::mu: return {1e-4, 1e-3, 0.01, 0.1, 0.5, 1.0, 1.5, 1.9};
    case SweepParam::lambda: {
      std::vector<double> v;
      for (int i = 1; i <= 19; ++i) v.push_back(i / 10.0);
      return v;
    }
  }
  return {};
}

ExperimentSpec sweep_spec(SweepParam p, std::vector<Method> methods,
                          std::vector<double> values, Size size,
                          std::size_t samples, std::uint64_t seed) {
  ExperimentSpec spec;
  spec.methods = std::move(methods);
  spec.base = sweep_schedules(p);
  spec.sizes = {size};
  spec.param = p;
  spec.values = values.empty() ? default_values(p) : std::move(values);
  spec.samples = samples;
  spec.base_seed = seed;
  return spec;
}

ExperimentSpec scale_spec(std::vector<Method> methods, std::vector<Size> sizes,
                          std::size_t samples, std::uint64_t seed) {
  ExperimentSpec spec;
  spec.methods = std::move(methods);
  spec.base = tuned_schedules();
  spec.sizes = std::move(sizes);
  spec.samples = samples;
  spec.base_seed = seed;
  return spec;
}

std::vector<AggregateRow> run_experiment(
    const ExperimentSpec& spec, std::vector<SampleResult>* samples_out) {
  spec.validate();

  struct Cell {
    Size size;
    Method method;
    std::string param_name;
    double param_value;
  };
  std::vector<Cell> cells;
  std::vector<Job> jobs;
  const std::size_t grid = spec.param ? spec.values.size() : 1;
  for (const Size& size : spec.sizes) {
    for (std::size_t g = 0; g < grid; ++g) {
      for (Method method : spec.methods) {
        Schedules sched = spec.base.at(method);
        Cell cell{size, method, "", 0.0};
        if (spec.param) {
          apply_param(sched, *spec.param, spec.values[g]);
          cell.param_name = std::string(to_string(*spec.param));
          cell.param_value = spec.values[g];
        } else {
          cell.param_name = "size=" + format_size(size);
          cell.param_value = static_cast<double>(size.m);
        }
        cells.push_back(cell);
        for (std::size_t s = 0; s < spec.samples; ++s) {
          jobs.push_back({size, method, sched, spec.base_seed + s});
        }
      }
    }
  }

  std::vector<SampleResult> results(jobs.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= jobs.size() || failed.load()) return;
      try {
        results[i] = run_job(spec, jobs[i]);
      } catch (...) {
        if (!failed.exchange(true)) error = std::current_exception();
        return;
      }
    }
  };
  const unsigned n_workers = static_cast<unsigned>(
      std::min<std::size_t>(spec.workers, jobs.size()));
  if (n_workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < n_workers; ++w) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);

  std::vector<AggregateRow> rows;
  rows.reserve(cells.size());
  for (std::size_t c = 0; c < cells.size(); ++c) {
    AggregateRow row;
    row.method = std::string(escom::to_string(cells[c].method));
    row.param_name = cells[c].param_name;
    row.param_value = cells[c].param_value;
    row.samples = spec.samples;
    double iters = 0.0;
    double time = 0.0;
    for (std::size_t s = 0; s < spec.samples; ++s) {
      const SampleResult& r = results[c * spec.samples + s];
      iters += static_cast<double>(r.iterations);
      time += r.time_s;
      if (!r.converged) ++row.flagged_runs;
    }
    row.mean_iterations = iters / static_cast<double>(spec.samples);
    row.mean_time_s = time / static_cast<double>(spec.samples);
    rows.push_back(std::move(row));
  }
  if (samples_out) {
    samples_out->insert(samples_out->end(), results.begin(), results.end());
  }
  return rows;
}

}  // namespace escom::bench
