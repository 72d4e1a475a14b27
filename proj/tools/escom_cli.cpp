#include <algorithm>
#include <charconv>
#include <cstdio>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "escom/bench/config.hpp"
#include "escom/bench/experiment.hpp"
#include "escom/bench/instance.hpp"
#include "escom/bench/report.hpp"
#include "escom/error.hpp"
#include "escom/kernels.hpp"
#include "escom/solvers.hpp"

namespace {

using namespace escom;
using namespace escom::bench;

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::vector<double> parse_values(const std::string& s) {
  std::vector<double> out;
  for (const std::string& item : split_list(s)) {
    double v = 0.0;
    const auto r = std::from_chars(item.data(), item.data() + item.size(), v);
    if (r.ec != std::errc{} || r.ptr != item.data() + item.size()) {
      fail(Errc::bad_config, "'" + item + "' is not a number");
    }
    out.push_back(v);
  }
  return out;
}

Method parse_method_or_fail(const std::string& s) {
  auto m = parse_method(s);
  if (!m) fail(Errc::bad_config, "unknown method '" + s + "'");
  return *m;
}

std::vector<Method> parse_methods(const std::string& s) {
  std::vector<Method> out;
  for (const std::string& item : split_list(s)) {
    out.push_back(parse_method_or_fail(item));
  }
  if (out.empty()) fail(Errc::bad_config, "empty method list");
  return out;
}

struct Common {
  double tol = 1e-6;
  std::size_t max_iters = kDefaultMaxIters;
  std::uint64_t seed = 0;
  std::string w_rule = "field";
  std::optional<double> sigma_cap;
  unsigned workers = 1;
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--tol", c.tol, "Stop once ||x|| <= tol")
      ->capture_default_str();
  app->add_option("--max-iters", c.max_iters, "Iteration safety bound")
      ->capture_default_str();
  app->add_option("--seed", c.seed, "Base seed")->capture_default_str();
  app->add_option("--w-rule", c.w_rule,
                  "HTCGM third term: field, iterate or zero")
      ->capture_default_str();
  app->add_option("--sigma-cap", c.sigma_cap,
                  "Upper bound on the extrapolation step (default: none)");
}

WRule w_rule_or_fail(const std::string& s) {
  auto w = parse_w_rule(s);
  if (!w) fail(Errc::bad_config, "unknown w-rule '" + s + "'");
  return *w;
}

void apply_common(ExperimentSpec& spec, const Common& c) {
  spec.tol = c.tol;
  spec.max_iters = c.max_iters;
  spec.w_rule = w_rule_or_fail(c.w_rule);
  spec.escom.sigma_cap = c.sigma_cap;
  spec.workers = c.workers;
}

void print_rows(const std::vector<AggregateRow>& rows) {
  write_csv(rows, std::cout);
}

// Config entries become "--key value" arguments placed before the real
// command-line arguments; every option keeps its last value, so flags win.
std::vector<std::string> merge_config(std::vector<std::string> args,
                                      CLI::App& app) {
  std::optional<std::string> path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
      args.erase(args.begin() + static_cast<long>(i),
                 args.begin() + static_cast<long>(i) + 2);
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      args.erase(args.begin() + static_cast<long>(i));
      break;
    }
  }
  if (!path) return args;

  CLI::App* sub = nullptr;
  std::size_t sub_pos = 0;
  for (std::size_t i = 0; i < args.size() && !sub; ++i) {
    for (CLI::App* s : app.get_subcommands({})) {
      if (s->get_name() == args[i]) {
        sub = s;
        sub_pos = i;
        break;
      }
    }
  }
  if (!sub) return args;

  std::vector<std::string> injected;
  for (const auto& [key, value] : load_config(*path)) {
    if (sub->get_option_no_throw("--" + key)) {
      injected.push_back("--" + key);
      injected.push_back(value);
      continue;
    }
    bool known = false;
    for (CLI::App* s : app.get_subcommands({})) {
      known = known || s->get_option_no_throw("--" + key) != nullptr;
    }
    if (!known) fail(Errc::bad_config, "unknown config key '" + key + "'");
  }
  args.insert(args.begin() + static_cast<long>(sub_pos) + 1, injected.begin(),
              injected.end());
  return args;
}

int run(int argc, char** argv) {
  CLI::App app{"Variational inequality solvers over cutter chains"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  std::string isa;
  app.add_option("--isa", isa, "Kernel set: scalar or avx2 (default: best)");
  std::string config_path;
  app.add_option("--config", config_path, "Flat key=value defaults file");

  // solve
  CLI::App* solve_cmd = app.add_subcommand("solve", "Solve one instance");
  Common solve_c;
  std::string method = "escom";
  std::size_t m = 1000, k = 200;
  std::optional<double> mu, a, b, lambda;
  std::string trace;
  solve_cmd->add_option("--method", method, "escom, hcgm, htcgm or hsdm")
      ->capture_default_str();
  solve_cmd->add_option("--m", m, "Number of half-spaces")
      ->capture_default_str();
  solve_cmd->add_option("--k", k, "Dimension")->capture_default_str();
  solve_cmd->add_option("--mu", mu, "Step scale (default: tuned per method)");
  solve_cmd->add_option("--a", a, "phi_n exponent");
  solve_cmd->add_option("--b", b, "beta_n exponent");
  solve_cmd->add_option("--lambda", lambda, "Relaxation (ESCoM-CGD)");
  solve_cmd->add_option("--trace", trace, "Per-iteration CSV output");
  add_common(solve_cmd, solve_c);

  // sweep
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "Parameter sweep");
  Common sweep_c;
  std::string param = "a", values, methods = "escom,hcgm,htcgm";
  std::size_t samples = 10;
  std::size_t sweep_m = 1000, sweep_k = 200;
  std::string out_csv, out_svg;
  sweep_cmd->add_option("--param", param, "a, b, mu or lambda")
      ->capture_default_str();
  sweep_cmd->add_option("--values", values,
                        "Comma-separated grid (default: the protocol's)");
  sweep_cmd->add_option("--methods", methods, "Comma-separated methods")
      ->capture_default_str();
  sweep_cmd->add_option("--samples", samples, "Instances per grid point")
      ->capture_default_str();
  sweep_cmd->add_option("--m", sweep_m, "Number of half-spaces")
      ->capture_default_str();
  sweep_cmd->add_option("--k", sweep_k, "Dimension")->capture_default_str();
  sweep_cmd->add_option("--out-csv", out_csv, "Aggregate CSV output");
  sweep_cmd->add_option("--out-svg", out_svg, "Line chart output");
  sweep_cmd->add_option("--workers", sweep_c.workers, "Concurrent runs")
      ->capture_default_str();
  add_common(sweep_cmd, sweep_c);

  // scale
  CLI::App* scale_cmd = app.add_subcommand("scale", "Size scaling");
  Common scale_c;
  std::string sizes = "100x25,300x75,500x125,700x175,1000x250";
  std::string scale_methods = "escom,hcgm,htcgm";
  std::size_t scale_samples = 10;
  std::string scale_csv, scale_svg;
  scale_cmd->add_option("--sizes", sizes, "Comma-separated MxK list")
      ->capture_default_str();
  scale_cmd->add_option("--methods", scale_methods, "Comma-separated methods")
      ->capture_default_str();
  scale_cmd->add_option("--samples", scale_samples, "Instances per size")
      ->capture_default_str();
  scale_cmd->add_option("--out-csv", scale_csv, "Aggregate CSV output");
  scale_cmd->add_option("--out-svg", scale_svg, "Line chart output");
  scale_cmd->add_option("--workers", scale_c.workers, "Concurrent runs")
      ->capture_default_str();
  add_common(scale_cmd, scale_c);

  std::vector<std::string> args(argv + 1, argv + argc);
  args = merge_config(std::move(args), app);
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  if (!isa.empty()) {
    auto which = kernels::parse_isa(isa);
    if (!which || !kernels::available(*which)) {
      fail(Errc::bad_config, "kernel set '" + isa + "' is not available");
    }
    kernels::select(*which);
  }

  if (*solve_cmd) {
    const Method meth = parse_method_or_fail(method);
    Schedules sched = tuned_schedules().at(meth);
    if (mu) sched.mu = *mu;
    if (a) sched.phi_exponent = *a;
    if (b) sched.beta_exponent = *b;
    if (lambda) sched.lambda = *lambda;
    const MinNormInstance inst = generate_instance(m, k, -1.0, 1.0, solve_c.seed);
    const Vector x1 = generate_start(k, solve_c.seed);
    const Problem prob = build_problem(inst);
    SolverConfig config;
    config.method = meth;
    config.sched = sched;
    config.escom.sigma_cap = solve_c.sigma_cap;
    config.w_rule = w_rule_or_fail(solve_c.w_rule);
    const RunRecord rec =
        solve(config, x1, prob.field, prob.chain,
              StopRule::norm(solve_c.tol, solve_c.max_iters));
    if (!trace.empty()) write_trace_csv(rec, trace);
    std::printf("method=%s status=%s iterations=%zu time_s=%.4f norm_x=%s\n",
                std::string(to_string(meth)).c_str(),
                std::string(to_string(rec.status)).c_str(),
                rec.iterations_used, rec.wall_time_s,
                format_real(norm(rec.x_final)).c_str());
    return 0;
  }

  if (*sweep_cmd) {
    auto p = parse_sweep_param(param);
    if (!p) fail(Errc::bad_config, "unknown sweep parameter '" + param + "'");
    ExperimentSpec spec =
        sweep_spec(*p, parse_methods(methods), parse_values(values),
                   Size{sweep_m, sweep_k}, samples, sweep_c.seed);
    apply_common(spec, sweep_c);
    const auto rows = run_experiment(spec);
    if (!out_csv.empty()) write_csv(rows, out_csv);
    if (!out_svg.empty()) {
      write_svg_lines(rows, out_svg, "mean iterations vs " + param);
    }
    print_rows(rows);
    return 0;
  }

  std::vector<Size> size_list;
  for (const std::string& s : split_list(sizes)) {
    size_list.push_back(parse_size(s));
  }
  ExperimentSpec spec = scale_spec(parse_methods(scale_methods), size_list,
                                   scale_samples, scale_c.seed);
  apply_common(spec, scale_c);
  std::vector<AggregateRow> rows = run_experiment(spec);
  if (!scale_csv.empty()) write_csv(rows, scale_csv);
  if (!scale_svg.empty()) {
    for (AggregateRow& r : rows) r.param_name = "m";
    write_svg_lines(rows, scale_svg, "mean iterations vs size");
  }
  print_rows(rows);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const escom::Error& e) {
    std::fprintf(stderr, "escom: %s\n", e.what());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "escom: %s\n", e.what());
  }
  return 2;
}
