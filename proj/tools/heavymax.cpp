/*
 * Copyright 2026 The heavymax Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "heavymax/config.hpp"
#include "heavymax/harness.hpp"
#include "heavymax/limitproc.hpp"
#include "heavymax/maxima.hpp"
#include "heavymax/metrics.hpp"
#include "heavymax/rng.hpp"
#include "heavymax/step_path_io.hpp"

namespace {

using namespace heavymax;

constexpr int kExitRuntime = 1;
constexpr int kExitConfig = 2;

struct Common {
  std::string config_file;
  std::string preset;
  std::vector<std::string> overrides;
  std::string output;
  unsigned jobs = 1;
};

Config resolve(const Common& c) {
  Config cfg = c.preset.empty() ? Config() : Config::preset(c.preset);
  if (!c.config_file.empty()) cfg.merge_file(c.config_file);
  for (const auto& o : c.overrides) cfg.set(o);
  if (!c.output.empty()) cfg.set("output.dir", c.output);
  for (const auto& [k, v] : cfg.echo()) std::cerr << "# " << k << " = " << v << '\n';
  return cfg;
}

std::string join_path(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory " + dir + ": " + ec.message());
}

int cmd_simulate(const Common& common, std::size_t n, std::optional<std::uint64_t> seed, const std::string& what) {
  const Config cfg = resolve(common);
  const ExperimentPlan plan = cfg.plan();
  const std::uint64_t master = seed.value_or(plan.master_seed);
  const Realization r = realize_sample(plan.scenario, n, replication_seeds(master, n, 0));
  const StepPath mn = build_mn(r);
  const std::string dir = cfg.output_dir();
  ensure_dir(dir);
  std::vector<std::pair<std::string, StepPath>> out;
  if (what == "mn" || what == "all") out.emplace_back("mn.csv", mn);
  if (what == "wn" || what == "all") out.emplace_back("wn.csv", build_wn(r));
  if (what == "vn" || (what == "all" && r.dim() == 2)) out.emplace_back("vn.csv", build_vn(mn));
  for (const auto& [name, path] : out) {
    const std::string file = join_path(dir, name);
    write_text_file(file, to_csv(path));
    std::cout << file << '\n';
  }
  return 0;
}

int cmd_metric(const std::string& a, const std::string& b, const std::string& metric, double delta) {
  std::optional<StepPath> px, py;
  try {
    px = read_csv_file(a);
    if (metric != "osc") {
      if (b.empty()) throw ConfigError("metric '" + metric + "' needs two files");
      py = read_csv_file(b);
    }
  } catch (const ParseError& e) {
    throw ConfigError(e.what());
  }
  const StepPath& x = *px;
  MetricResult res;
  try {
    if (metric == "osc") {
      res.value = oscillation(x, delta);
      res.kind = MetricKind::Oscillation;
    } else {
      const StepPath& y = *py;
      if (x.dim() != y.dim()) throw ConfigError("dimension mismatch between " + a + " and " + b);
      if (metric == "m2") {
        if (x.dim() != 1) throw ConfigError("metric m2 needs one-dimensional paths; use dp");
        res = d_m2_scalar(x, y);
      } else if (metric == "m1") {
        if (x.dim() != 1) throw ConfigError("metric m1 needs one-dimensional paths; use dp");
        res = d_m1_monotone(x, y);
      } else if (metric == "dp") {
        res = d_p(x, y);
      } else if (metric == "uniform") {
        res = d_uniform(x, y);
      } else {
        throw ConfigError("unknown metric '" + metric + "'");
      }
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  } catch (const std::domain_error& e) {
    throw ConfigError(e.what());
  }
  std::cout << to_json(res) << '\n';
  return 0;
}

void print_and_emit(const ExperimentPlan& plan, const ExperimentResults& res, const std::string& dir) {
  if (!res.ks.empty()) std::cout << ks_csv(res.ks);
  if (!res.coupling.empty()) std::cout << coupling_csv(res.coupling);
  if (res.counterexample) std::cout << counterexample_csv(*res.counterexample);
  for (const auto& f : emit(plan, res, dir)) std::cerr << "wrote " << f << '\n';
}

int cmd_converge(const Common& common) {
  const Config cfg = resolve(common);
  ExperimentPlan plan = cfg.plan();
  plan.jobs = common.jobs;
  std::vector<Statistic> keep;
  for (Statistic s : plan.statistics)
    if (s == Statistic::KsMarginal || s == Statistic::DpCoupling) keep.push_back(s);
  if (keep.empty()) keep.push_back(Statistic::KsMarginal);
  plan.statistics = keep;
  ExperimentResults res = run_experiment(plan);
  res.config = cfg.echo();
  print_and_emit(plan, res, cfg.output_dir());
  return 0;
}

int cmd_counterexample(const Common& common, std::optional<double> eps) {
  Config cfg = resolve(common);
  if (eps) {
    std::ostringstream os;
    os << format_double(*eps);
    cfg.set("experiment.epsilon", os.str());
  }
  cfg.set("experiment.statistics", "oscillation, event-frequencies");
  ExperimentPlan plan = cfg.plan();
  plan.jobs = common.jobs;
  ExperimentResults res = run_experiment(plan);
  res.config = cfg.echo();
  if (!res.counterexample->floor_positive)
    std::cerr << "warning: analytic floor " << format_double(res.counterexample->floor)
              << " is not positive; eps fails eps^2 (1 - exp(-1/(2 eps))) > 2\n";
  print_and_emit(plan, res, cfg.output_dir());
  return 0;
}

struct Grid {
  double lo, hi;
  std::size_t count;
};

Grid parse_grid(const std::string& text) {
  const auto a = text.find(':');
  const auto b = text.find(':', a == std::string::npos ? a : a + 1);
  if (a == std::string::npos || b == std::string::npos)
    throw ConfigError("--cdf-grid expects lo:hi:count, got '" + text + "'");
  try {
    std::size_t used = 0;
    Grid g{};
    const std::string s0 = text.substr(0, a), s1 = text.substr(a + 1, b - a - 1), s2 = text.substr(b + 1);
    g.lo = std::stod(s0, &used);
    if (used != s0.size()) throw std::invalid_argument("lo");
    g.hi = std::stod(s1, &used);
    if (used != s1.size()) throw std::invalid_argument("hi");
    const unsigned long c = std::stoul(s2, &used);
    if (used != s2.size()) throw std::invalid_argument("count");
    g.count = c;
    if (!(g.lo > 0.0) || !(g.hi >= g.lo) || g.count < 1) throw std::invalid_argument("range");
    if (g.count == 1 && g.hi != g.lo) throw std::invalid_argument("range");
    return g;
  } catch (const std::exception&) {
    throw ConfigError("--cdf-grid expects 0 < lo <= hi and count >= 1, got '" + text + "'");
  }
}

int cmd_limit(const Common& common, const std::string& grid_text, std::size_t paths, std::size_t component,
              double t, std::optional<double> floor, std::optional<std::uint64_t> seed) {
  const Config cfg = resolve(common);
  const ExperimentPlan plan = cfg.plan();
  const LimitSpec spec = limit_spec_for(plan.scenario);
  if (grid_text.empty() && paths == 0) throw ConfigError("limit: give --cdf-grid and/or --paths");
  if (component < 1 || component > spec.dim()) throw ConfigError("--component out of range");
  if (!(t > 0.0 && t <= 1.0)) throw ConfigError("--t must lie in (0,1]");
  if (!grid_text.empty()) {
    if (!spec.fixed_extremes) throw ConfigError("--cdf-grid needs deterministic coefficients");
    const Grid g = parse_grid(grid_text);
    std::cout << "x,cdf\n";
    for (std::size_t i = 0; i < g.count; ++i) {
      const double x = g.count == 1 ? g.lo
                                    : g.lo + (g.hi - g.lo) * static_cast<double>(i) / static_cast<double>(g.count - 1);
      std::cout << format_double(x) << ',' << format_double(limit_marginal_cdf(spec, component - 1, t, x)) << '\n';
    }
  }
  if (paths > 0) {
    const double eps = floor.value_or(default_floor(spec));
    if (!(eps > 0.0)) throw ConfigError("--floor must be positive");
    const std::uint64_t master = seed.value_or(plan.master_seed);
    const std::string dir = cfg.output_dir();
    ensure_dir(dir);
    for (std::size_t i = 0; i < paths; ++i) {
      const LimitSeeds seeds{derive_seed(master, {0, i, kReferencePoissonStream}),
                             derive_seed(master, {0, i, kReferenceCoefficientStream})};
      const LimitSample s = sample_limit_path(spec, eps, seeds);
      const std::string file = join_path(dir, "limit_" + std::to_string(i) + ".csv");
      write_text_file(file, to_csv(s.path));
      std::cerr << "wrote " << file << " (error budget " << format_double(s.error_budget) << ")\n";
    }
  }
  return 0;
}

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--config", c.config_file, "Config file with namespaced key = value lines");
  sub->add_option("--preset", c.preset, "Start from a preset (frechet-ma1, pareto-iid)");
  sub->add_option("--set", c.overrides, "Override one key, key=value (repeatable)");
  sub->add_option("--output", c.output, "Output directory (default: output.dir, $HEAVYMAX_OUTPUT_DIR, heavymax-out)");
  sub->add_option("--jobs", c.jobs, "Worker threads, 0 for all cores")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Partial maxima of heavy-tailed linear processes: simulation, Skorokhod distances, experiments"};
  app.require_subcommand(1);
  Common common;

  auto* sim = app.add_subcommand("simulate", "Simulate M_n, W_n and V_n and write them as step-path CSV");
  add_common(sim, common);
  std::size_t sim_n = 1000;
  std::optional<std::uint64_t> sim_seed;
  std::string emit_what = "all";
  sim->add_option("--n", sim_n, "Sample size")->capture_default_str()->check(CLI::Range(std::size_t{2}, SIZE_MAX));
  sim->add_option("--seed", sim_seed, "Master seed (default experiment.seed)");
  sim->add_option("--emit", emit_what, "Which paths to write")
      ->check(CLI::IsMember({"mn", "wn", "vn", "all"}))
      ->capture_default_str();

  auto* met = app.add_subcommand("metric", "Distance between two step-path CSV files, printed as one JSON line");
  std::string file_a, file_b, metric_name = "m2";
  double delta = 0.1;
  met->add_option("A", file_a, "First path")->required();
  met->add_option("B", file_b, "Second path (unused for osc)");
  met->add_option("--metric", metric_name, "m2, m1, dp, uniform or osc")
      ->check(CLI::IsMember({"m2", "m1", "dp", "uniform", "osc"}))
      ->capture_default_str();
  met->add_option("--delta", delta, "Window for osc")->capture_default_str();

  auto* conv = app.add_subcommand("converge", "KS marginal and coupling-distance tables over the n-grid");
  add_common(conv, common);

  auto* cex = app.add_subcommand("counterexample", "Oscillation and event frequencies of V_n over the n-grid");
  add_common(cex, common);
  std::optional<double> eps;
  cex->add_option("--eps", eps, "Level epsilon (default experiment.epsilon)");

  auto* lim = app.add_subcommand("limit", "Limit-process CDF tables and sampled limit paths");
  add_common(lim, common);
  std::string grid;
  std::size_t paths = 0, component = 1;
  double lim_t = 1.0;
  std::optional<double> floor;
  std::optional<std::uint64_t> lim_seed;
  lim->add_option("--cdf-grid", grid, "x,cdf table over lo:hi:count");
  lim->add_option("--paths", paths, "Number of limit paths to write")->capture_default_str();
  lim->add_option("--component", component, "Component (1-based)")->capture_default_str();
  lim->add_option("--t", lim_t, "Time for the CDF table")->capture_default_str();
  lim->add_option("--floor", floor, "Poisson truncation floor (default 1e-3 of the max scale)");
  lim->add_option("--seed", lim_seed, "Master seed (default experiment.seed)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*sim) return cmd_simulate(common, sim_n, sim_seed, emit_what);
    if (*met) return cmd_metric(file_a, file_b, metric_name, delta);
    if (*conv) return cmd_converge(common);
    if (*cex) return cmd_counterexample(common, eps);
    if (*lim) return cmd_limit(common, grid, paths, component, lim_t, floor, lim_seed);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitRuntime;
}
