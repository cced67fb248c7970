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

// Acceptance run: one PASS/FAIL line per criterion. Every stochastic check
// uses the master seed below, fixed before any run was made.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "heavymax/config.hpp"
#include "heavymax/harness.hpp"
#include "heavymax/ks.hpp"
#include "heavymax/limitproc.hpp"
#include "heavymax/metrics.hpp"
#include "heavymax/rng.hpp"
#include "support.hpp"

using namespace heavymax;
using heavymax::testing::PathGen;
using heavymax::testing::random_path;

namespace {

constexpr std::uint64_t kMaster = 2026;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

Outcome metric_oracle() {
  std::mt19937_64 rng(derive_seed(kMaster, {1}));
  double worst = 0.0;
  for (int rep = 0; rep < 200; ++rep) {
    const PathGen g{.max_jumps = 12, .grid = rep % 3 == 0 ? 16 : 0};
    const StepPath x = random_path(rng, g), y = random_path(rng, g);
    worst = std::max(worst, std::abs(d_m2_scalar(x, y).value - testing::hausdorff_oracle(x, y)));
  }
  return {worst <= 5e-3, fmt("max |exact - oracle| = %.2e over 200 pairs (tol 5e-3)", worst)};
}

Outcome metric_axioms() {
  std::mt19937_64 rng(derive_seed(kMaster, {2}));
  bool symmetric = true, identity = true;
  double excess = -INFINITY;
  auto check = [&](const StepPath& x, const StepPath& y, const StepPath& z, auto metric) {
    const double xy = metric(x, y).value;
    symmetric &= xy == metric(y, x).value;
    identity &= metric(x, x).value == 0.0;
    excess = std::max(excess, xy - metric(x, z).value - metric(z, y).value);
  };
  for (int rep = 0; rep < 500; ++rep) {
    if (rep % 2 == 0) {
      const PathGen g{.max_jumps = 10, .grid = rep % 4 == 0 ? 12 : 0};
      const StepPath x = random_path(rng, g), y = random_path(rng, g), z = random_path(rng, g);
      check(x, y, z, d_m2_scalar);
      check(x, y, z, d_p);
      check(x, y, z, d_uniform);
    } else {
      const PathGen g{.max_jumps = 10, .dim = 2, .monotone = true, .grid = rep % 4 == 1 ? 12 : 0};
      const StepPath x = random_path(rng, g), y = random_path(rng, g), z = random_path(rng, g);
      check(x, y, z, d_p);
      check(x, y, z, d_uniform);
    }
  }
  return {symmetric && identity && excess <= 1e-9,
          fmt("symmetric=%s identity=%s max triangle excess=%.2e (tol 1e-9)", symmetric ? "yes" : "no",
              identity ? "yes" : "no", excess)};
}

Outcome classical_frechet() {
  ExperimentPlan p = Config::preset("pareto-iid").plan();
  p.master_seed = kMaster;
  p.replications = 1000;
  p.n_grid = {1000, 10000, 100000};
  std::vector<double> d;
  for (std::size_t n : p.n_grid) d.push_back(run_ks_marginal(p, n, 1.0, 0).statistic);
  return {d[1] <= 0.08 && d[2] < d[0],
          fmt("KS(1e3)=%.4f KS(1e4)=%.4f KS(1e5)=%.4f; need KS(1e4)<=0.08 and KS(1e5)<KS(1e3)", d[0], d[1], d[2])};
}

Outcome example_marginals() {
  ExperimentPlan p = Config::preset("frechet-ma1").plan();
  p.master_seed = kMaster;
  p.replications = 1000;
  p.n_grid = {10000};
  const auto frechet = [](double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; };
  const double d1 = run_ks_marginal(p, 10000, 1.0, 0, frechet, "exp(-1/x)").statistic;
  const double d2 = run_ks_marginal(p, 10000, 1.0, 1, frechet, "exp(-1/x)").statistic;
  const auto es = exponent_scalars(limit_spec_for(p.scenario));
  const double scale = limit_spec_for(p.scenario).intensity * es.s_alpha[0];
  return {d1 <= 0.08 && d2 <= 0.08,
          fmt("KS k=1: %.4f, k=2: %.4f (tol 0.08); intensity*E(S)^alpha = %.3f", d1, d2, scale)};
}

Outcome coupling_decay() {
  ExperimentPlan p = Config::preset("frechet-ma1").plan();
  p.master_seed = kMaster;
  p.replications = 200;
  p.n_grid = {1000, 10000, 100000};
  p.delta = 0.25;
  const auto rows = run_coupling_sweep(p);
  const bool decreasing = rows[0].frequency > rows[1].frequency && rows[1].frequency > rows[2].frequency;
  return {decreasing && rows[2].frequency <= 0.05,
          fmt("P(d_p > 0.25): %.3f, %.3f, %.3f (counts %zu, %zu, %zu); need strictly decreasing and last <= 0.05",
              rows[0].frequency, rows[1].frequency, rows[2].frequency, rows[0].exceedances, rows[1].exceedances,
              rows[2].exceedances)};
}

Outcome counterexample_floor() {
  ExperimentPlan p = Config::preset("frechet-ma1").plan();
  p.master_seed = kMaster;
  p.replications = 2000;
  p.n_grid = {1000, 10000, 100000};
  p.epsilon = 8.0;
  const CounterexampleResult res = run_counterexample(p);
  bool osc = true;
  for (const auto& row : res.rows) osc &= row.oscillation_frequency >= 0.02;
  const double a = res.rows.back().a_frequency;
  return {osc && std::abs(a - res.a_limit) <= 0.01,
          fmt("osc freq %.4f, %.4f, %.4f (>= 0.02); A freq at 1e5 = %.4f vs %.4f +- 0.01; floor %.4f",
              res.rows[0].oscillation_frequency, res.rows[1].oscillation_frequency,
              res.rows[2].oscillation_frequency, a, res.a_limit, res.floor)};
}

Outcome limit_consistency() {
  const Scenario sc = Config::preset("frechet-ma1").scenario();
  const LimitSpec spec = limit_spec_for(sc);
  const double floor = default_floor(spec);
  const std::size_t count = 5000;
  double worst = 0.0, budget = 0.0;
  for (std::size_t k = 0; k < spec.dim(); ++k) {
    std::vector<double> v(count);
    for (std::size_t r = 0; r < count; ++r) {
      const auto s = sample_limit_path(spec, floor, {derive_seed(kMaster, {7, r, k, kReferencePoissonStream}),
                                                     derive_seed(kMaster, {7, r, k, kReferenceCoefficientStream})});
      v[r] = s.path.eval(1.0, k);
      budget = std::max(budget, s.error_budget);
    }
    worst = std::max(worst, ks_statistic(v, [&](double x) { return x > 0 ? limit_marginal_cdf(spec, k, 1.0, x) : 0.0; }));
  }
  const double tol = ks_critical_1pct(count) + budget;
  return {worst <= tol, fmt("max KS over components = %.4f vs %.4f (1%% critical + floor*Dmax = %.1e)", worst, tol, budget)};
}

Outcome truncation() {
  const auto model = CoefficientModel::geometric_decay(0.5, Matrix::identity(2), 40);
  bool identity = true;
  for (std::size_t m = 2; m <= 12; ++m) identity &= extremes(truncate(model, m)) == extremes(model);

  const InnovationModel im{.dim = 2, .alpha = 0.8, .marginal = Marginal::TwoSidedPareto, .tail_balance = 0.5};
  const std::size_t n = 1000, deepest = 40;
  const double an = normalizer(im, n, 1.0);
  std::vector<double> d5, d20;
  for (std::uint64_t s = 0; s < 100; ++s) {
    const InnovationWindow w = sample_window(im, n + deepest, derive_seed(kMaster, {8, s}), 1 - static_cast<long>(deepest));
    auto path = [&](std::size_t m) { return running_max(generate_path(truncate(model, m).finite.coefficients, w, n), 2, an); };
    const StepPath ref = path(deepest);
    d5.push_back(d_uniform(path(5), ref).value);
    d20.push_back(d_uniform(path(20), ref).value);
  }
  const double m5 = median(d5), m20 = median(d20);
  return {identity && m20 <= m5,
          fmt("extremes identity m=2..12: %s; median d_uniform m=20 vs 40: %.3e, m=5 vs 40: %.3e", identity ? "exact" : "BROKEN",
              m20, m5)};
}

Outcome karamata() {
  const InnovationModel p07{.dim = 1, .alpha = 0.7, .marginal = Marginal::Pareto};
  const InnovationModel p10{.dim = 1, .alpha = 1.0, .marginal = Marginal::Pareto};
  const std::size_t n = 1'000'000;
  const double below = karamata_diagnostic(p07, KaramataMode::BelowThreshold, 0.9, n, 40'000'000, derive_seed(kMaster, {9, 0}));
  const double above = karamata_diagnostic(p10, KaramataMode::AboveThreshold, 0.5, n, 1'000'000'000, derive_seed(kMaster, {9, 1}));
  const bool ok = std::abs(below - 3.5) <= 0.2 * 3.5 && std::abs(above - 2.0) <= 0.2 * 2.0;
  return {ok, fmt("gamma=0.9: %.4f vs 3.5 +- 20%%; delta=0.5: %.4f vs 2 +- 20%%", below, above)};
}

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "metric-oracle", 30, metric_oracle},
      {2, "metric-axioms", 30, metric_axioms},
      {3, "classical-frechet", 180, classical_frechet},
      {4, "example-marginals", 300, example_marginals},
      {5, "coupling-decay", 600, coupling_decay},
      {6, "counterexample-floor", 600, counterexample_floor},
      {7, "limit-self-consistency", 60, limit_consistency},
      {8, "truncation", 120, truncation},
      {9, "karamata", 60, karamata},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs < c.budget_s;
    const bool pass = o.pass && in_time;
    failures += !pass;
    std::printf("%s %d %s: %s [%.1fs of %.0fs]\n", pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs,
                c.budget_s);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed (master seed %llu)\n", static_cast<int>(criteria.size()) - failures,
              criteria.size(), static_cast<unsigned long long>(kMaster));
  return failures == 0 ? 0 : 1;
}
