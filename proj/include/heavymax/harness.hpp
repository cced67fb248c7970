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

#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "heavymax/maxima.hpp"

namespace heavymax {

enum class Statistic { KsMarginal, DpCoupling, Oscillation, EventFrequencies };

std::string to_string(Statistic s);
/// Accepts "ks-marginal", "dp-coupling", "oscillation", "event-frequencies".
Statistic parse_statistic(const std::string& name);

struct ExperimentPlan {
  Scenario scenario;
  std::vector<std::size_t> n_grid;
  std::size_t replications = 1000;
  std::uint64_t master_seed = 0;
  std::vector<Statistic> statistics;
  double t = 1.0;
  std::vector<std::size_t> components;  // empty: every component
  double delta = 0.25;                  // coupling threshold
  double epsilon = 8.0;                 // counterexample level
  std::string output_dir;
  unsigned jobs = 1;                    // 0: hardware concurrency

  void validate() const;
  bool wants(Statistic s) const;
};

// Seeds are derive_seed(master, {n, r, stream}) with these stream ids.
enum SeedStream : std::uint64_t {
  kInnovationStream = 0,
  kCoefficientStream = 1,
  kReferencePoissonStream = 2,
  kReferenceCoefficientStream = 3,
};

SeedPair replication_seeds(std::uint64_t master, std::size_t n, std::size_t r);

unsigned resolve_jobs(unsigned jobs);

/// out[r] = fn(r) for r < count, spread over `jobs` threads. Results depend
/// only on the index, so the output is identical for any thread count. The
/// first exception thrown by a task is rethrown after all workers stop.
template <class T, class Fn>
std::vector<T> map_replications(std::size_t count, unsigned jobs, Fn&& fn) {
  std::vector<T> out(count);
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(resolve_jobs(jobs), std::max<std::size_t>(count, 1)));
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    for (;;) {
      const std::size_t r = next.fetch_add(1);
      if (r >= count) return;
      try {
        out[r] = fn(r);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(count);
        return;
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  if (error) std::rethrow_exception(error);
  return out;
}

struct KSReport {
  std::size_t n = 0;
  std::size_t replications = 0;
  double t = 1.0;
  std::size_t component = 0;
  double statistic = 0.0;
  double critical_1pct = 0.0;
  double critical_5pct = 0.0;
  bool pass_1pct = false;
  bool pass_5pct = false;
  std::string reference;
};

/// Row-major R x d matrix of M_n(t) over the plan's replications at sample size n.
std::vector<double> marginal_samples(const ExperimentPlan& plan, std::size_t n, double t);

/// KS distance between the R values of M_n^{(k)}(t) and a reference. Without
/// an explicit CDF the closed-form limit marginal is used for deterministic
/// coefficients, and a two-sample test against 5000 limit paths otherwise.
/// Throws std::invalid_argument when R < 100.
KSReport run_ks_marginal(const ExperimentPlan& plan, std::size_t n, double t, std::size_t k,
                         const std::function<double(double)>& reference = {},
                         const std::string& reference_id = "");

/// run_ks_marginal over the n-grid and the plan's components (plan.t).
std::vector<KSReport> run_ks_grid(const ExperimentPlan& plan);

struct CouplingRow {
  std::size_t n = 0;
  std::size_t replications = 0;
  double delta = 0.0;
  double median = 0.0;
  std::size_t exceedances = 0;
  double frequency = 0.0;
};

/// d_p(M_n, W_n) over coupled pairs; needs at least three grid points.
std::vector<CouplingRow> run_coupling_sweep(const ExperimentPlan& plan);

struct CounterexampleRow {
  std::size_t n = 0;
  std::size_t replications = 0;
  double epsilon = 0.0;
  std::size_t oscillation_events = 0;
  std::size_t a_events = 0;
  std::size_t b_events = 0;
  double oscillation_frequency = 0.0;
  double a_frequency = 0.0;
  double b_frequency = 0.0;
};

struct CounterexampleResult {
  std::vector<CounterexampleRow> rows;
  double epsilon = 0.0;
  double a_limit = 0.0;   // 1 - exp(-1/(2 eps))
  double b_bound = 0.0;   // 2 / eps^2
  double floor = 0.0;     // a_limit - b_bound
  bool floor_positive = false;
};

/// Per replication of a two-dimensional scenario: the oscillation event
/// {omega_{2/n}(V_n) > eps/2}, A = {max_{1<=i<=n-1} T_i > eps a_n} and the
/// near-collision event B around the argmax i'. T is the flattened innovation
/// sequence, Z_i = (T_{2i-1}, T_{2i}).
CounterexampleResult run_counterexample(const ExperimentPlan& plan);

struct CounterexampleFlags {
  bool oscillation = false;
  bool a = false;
  bool b = false;
};

/// The three events for one realization (exposed for testing).
CounterexampleFlags counterexample_events(const Realization& r, double epsilon);

struct ExperimentResults {
  std::vector<std::pair<std::string, std::string>> config;  // resolved key/value echo
  std::vector<KSReport> ks;
  std::vector<CouplingRow> coupling;
  std::optional<CounterexampleResult> counterexample;
};

/// Runs every statistic requested by the plan.
ExperimentResults run_experiment(const ExperimentPlan& plan);

std::string ks_csv(const std::vector<KSReport>& rows);
std::string coupling_csv(const std::vector<CouplingRow>& rows);
std::string counterexample_csv(const CounterexampleResult& result);
std::string run_log(const ExperimentPlan& plan, const ExperimentResults& results);

/// Writes run.jsonl plus ks.csv, coupling.csv and counterexample.csv for the
/// statistics present into `directory` (created if missing). Returns the
/// written paths. Throws std::runtime_error when the sink is not writable.
std::vector<std::string> emit(const ExperimentPlan& plan, const ExperimentResults& results,
                              const std::string& directory);

}  // namespace heavymax
