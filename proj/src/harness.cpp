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

#include "heavymax/harness.hpp"

#include <cmath>
#include <filesystem>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "heavymax/ks.hpp"
#include "heavymax/limitproc.hpp"
#include "heavymax/metrics.hpp"
#include "heavymax/rng.hpp"
#include "heavymax/step_path_io.hpp"

namespace heavymax {

namespace {

constexpr std::size_t kMinKsReplications = 100;
constexpr std::size_t kReferencePaths = 5000;

const std::pair<Statistic, const char*> kStatisticNames[] = {
    {Statistic::KsMarginal, "ks-marginal"},
    {Statistic::DpCoupling, "dp-coupling"},
    {Statistic::Oscillation, "oscillation"},
    {Statistic::EventFrequencies, "event-frequencies"},
};

double median_of(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t h = v.size() / 2;
  return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

double frequency(std::size_t events, std::size_t trials) {
  return trials ? static_cast<double>(events) / static_cast<double>(trials) : 0.0;
}

KSReport ks_from_samples(const ExperimentPlan& plan, std::size_t n, double t, std::size_t k,
                         const std::vector<double>& samples,
                         const std::function<double(double)>& reference, const std::string& reference_id) {
  const std::size_t d = plan.scenario.innovations.dim;
  if (k >= d) throw std::out_of_range("run_ks_marginal: component out of range");
  std::vector<double> xs(plan.replications);
  for (std::size_t r = 0; r < plan.replications; ++r) xs[r] = samples[r * d + k];

  KSReport rep;
  rep.n = n;
  rep.replications = plan.replications;
  rep.t = t;
  rep.component = k;
  if (reference) {
    rep.statistic = ks_statistic(xs, reference);
    rep.reference = reference_id.empty() ? "user" : reference_id;
    rep.critical_1pct = ks_critical_1pct(xs.size());
    rep.critical_5pct = ks_critical_5pct(xs.size());
  } else {
    const LimitSpec spec = limit_spec_for(plan.scenario);
    if (spec.fixed_extremes) {
      rep.statistic = ks_statistic(xs, [&](double x) {
        return x > 0.0 ? limit_marginal_cdf(spec, k, t, x) : 0.0;
      });
      rep.reference = "limit-closed-form";
      rep.critical_1pct = ks_critical_1pct(xs.size());
      rep.critical_5pct = ks_critical_5pct(xs.size());
    } else {
      const double floor = default_floor(spec);
      const auto ref = map_replications<double>(kReferencePaths, plan.jobs, [&](std::size_t i) {
        const LimitSeeds seeds{derive_seed(plan.master_seed, {0, i, kReferencePoissonStream}),
                               derive_seed(plan.master_seed, {0, i, kReferenceCoefficientStream})};
        return sample_limit_path(spec, floor, seeds).path.eval(t, k);
      });
      rep.statistic = ks_two_sample(xs, ref);
      rep.reference = "limit-monte-carlo";
      rep.critical_1pct = ks_two_sample_critical_1pct(xs.size(), ref.size());
      rep.critical_5pct = ks_two_sample_critical_5pct(xs.size(), ref.size());
    }
  }
  rep.pass_1pct = rep.statistic <= rep.critical_1pct;
  rep.pass_5pct = rep.statistic <= rep.critical_5pct;
  return rep;
}

std::vector<std::size_t> plan_components(const ExperimentPlan& plan) {
  if (!plan.components.empty()) return plan.components;
  std::vector<std::size_t> all(plan.scenario.innovations.dim);
  for (std::size_t k = 0; k < all.size(); ++k) all[k] = k;
  return all;
}

}  // namespace

std::string to_string(Statistic s) {
  for (const auto& [k, name] : kStatisticNames)
    if (k == s) return name;
  return "unknown";
}

Statistic parse_statistic(const std::string& name) {
  for (const auto& [k, text] : kStatisticNames)
    if (name == text) return k;
  throw std::invalid_argument("unknown statistic '" + name + "'");
}

void ExperimentPlan::validate() const {
  scenario.validate();
  if (replications < 1) throw std::invalid_argument("experiment.replications must be at least 1");
  if (n_grid.empty()) throw std::invalid_argument("experiment.n_grid must not be empty");
  for (std::size_t i = 0; i < n_grid.size(); ++i) {
    if (n_grid[i] < 2) throw std::invalid_argument("experiment.n_grid entries must be at least 2");
    if (i > 0 && n_grid[i] <= n_grid[i - 1])
      throw std::invalid_argument("experiment.n_grid must be strictly increasing");
  }
  if (!(t > 0.0 && t <= 1.0)) throw std::invalid_argument("experiment.t must lie in (0,1]");
  if (!(delta > 0.0)) throw std::invalid_argument("experiment.delta must be positive");
  if (!(epsilon > 0.0)) throw std::invalid_argument("experiment.epsilon must be positive");
  for (std::size_t k : components) {
    if (k >= scenario.innovations.dim)
      throw std::invalid_argument("experiment.components entry out of range");
  }
}

bool ExperimentPlan::wants(Statistic s) const {
  return std::find(statistics.begin(), statistics.end(), s) != statistics.end();
}

SeedPair replication_seeds(std::uint64_t master, std::size_t n, std::size_t r) {
  return {derive_seed(master, {n, r, kInnovationStream}), derive_seed(master, {n, r, kCoefficientStream})};
}

unsigned resolve_jobs(unsigned jobs) {
  if (jobs > 0) return jobs;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

std::vector<double> marginal_samples(const ExperimentPlan& plan, std::size_t n, double t) {
  const std::size_t d = plan.scenario.innovations.dim;
  const auto rows = map_replications<std::vector<double>>(plan.replications, plan.jobs, [&](std::size_t r) {
    const Realization real = realize_sample(plan.scenario, n, replication_seeds(plan.master_seed, n, r));
    const StepPath mn = build_mn(real);
    const auto v = mn.eval(t);
    return std::vector<double>(v.begin(), v.end());
  });
  std::vector<double> out;
  out.reserve(plan.replications * d);
  for (const auto& row : rows) out.insert(out.end(), row.begin(), row.end());
  return out;
}

KSReport run_ks_marginal(const ExperimentPlan& plan, std::size_t n, double t, std::size_t k,
                         const std::function<double(double)>& reference, const std::string& reference_id) {
  plan.validate();
  if (plan.replications < kMinKsReplications)
    throw std::invalid_argument("run_ks_marginal: at least 100 replications required");
  if (k >= plan.scenario.innovations.dim) throw std::out_of_range("run_ks_marginal: component out of range");
  return ks_from_samples(plan, n, t, k, marginal_samples(plan, n, t), reference, reference_id);
}

std::vector<KSReport> run_ks_grid(const ExperimentPlan& plan) {
  plan.validate();
  if (plan.replications < kMinKsReplications)
    throw std::invalid_argument("run_ks_marginal: at least 100 replications required");
  std::vector<KSReport> out;
  for (std::size_t n : plan.n_grid) {
    const auto samples = marginal_samples(plan, n, plan.t);
    for (std::size_t k : plan_components(plan)) out.push_back(ks_from_samples(plan, n, plan.t, k, samples, {}, ""));
  }
  return out;
}

std::vector<CouplingRow> run_coupling_sweep(const ExperimentPlan& plan) {
  plan.validate();
  if (plan.n_grid.size() < 3) throw std::invalid_argument("run_coupling_sweep: n-grid needs at least 3 points");
  std::vector<CouplingRow> out;
  for (std::size_t n : plan.n_grid) {
    const auto dist = map_replications<double>(plan.replications, plan.jobs, [&](std::size_t r) {
      const MaximaPair pair = build_pair(plan.scenario, n, replication_seeds(plan.master_seed, n, r));
      return d_p(pair.mn, pair.wn).value;
    });
    CouplingRow row;
    row.n = n;
    row.replications = plan.replications;
    row.delta = plan.delta;
    row.median = median_of(dist);
    row.exceedances = static_cast<std::size_t>(
        std::count_if(dist.begin(), dist.end(), [&](double v) { return v > plan.delta; }));
    row.frequency = frequency(row.exceedances, row.replications);
    out.push_back(row);
  }
  return out;
}

CounterexampleFlags counterexample_events(const Realization& r, double epsilon) {
  if (r.dim() != 2) throw std::invalid_argument("counterexample: two-dimensional scenario required");
  CounterexampleFlags flags;
  const StepPath vn = build_vn(build_mn(r));
  flags.oscillation = oscillation(vn, 2.0 / static_cast<double>(r.n)) > epsilon / 2.0;

  // T_j sits at data[j - t_first].
  const std::vector<double>& data = r.z.data;
  const long t_first = 2 * r.z.first_index - 1;
  const long t_last = t_first + static_cast<long>(data.size()) - 1;
  auto T = [&](long j) { return data[static_cast<std::size_t>(j - t_first)]; };

  const long hi = std::min(static_cast<long>(r.n) - 1, t_last);
  const long lo = std::max(1L, t_first);
  if (hi < lo) return flags;
  long arg = lo;
  for (long j = lo + 1; j <= hi; ++j) {
    if (T(j) > T(arg)) arg = j;
  }
  const double level = epsilon * r.an;
  flags.a = T(arg) > level;
  if (flags.a) {
    const long from = std::max(-1L, t_first);
    const long to = std::min(arg + 3, t_last);
    for (long j = from; j <= to; ++j) {
      if (j != arg && T(j) > level / 8.0) {
        flags.b = true;
        break;
      }
    }
  }
  return flags;
}

CounterexampleResult run_counterexample(const ExperimentPlan& plan) {
  plan.validate();
  if (plan.scenario.innovations.dim != 2)
    throw std::invalid_argument("counterexample: two-dimensional scenario required");
  CounterexampleResult res;
  res.epsilon = plan.epsilon;
  res.a_limit = -std::expm1(-1.0 / (2.0 * plan.epsilon));
  res.b_bound = 2.0 / (plan.epsilon * plan.epsilon);
  res.floor = res.a_limit - res.b_bound;
  res.floor_positive = res.floor > 0.0;
  for (std::size_t n : plan.n_grid) {
    const auto flags = map_replications<CounterexampleFlags>(plan.replications, plan.jobs, [&](std::size_t r) {
      return counterexample_events(realize_sample(plan.scenario, n, replication_seeds(plan.master_seed, n, r)),
                                   plan.epsilon);
    });
    CounterexampleRow row;
    row.n = n;
    row.replications = plan.replications;
    row.epsilon = plan.epsilon;
    for (const auto& f : flags) {
      row.oscillation_events += f.oscillation;
      row.a_events += f.a;
      row.b_events += f.b;
    }
    row.oscillation_frequency = frequency(row.oscillation_events, row.replications);
    row.a_frequency = frequency(row.a_events, row.replications);
    row.b_frequency = frequency(row.b_events, row.replications);
    res.rows.push_back(row);
  }
  return res;
}

ExperimentResults run_experiment(const ExperimentPlan& plan) {
  plan.validate();
  ExperimentResults res;
  if (plan.wants(Statistic::KsMarginal)) res.ks = run_ks_grid(plan);
  if (plan.wants(Statistic::DpCoupling)) res.coupling = run_coupling_sweep(plan);
  if (plan.wants(Statistic::Oscillation) || plan.wants(Statistic::EventFrequencies))
    res.counterexample = run_counterexample(plan);
  return res;
}

std::string ks_csv(const std::vector<KSReport>& rows) {
  std::ostringstream os;
  os << "n,R,t,k,D,crit1,crit5,pass\n";
  for (const auto& r : rows) {
    os << r.n << ',' << r.replications << ',' << format_double(r.t) << ',' << r.component + 1 << ','
       << format_double(r.statistic) << ',' << format_double(r.critical_1pct) << ','
       << format_double(r.critical_5pct) << ',' << (r.pass_1pct ? 1 : 0) << '\n';
  }
  return os.str();
}

std::string coupling_csv(const std::vector<CouplingRow>& rows) {
  std::ostringstream os;
  os << "n,R,delta,median,exceedances,frequency\n";
  for (const auto& r : rows) {
    os << r.n << ',' << r.replications << ',' << format_double(r.delta) << ',' << format_double(r.median)
       << ',' << r.exceedances << ',' << format_double(r.frequency) << '\n';
  }
  return os.str();
}

std::string counterexample_csv(const CounterexampleResult& result) {
  std::ostringstream os;
  os << "n,R,eps,osc_events,osc_freq,a_events,a_freq,b_events,b_freq,a_limit,b_bound,floor\n";
  for (const auto& r : result.rows) {
    os << r.n << ',' << r.replications << ',' << format_double(r.epsilon) << ',' << r.oscillation_events
       << ',' << format_double(r.oscillation_frequency) << ',' << r.a_events << ','
       << format_double(r.a_frequency) << ',' << r.b_events << ',' << format_double(r.b_frequency) << ','
       << format_double(result.a_limit) << ',' << format_double(result.b_bound) << ','
       << format_double(result.floor) << '\n';
  }
  return os.str();
}

std::string run_log(const ExperimentPlan& plan, const ExperimentResults& results) {
  using nlohmann::ordered_json;
  std::ostringstream os;

  ordered_json head;
  head["event"] = "plan";
  ordered_json cfg = ordered_json::object();
  for (const auto& [k, v] : results.config) cfg[k] = v;
  head["config"] = cfg;
  head["n_grid"] = plan.n_grid;
  head["replications"] = plan.replications;
  head["master_seed"] = plan.master_seed;
  ordered_json stats = ordered_json::array();
  for (Statistic s : plan.statistics) stats.push_back(to_string(s));
  head["statistics"] = stats;
  head["seed_scheme"] = "splitmix64 chain over (master, n, r, stream)";
  head["streams"] = {{"innovations", kInnovationStream},
                     {"coefficients", kCoefficientStream},
                     {"reference_poisson", kReferencePoissonStream},
                     {"reference_coefficients", kReferenceCoefficientStream}};
  os << head.dump() << '\n';

  if (!plan.statistics.empty()) {
    for (std::size_t n : plan.n_grid) {
      ordered_json line;
      line["event"] = "seeds";
      line["n"] = n;
      std::vector<std::uint64_t> inn, coef;
      inn.reserve(plan.replications);
      coef.reserve(plan.replications);
      for (std::size_t r = 0; r < plan.replications; ++r) {
        const SeedPair s = replication_seeds(plan.master_seed, n, r);
        inn.push_back(s.innovations);
        coef.push_back(s.coefficients);
      }
      line["innovations"] = inn;
      line["coefficients"] = coef;
      os << line.dump() << '\n';
    }
  }
  if (results.counterexample && !results.counterexample->floor_positive) {
    ordered_json warn;
    warn["event"] = "warning";
    warn["message"] = "analytic floor is not positive for this epsilon";
    warn["floor"] = results.counterexample->floor;
    os << warn.dump() << '\n';
  }
  return os.str();
}

std::vector<std::string> emit(const ExperimentPlan& plan, const ExperimentResults& results,
                              const std::string& directory) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(directory, ec);
  if (ec) throw std::runtime_error("cannot create output directory " + directory + ": " + ec.message());
  std::vector<std::string> written;
  auto put = [&](const std::string& name, const std::string& body) {
    const std::string path = (fs::path(directory) / name).string();
    write_text_file(path, body);
    written.push_back(path);
  };
  put("run.jsonl", run_log(plan, results));
  if (plan.wants(Statistic::KsMarginal)) put("ks.csv", ks_csv(results.ks));
  if (plan.wants(Statistic::DpCoupling)) put("coupling.csv", coupling_csv(results.coupling));
  if (results.counterexample) put("counterexample.csv", counterexample_csv(*results.counterexample));
  return written;
}

}  // namespace heavymax
