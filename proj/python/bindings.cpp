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

#include <pybind11/functional.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "heavymax/config.hpp"
#include "heavymax/harness.hpp"
#include "heavymax/limitproc.hpp"
#include "heavymax/metrics.hpp"
#include "heavymax/rng.hpp"
#include "heavymax/step_path_io.hpp"

namespace py = pybind11;
using namespace heavymax;

namespace {

StepPath from_rows(std::vector<double> breakpoints, const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) throw std::invalid_argument("StepPath: at least one value row required");
  const std::size_t d = rows.front().size();
  std::vector<double> flat;
  for (const auto& r : rows) {
    if (r.size() != d) throw std::invalid_argument("StepPath: ragged value rows");
    flat.insert(flat.end(), r.begin(), r.end());
  }
  return StepPath(d, std::move(breakpoints), std::move(flat));
}

std::vector<std::vector<double>> rows_of(const StepPath& p) {
  std::vector<std::vector<double>> out;
  for (std::size_t i = 0; i < p.pieces(); ++i) out.emplace_back(p.value(i).begin(), p.value(i).end());
  return out;
}

py::dict ks_row(const KSReport& r) {
  py::dict d;
  d["n"] = r.n;
  d["replications"] = r.replications;
  d["t"] = r.t;
  d["component"] = r.component + 1;
  d["statistic"] = r.statistic;
  d["critical_1pct"] = r.critical_1pct;
  d["critical_5pct"] = r.critical_5pct;
  d["pass_1pct"] = r.pass_1pct;
  d["pass_5pct"] = r.pass_5pct;
  d["reference"] = r.reference;
  return d;
}

py::dict results_dict(const ExperimentResults& res) {
  py::dict out;
  py::list ks, coupling;
  for (const auto& r : res.ks) ks.append(ks_row(r));
  for (const auto& r : res.coupling) {
    py::dict d;
    d["n"] = r.n;
    d["replications"] = r.replications;
    d["delta"] = r.delta;
    d["median"] = r.median;
    d["exceedances"] = r.exceedances;
    d["frequency"] = r.frequency;
    coupling.append(d);
  }
  out["ks"] = ks;
  out["coupling"] = coupling;
  if (res.counterexample) {
    const auto& c = *res.counterexample;
    py::list rows;
    for (const auto& r : c.rows) {
      py::dict d;
      d["n"] = r.n;
      d["replications"] = r.replications;
      d["oscillation_frequency"] = r.oscillation_frequency;
      d["a_frequency"] = r.a_frequency;
      d["b_frequency"] = r.b_frequency;
      rows.append(d);
    }
    py::dict d;
    d["rows"] = rows;
    d["epsilon"] = c.epsilon;
    d["a_limit"] = c.a_limit;
    d["b_bound"] = c.b_bound;
    d["floor"] = c.floor;
    out["counterexample"] = d;
  } else {
    out["counterexample"] = py::none();
  }
  return out;
}

ExperimentPlan plan_with_jobs(const Config& cfg, unsigned jobs) {
  ExperimentPlan p = cfg.plan();
  p.jobs = jobs;
  return p;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Partial maxima of heavy-tailed multivariate linear processes";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

  py::class_<StepPath>(m, "StepPath")
      .def(py::init(&from_rows), py::arg("breakpoints"), py::arg("values"))
      .def_static("constant", &StepPath::constant)
      .def_static("from_csv", [](const std::string& s) { return from_csv(s); })
      .def_static("from_json", [](const std::string& s) { return from_json(s); })
      .def_property_readonly("dim", &StepPath::dim)
      .def_property_readonly("pieces", &StepPath::pieces)
      .def_property_readonly("breakpoints", &StepPath::breakpoints)
      .def_property_readonly("values", &rows_of)
      .def("eval", py::overload_cast<double>(&StepPath::eval, py::const_), py::arg("t"))
      .def("left_limit", &StepPath::left_limit, py::arg("t"))
      .def("normalize", &StepPath::normalize)
      .def("component", &StepPath::component)
      .def("scaled", &StepPath::scaled)
      .def("is_nondecreasing", &StepPath::is_nondecreasing, py::arg("start") = 0.0)
      .def("to_csv", [](const StepPath& p) { return to_csv(p); })
      .def("to_json", [](const StepPath& p) { return to_json(p); })
      .def(py::self == py::self)
      .def("__repr__", [](const StepPath& p) {
        return "StepPath(dim=" + std::to_string(p.dim()) + ", pieces=" + std::to_string(p.pieces()) + ")";
      });

  py::class_<MetricResult>(m, "MetricResult")
      .def_readonly("value", &MetricResult::value)
      .def_readonly("tolerance", &MetricResult::tolerance)
      .def_property_readonly("method", [](const MetricResult& r) { return to_string(r.method); })
      .def_property_readonly("kind", [](const MetricResult& r) { return to_string(r.kind); })
      .def("to_json", [](const MetricResult& r) { return to_json(r); })
      .def("__float__", [](const MetricResult& r) { return r.value; })
      .def("__repr__", [](const MetricResult& r) { return to_json(r); });

  m.def("d_m2", &d_m2_scalar, py::arg("x"), py::arg("y"));
  m.def("d_m1_monotone", &d_m1_monotone, py::arg("x"), py::arg("y"));
  m.def("d_p", &d_p, py::arg("x"), py::arg("y"));
  m.def("d_uniform", &d_uniform, py::arg("x"), py::arg("y"));
  m.def("oscillation", &oscillation, py::arg("x"), py::arg("delta"));
  m.def("m_triple", &m_triple);
  m.def(
      "running_max",
      [](const std::vector<std::vector<double>>& rows, double scale) {
        if (rows.empty()) throw std::invalid_argument("running_max: no samples");
        std::vector<double> flat;
        for (const auto& r : rows) flat.insert(flat.end(), r.begin(), r.end());
        return running_max(flat, rows.front().size(), scale);
      },
      py::arg("samples"), py::arg("scale") = 1.0);

  py::class_<Config>(m, "Config")
      .def(py::init<>())
      .def_static("preset", &Config::preset)
      .def_static("preset_names", &Config::preset_names)
      .def_static("known_keys", &Config::known_keys)
      .def("set", py::overload_cast<const std::string&, const std::string&>(&Config::set))
      .def("merge_text", &Config::merge_text, py::arg("text"), py::arg("origin") = "config")
      .def("merge_file", &Config::merge_file)
      .def("get", &Config::get)
      .def("echo", &Config::echo);

  m.def(
      "simulate",
      [](const Config& cfg, std::size_t n, std::optional<std::uint64_t> seed) {
        const ExperimentPlan plan = cfg.plan();
        const std::uint64_t master = seed.value_or(plan.master_seed);
        const Realization r = realize_sample(plan.scenario, n, replication_seeds(master, n, 0));
        py::dict out;
        out["an"] = r.an;
        const StepPath mn = build_mn(r);
        out["mn"] = mn;
        out["wn"] = build_wn(r);
        out["vn"] = r.dim() == 2 ? py::cast(build_vn(mn)) : py::none();
        return out;
      },
      py::arg("config"), py::arg("n"), py::arg("seed") = py::none());

  m.def(
      "run_experiment",
      [](const Config& cfg, unsigned jobs) {
        ExperimentResults res;
        {
          py::gil_scoped_release release;
          res = run_experiment(plan_with_jobs(cfg, jobs));
        }
        return results_dict(res);
      },
      py::arg("config"), py::arg("jobs") = 1);

  m.def(
      "emit_experiment",
      [](const Config& cfg, const std::string& directory, unsigned jobs) {
        const ExperimentPlan plan = plan_with_jobs(cfg, jobs);
        py::gil_scoped_release release;
        ExperimentResults res = run_experiment(plan);
        res.config = cfg.echo();
        return emit(plan, res, directory);
      },
      py::arg("config"), py::arg("directory"), py::arg("jobs") = 1);

  m.def(
      "limit_cdf",
      [](const Config& cfg, std::size_t component, double t, double x) {
        if (component == 0) throw std::out_of_range("components are 1-based");
        return limit_marginal_cdf(limit_spec_for(cfg.scenario()), component - 1, t, x);
      },
      py::arg("config"), py::arg("component"), py::arg("t"), py::arg("x"));

  m.def(
      "sample_limit_path",
      [](const Config& cfg, std::uint64_t seed, std::optional<double> floor) {
        const LimitSpec spec = limit_spec_for(cfg.scenario());
        const double eps = floor.value_or(default_floor(spec));
        const LimitSample s = sample_limit_path(
            spec, eps, {derive_seed(seed, {0, 0, kReferencePoissonStream}), derive_seed(seed, {0, 0, kReferenceCoefficientStream})});
        return py::make_tuple(s.path, s.error_budget);
      },
      py::arg("config"), py::arg("seed") = 1, py::arg("floor") = py::none());
}
