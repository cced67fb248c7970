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

#include "heavymax/config.hpp"

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace heavymax {

namespace {

const std::map<std::string, std::string>& defaults() {
  static const std::map<std::string, std::string> d = {
      {"innovation.dim", "1"},
      {"innovation.alpha", "1"},
      {"innovation.marginal", "pareto"},
      {"innovation.scale", "1"},
      {"innovation.tail_balance", "1"},
      {"innovation.dependence", "iid"},
      {"innovation.m", "1"},
      {"innovation.noise_scale", "0"},
      {"coefficient.kind", "deterministic"},
      {"coefficient.matrices", "[[[1]]]"},
      {"coefficient.lower", "[]"},
      {"coefficient.upper", "[]"},
      {"coefficient.rho", "0.5"},
      {"coefficient.base", "[[1]]"},
      {"coefficient.truncation_order", "20"},
      {"experiment.normalizer", "norm"},
      {"experiment.target_mass", "1"},
      {"experiment.fixed_an", ""},
      {"experiment.n_grid", "[1000, 10000, 100000]"},
      {"experiment.replications", "1000"},
      {"experiment.seed", "1"},
      {"experiment.statistics", "ks-marginal"},
      {"experiment.t", "1"},
      {"experiment.components", ""},
      {"experiment.delta", "0.25"},
      {"experiment.epsilon", "8"},
      {"output.dir", ""},
  };
  return d;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value, const std::string& why) {
  throw ConfigError(key + ": invalid value '" + value + "' (" + why + ")");
}

double as_double(const std::string& key, const std::string& v) {
  errno = 0;
  char* end = nullptr;
  const double x = std::strtod(v.c_str(), &end);
  if (v.empty() || end != v.c_str() + v.size() || errno == ERANGE) bad_value(key, v, "expected a number");
  return x;
}

std::uint64_t as_u64(const std::string& key, const std::string& v) {
  if (v.empty() || v.find_first_not_of("0123456789") != std::string::npos)
    bad_value(key, v, "expected a non-negative integer");
  errno = 0;
  const unsigned long long x = std::strtoull(v.c_str(), nullptr, 10);
  if (errno == ERANGE) bad_value(key, v, "out of range");
  return static_cast<std::uint64_t>(x);
}

nlohmann::json as_json(const std::string& key, const std::string& v) {
  try {
    return nlohmann::json::parse(v);
  } catch (const nlohmann::json::exception&) {
    bad_value(key, v, "expected JSON");
  }
}

Matrix matrix_from_json(const std::string& key, const std::string& raw, const nlohmann::json& j) {
  if (!j.is_array() || j.empty()) bad_value(key, raw, "expected a square matrix");
  const std::size_t d = j.size();
  std::vector<double> entries;
  entries.reserve(d * d);
  for (const auto& row : j) {
    if (!row.is_array() || row.size() != d) bad_value(key, raw, "expected a square matrix");
    for (const auto& x : row) {
      if (!x.is_number()) bad_value(key, raw, "matrix entries must be numbers");
      entries.push_back(x.get<double>());
    }
  }
  return Matrix(d, std::move(entries));
}

std::vector<Matrix> matrices(const std::string& key, const std::string& v) {
  const nlohmann::json j = as_json(key, v);
  if (!j.is_array()) bad_value(key, v, "expected a list of matrices");
  std::vector<Matrix> out;
  for (const auto& m : j) out.push_back(matrix_from_json(key, v, m));
  return out;
}

// JSON array or comma-separated list of non-negative integers.
std::vector<std::uint64_t> integer_list(const std::string& key, const std::string& v) {
  std::vector<std::uint64_t> out;
  if (trim(v).empty()) return out;
  if (trim(v).front() == '[') {
    const nlohmann::json j = as_json(key, v);
    if (!j.is_array()) bad_value(key, v, "expected a list");
    for (const auto& x : j) {
      if (!x.is_number_unsigned()) bad_value(key, v, "expected non-negative integers");
      out.push_back(x.get<std::uint64_t>());
    }
    return out;
  }
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(as_u64(key, trim(item)));
  return out;
}

std::vector<std::string> word_list(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const std::string w = trim(item);
    if (!w.empty()) out.push_back(w);
  }
  return out;
}

}  // namespace

Config::Config() : values_(defaults()) {}

const std::vector<std::string>& Config::known_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (const auto& [key, _] : defaults()) k.push_back(key);
    return k;
  }();
  return keys;
}

std::vector<std::string> Config::preset_names() { return {"frechet-ma1", "pareto-iid"}; }

Config Config::preset(const std::string& name) {
  Config c;
  if (name == "frechet-ma1") {
    c.merge_text(
        "innovation.dim = 2\n"
        "innovation.alpha = 1\n"
        "innovation.marginal = frechet\n"
        "coefficient.kind = deterministic\n"
        "coefficient.matrices = [[[1,1],[0,0]],[[0,0],[1,1]]]\n"
        "experiment.normalizer = coordinate\n"
        "experiment.target_mass = 0.5\n"
        "experiment.replications = 2000\n"
        "experiment.statistics = oscillation, event-frequencies\n"
        "experiment.epsilon = 8\n",
        "preset frechet-ma1");
  } else if (name == "pareto-iid") {
    c.merge_text(
        "innovation.dim = 1\n"
        "innovation.alpha = 1\n"
        "innovation.marginal = pareto\n"
        "coefficient.kind = deterministic\n"
        "coefficient.matrices = [[[1]]]\n"
        "experiment.normalizer = norm\n"
        "experiment.target_mass = 1\n"
        "experiment.replications = 1000\n"
        "experiment.statistics = ks-marginal\n",
        "preset pareto-iid");
  } else {
    throw ConfigError("unknown preset '" + name + "'");
  }
  return c;
}

void Config::merge_text(std::string_view text, const std::string& origin) {
  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    const std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++lineno;
    const std::string s = trim(line);
    if (s.empty() || s.front() == '#') continue;
    const auto eq = s.find('=');
    if (eq == std::string::npos)
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected 'key = value'");
    set(trim(s.substr(0, eq)), trim(s.substr(eq + 1)));
  }
}

void Config::merge_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  merge_text(ss.str(), path);
}

void Config::set(const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) throw ConfigError("override '" + assignment + "' is not key=value");
  set(trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)));
}

void Config::set(const std::string& key, const std::string& value) {
  if (!values_.contains(key)) throw ConfigError("unknown config key '" + key + "'");
  values_[key] = value;
}

const std::string& Config::get(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) throw ConfigError("unknown config key '" + key + "'");
  return it->second;
}

std::vector<std::pair<std::string, std::string>> Config::echo() const {
  return {values_.begin(), values_.end()};
}

Scenario Config::scenario() const {
  Scenario s;
  InnovationModel& im = s.innovations;
  im.dim = as_u64("innovation.dim", get("innovation.dim"));
  im.alpha = as_double("innovation.alpha", get("innovation.alpha"));
  const std::string& marginal = get("innovation.marginal");
  if (marginal == "frechet") im.marginal = Marginal::Frechet;
  else if (marginal == "pareto") im.marginal = Marginal::Pareto;
  else if (marginal == "two-sided-pareto") im.marginal = Marginal::TwoSidedPareto;
  else bad_value("innovation.marginal", marginal, "expected frechet, pareto or two-sided-pareto");
  im.scale = as_double("innovation.scale", get("innovation.scale"));
  im.tail_balance = as_double("innovation.tail_balance", get("innovation.tail_balance"));
  const std::string& dep = get("innovation.dependence");
  if (dep == "iid") im.dependence = Dependence::Iid;
  else if (dep == "m-dependent") im.dependence = Dependence::MDependentLightNoise;
  else bad_value("innovation.dependence", dep, "expected iid or m-dependent");
  im.m = as_u64("innovation.m", get("innovation.m"));
  im.noise_scale = as_double("innovation.noise_scale", get("innovation.noise_scale"));

  const std::string& kind = get("coefficient.kind");
  if (kind == "deterministic") {
    s.coefficients = CoefficientModel::deterministic(matrices("coefficient.matrices", get("coefficient.matrices")));
  } else if (kind == "uniform-random") {
    s.coefficients = CoefficientModel::uniform_random(matrices("coefficient.lower", get("coefficient.lower")),
                                                      matrices("coefficient.upper", get("coefficient.upper")));
  } else if (kind == "geometric") {
    const std::string& base = get("coefficient.base");
    s.coefficients = CoefficientModel::geometric_decay(
        as_double("coefficient.rho", get("coefficient.rho")),
        matrix_from_json("coefficient.base", base, as_json("coefficient.base", base)),
        as_u64("coefficient.truncation_order", get("coefficient.truncation_order")));
  } else {
    bad_value("coefficient.kind", kind, "expected deterministic, uniform-random or geometric");
  }

  const std::string& basis = get("experiment.normalizer");
  if (basis == "norm") s.basis = NormalizerBasis::Norm;
  else if (basis == "coordinate") s.basis = NormalizerBasis::Coordinate;
  else bad_value("experiment.normalizer", basis, "expected norm or coordinate");
  s.target_mass = as_double("experiment.target_mass", get("experiment.target_mass"));
  if (!(s.target_mass > 0.0)) bad_value("experiment.target_mass", get("experiment.target_mass"), "must be positive");
  if (!get("experiment.fixed_an").empty())
    s.fixed_normalizer = as_double("experiment.fixed_an", get("experiment.fixed_an"));

  try {
    s.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return s;
}

ExperimentPlan Config::plan() const {
  ExperimentPlan p;
  p.scenario = scenario();
  for (auto n : integer_list("experiment.n_grid", get("experiment.n_grid"))) p.n_grid.push_back(n);
  p.replications = as_u64("experiment.replications", get("experiment.replications"));
  p.master_seed = as_u64("experiment.seed", get("experiment.seed"));
  for (const auto& w : word_list(get("experiment.statistics"))) {
    try {
      p.statistics.push_back(parse_statistic(w));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("experiment.statistics: ") + e.what());
    }
  }
  p.t = as_double("experiment.t", get("experiment.t"));
  for (auto k : integer_list("experiment.components", get("experiment.components"))) {
    if (k == 0) bad_value("experiment.components", get("experiment.components"), "components are 1-based");
    p.components.push_back(k - 1);
  }
  p.delta = as_double("experiment.delta", get("experiment.delta"));
  p.epsilon = as_double("experiment.epsilon", get("experiment.epsilon"));
  p.output_dir = output_dir();
  try {
    p.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return p;
}

std::string Config::output_dir() const {
  if (!get("output.dir").empty()) return get("output.dir");
  if (const char* env = std::getenv("HEAVYMAX_OUTPUT_DIR"); env && *env) return env;
  return "heavymax-out";
}

}  // namespace heavymax
