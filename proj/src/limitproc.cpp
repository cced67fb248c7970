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

#include "heavymax/limitproc.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include "heavymax/rng.hpp"

namespace heavymax {

void LimitSpec::validate() const {
  if (!(alpha > 0.0)) throw std::invalid_argument("LimitSpec: alpha must be positive");
  if (theta != 1.0) throw std::invalid_argument("LimitSpec: extremal index must be 1");
  if (!(intensity > 0.0)) throw std::invalid_argument("LimitSpec: intensity must be positive");
  if (p_plus.empty() || p_plus.size() != p_minus.size())
    throw std::invalid_argument("LimitSpec: one p+ and one p- per axis required");
  double total = 0.0;
  for (std::size_t j = 0; j < p_plus.size(); ++j) {
    if (p_plus[j] < 0.0 || p_minus[j] < 0.0)
      throw std::invalid_argument("LimitSpec: atom probabilities must be non-negative");
    total += p_plus[j] + p_minus[j];
  }
  if (std::abs(total - 1.0) > 1e-9) throw std::invalid_argument("LimitSpec: atoms must sum to 1");
  if (fixed_extremes.has_value() == random_coefficients.has_value())
    throw std::invalid_argument("LimitSpec: exactly one of fixed or random extremes required");
  const std::size_t d = fixed_extremes ? fixed_extremes->plus.dim : random_coefficients->dim();
  if (d != p_plus.size()) throw std::invalid_argument("LimitSpec: extremes dimension mismatch");
}

LimitSpec limit_spec_for(const Scenario& scenario) {
  scenario.validate();
  const InnovationModel& im = scenario.innovations;
  const std::size_t d = im.dim;
  const double share = 1.0 / static_cast<double>(d);
  const double up = im.marginal == Marginal::TwoSidedPareto ? im.tail_balance : 1.0;

  LimitSpec spec;
  spec.alpha = im.alpha;
  spec.p_plus.assign(d, share * up);
  spec.p_minus.assign(d, share * (1.0 - up));
  if (scenario.coefficients.is_random()) spec.random_coefficients = scenario.coefficients;
  else spec.fixed_extremes = extremes(scenario.coefficients);
  if (scenario.fixed_normalizer) spec.intensity = 1.0;
  else if (scenario.basis == NormalizerBasis::Coordinate)
    spec.intensity = static_cast<double>(d) * scenario.target_mass;
  else spec.intensity = scenario.target_mass;
  return spec;
}

ExponentScalars exponent_scalars(const LimitSpec& spec) {
  spec.validate();
  if (!spec.fixed_extremes)
    throw std::invalid_argument("exponent_scalars: deterministic extremes required");
  const auto& e = *spec.fixed_extremes;
  const std::size_t d = spec.dim();
  ExponentScalars out{spec.p_plus, spec.p_minus, std::vector<double>(d, 0.0)};
  for (std::size_t k = 0; k < d; ++k) {
    for (std::size_t j = 0; j < d; ++j) {
      out.s_alpha[k] += spec.p_plus[j] * std::pow(e.plus(k, j), spec.alpha) +
                        spec.p_minus[j] * std::pow(e.minus(k, j), spec.alpha);
    }
  }
  return out;
}

ExponentScalars exponent_scalars_mc(double alpha, const CoefficientExtremes& ext,
                                    std::span<const double> q, std::size_t dim) {
  if (dim == 0 || q.empty() || q.size() % dim != 0 || ext.plus.dim != dim)
    throw std::invalid_argument("exponent_scalars_mc: bad direction sample");
  const std::size_t count = q.size() / dim;
  ExponentScalars out{std::vector<double>(dim, 0.0), std::vector<double>(dim, 0.0),
                      std::vector<double>(dim, 0.0)};
  for (std::size_t r = 0; r < count; ++r) {
    const auto row = q.subspan(r * dim, dim);
    for (std::size_t j = 0; j < dim; ++j) {
      if (row[j] > 0.0) out.q_plus[j] += std::pow(row[j], alpha);
      if (row[j] < 0.0) out.q_minus[j] += std::pow(-row[j], alpha);
    }
    for (std::size_t k = 0; k < dim; ++k) {
      double s = 0.0;
      for (std::size_t j = 0; j < dim; ++j) {
        const double pos = row[j] > 0.0 ? row[j] : 0.0;
        const double neg = row[j] < 0.0 ? -row[j] : 0.0;
        s = std::max({s, ext.plus(k, j) * pos, ext.minus(k, j) * neg});
      }
      out.s_alpha[k] += std::pow(s, alpha);
    }
  }
  const double inv = 1.0 / static_cast<double>(count);
  for (auto* v : {&out.q_plus, &out.q_minus, &out.s_alpha}) {
    for (double& x : *v) x *= inv;
  }
  return out;
}

namespace {

// Index into the 2d signed axes (2j: +e_j, 2j+1: -e_j).
std::size_t draw_axis(const LimitSpec& spec, Rng& rng) {
  const double u = rng.uniform();
  double acc = 0.0;
  std::size_t last = 0;
  for (std::size_t j = 0; j < spec.dim(); ++j) {
    for (std::size_t s = 0; s < 2; ++s) {
      const double p = s == 0 ? spec.p_plus[j] : spec.p_minus[j];
      if (p <= 0.0) continue;
      last = 2 * j + s;
      acc += p;
      if (u < acc) return last;
    }
  }
  return last;
}

}  // namespace

std::vector<double> sample_directions(const LimitSpec& spec, std::size_t count, std::uint64_t seed) {
  spec.validate();
  Rng rng(seed);
  const std::size_t d = spec.dim();
  std::vector<double> q(count * d, 0.0);
  for (std::size_t r = 0; r < count; ++r) {
    const std::size_t a = draw_axis(spec, rng);
    q[r * d + a / 2] = (a % 2 == 0) ? 1.0 : -1.0;
  }
  return q;
}

PointMeasure sample_poisson_marks(const LimitSpec& spec, double floor, std::uint64_t seed) {
  spec.validate();
  if (!(floor > 0.0) || !std::isfinite(floor))
    throw std::invalid_argument("sample_poisson_marks: floor must be positive");
  Rng rng(seed);
  const double mean = spec.intensity * std::pow(floor, -spec.alpha);
  std::poisson_distribution<long> count_dist(mean);
  const long count = count_dist(rng.engine());

  const std::size_t d = spec.dim();
  PointMeasure pm{d, {}};
  pm.points.reserve(static_cast<std::size_t>(count));
  for (long i = 0; i < count; ++i) {
    const double t = rng.uniform_open();
    const double p = floor * std::pow(rng.uniform_open(), -1.0 / spec.alpha);
    const std::size_t a = draw_axis(spec, rng);
    std::vector<double> x(d, 0.0);
    x[a / 2] = (a % 2 == 0) ? p : -p;
    pm.points.push_back({t, std::move(x)});
  }
  return pm;
}

StepPath extremal_path(const PointMeasure& measure) {
  for (const auto& p : measure.points) {
    for (double v : p.x) {
      if (v < 0.0) throw std::invalid_argument("extremal_path: marks must be non-negative");
    }
  }
  const std::size_t d = measure.dim;
  const StepPath phi = max_functional(measure);
  return map_values(phi, d, [d](std::span<const double> in, std::span<double> out) {
           for (std::size_t j = 0; j < d; ++j) out[j] = in[2 * j];
         }).normalize();
}

LimitSample sample_limit_path(const LimitSpec& spec, double floor, LimitSeeds seeds) {
  spec.validate();
  const CoefficientExtremes ext = spec.fixed_extremes
                                      ? *spec.fixed_extremes
                                      : extremes(realize(*spec.random_coefficients, seeds.coefficients));
  const PointMeasure pm = sample_poisson_marks(spec, floor, seeds.poisson);
  const std::size_t d = spec.dim();
  const StepPath phi = max_functional(pm);
  StepPath m = map_values(phi, d, [&ext, d](std::span<const double> in, std::span<double> out) {
    for (std::size_t k = 0; k < d; ++k) {
      double v = 0.0;
      for (std::size_t j = 0; j < d; ++j)
        v = std::max({v, ext.plus(k, j) * in[2 * j], ext.minus(k, j) * in[2 * j + 1]});
      out[k] = v;
    }
  });
  return {m.normalize(), ext, floor * ext.max};
}

double default_floor(const LimitSpec& spec) {
  spec.validate();
  double scale = std::pow(spec.intensity, 1.0 / spec.alpha);
  if (spec.fixed_extremes) {
    scale = 0.0;
    for (double s : exponent_scalars(spec).s_alpha)
      scale = std::max(scale, std::pow(spec.intensity * s, 1.0 / spec.alpha));
    if (scale == 0.0) scale = 1.0;
  }
  return 1e-3 * scale;
}

double limit_marginal_cdf(const LimitSpec& spec, std::size_t k, double t, double x) {
  if (!(x > 0.0)) throw std::domain_error("limit_marginal_cdf: x must be positive");
  if (!(t > 0.0 && t <= 1.0)) throw std::domain_error("limit_marginal_cdf: t must lie in (0,1]");
  const ExponentScalars es = exponent_scalars(spec);
  if (k >= es.s_alpha.size()) throw std::out_of_range("limit_marginal_cdf: component out of range");
  return std::exp(-t * spec.intensity * es.s_alpha[k] * std::pow(x, -spec.alpha));
}

}  // namespace heavymax
