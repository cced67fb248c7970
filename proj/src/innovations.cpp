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

#include "heavymax/innovations.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>
#include <string>

namespace heavymax {

void InnovationModel::validate() const {
  if (dim == 0) throw std::invalid_argument("innovation.dim must be positive");
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw std::invalid_argument("innovation.alpha must be positive");
  if (marginal == Marginal::Pareto && !(scale > 0.0))
    throw std::invalid_argument("innovation.scale must be positive");
  if (marginal == Marginal::TwoSidedPareto && !(tail_balance >= 0.0 && tail_balance <= 1.0))
    throw std::invalid_argument("innovation.tail_balance must lie in [0,1]");
  if (dependence == Dependence::MDependentLightNoise) {
    if (m < 1) throw std::invalid_argument("innovation.m must be at least 1");
    if (!(noise_scale >= 0.0)) throw std::invalid_argument("innovation.noise_scale must be >= 0");
  }
}

std::span<const double> InnovationWindow::at(long index) const {
  const long r = index - first_index;
  if (r < 0 || static_cast<std::size_t>(r) >= rows())
    throw std::out_of_range("InnovationWindow: index " + std::to_string(index) + " not covered");
  return {data.data() + static_cast<std::size_t>(r) * dim, dim};
}

namespace {

// |Z| of the heavy part from its tail probability v in (0,1).
double heavy_abs_from_tail(const InnovationModel& m, double v) {
  switch (m.marginal) {
    case Marginal::Frechet:
      return std::pow(-std::log1p(-v), -1.0 / m.alpha);
    case Marginal::Pareto:
      return m.scale * std::pow(v, -1.0 / m.alpha);
    case Marginal::TwoSidedPareto:
      return std::pow(v, -1.0 / m.alpha);
  }
  return 0.0;
}

double draw_heavy(const InnovationModel& m, Rng& rng) {
  const double x = heavy_abs_from_tail(m, rng.uniform_open());
  if (m.marginal == Marginal::TwoSidedPareto) return rng.uniform() < m.tail_balance ? x : -x;
  return x;
}

double max_norm(std::span<const double> z) {
  double r = 0.0;
  for (double v : z) r = std::max(r, std::abs(v));
  return r;
}

std::vector<double> row_norms(const InnovationWindow& w) {
  std::vector<double> out(w.rows());
  for (std::size_t r = 0; r < w.rows(); ++r)
    out[r] = max_norm(std::span<const double>(w.data).subspan(r * w.dim, w.dim));
  return out;
}

}  // namespace

InnovationWindow sample_window(const InnovationModel& model, std::size_t count, std::uint64_t seed,
                               long first_index) {
  model.validate();
  if (count == 0) throw std::invalid_argument("sample_window: count must be positive");
  const std::size_t d = model.dim;
  Rng rng(seed);
  InnovationWindow w{d, first_index, std::vector<double>(count * d)};
  for (double& z : w.data) z = draw_heavy(model, rng);

  if (model.dependence == Dependence::MDependentLightNoise && model.noise_scale > 0.0) {
    const std::size_t m = model.m;
    std::vector<double> noise((count + m) * d);
    for (double& e : noise) e = model.noise_scale * (2.0 * rng.uniform() - 1.0);
    const double weight = 1.0 / static_cast<double>(m + 1);
    for (std::size_t r = 0; r < count; ++r) {
      for (std::size_t c = 0; c < d; ++c) {
        double s = 0.0;
        // noise row r + m corresponds to index first_index + r
        for (std::size_t l = 0; l <= m; ++l) s += noise[(r + m - l) * d + c];
        w.data[r * d + c] += weight * s;
      }
    }
  }
  return w;
}

std::vector<double> sample_sequence(const InnovationModel& model, std::size_t n, std::uint64_t seed) {
  return sample_window(model, n, seed, 1).data;
}

double component_tail(const InnovationModel& model, double x) {
  const double a = model.alpha;
  switch (model.marginal) {
    case Marginal::Frechet:
      return x <= 0.0 ? 1.0 : -std::expm1(-std::pow(x, -a));
    case Marginal::Pareto:
      return x < model.scale ? 1.0 : std::pow(x / model.scale, -a);
    case Marginal::TwoSidedPareto:
      return x < 1.0 ? 1.0 : std::pow(x, -a);
  }
  return 0.0;
}

double marginal_cdf(const InnovationModel& model, double x) {
  switch (model.marginal) {
    case Marginal::Frechet:
    case Marginal::Pareto:
      return 1.0 - component_tail(model, x);
    case Marginal::TwoSidedPareto: {
      const double p = model.tail_balance;
      if (x <= -1.0) return (1.0 - p) * std::pow(-x, -model.alpha);
      if (x < 1.0) return 1.0 - p;
      return 1.0 - p * std::pow(x, -model.alpha);
    }
  }
  return 0.0;
}

double normalizer(const InnovationModel& model, std::size_t n, double target_mass,
                  NormalizerBasis basis) {
  model.validate();
  if (n < 2) throw std::invalid_argument("normalizer: n must be at least 2");
  const double dn = static_cast<double>(n);
  if (!(target_mass > 0.0) || !(target_mass / dn < 1.0))
    throw std::invalid_argument("normalizer: need 0 < c/n < 1");

  // Per-coordinate tail probability p, and 1/p computed without extra rounding
  // when the equation is already per-coordinate.
  double p = target_mass / dn;
  double inv_p = dn / target_mass;
  if (basis == NormalizerBasis::Norm && model.dim > 1) {
    p = -std::expm1(std::log1p(-target_mass / dn) / static_cast<double>(model.dim));
    inv_p = 1.0 / p;
  }
  switch (model.marginal) {
    case Marginal::Frechet:
      return std::pow(-std::log1p(-p), -1.0 / model.alpha);
    case Marginal::Pareto:
      return model.scale * std::pow(inv_p, 1.0 / model.alpha);
    case Marginal::TwoSidedPareto:
      return std::pow(inv_p, 1.0 / model.alpha);
  }
  return 0.0;
}

double norm_quantile(const InnovationModel& model, double quantile, std::size_t samples,
                     std::uint64_t seed) {
  if (!(quantile > 0.0 && quantile < 1.0))
    throw std::invalid_argument("norm_quantile: quantile must lie in (0,1)");
  auto norms = row_norms(sample_window(model, samples, seed));
  const auto k = static_cast<std::size_t>(quantile * static_cast<double>(norms.size()));
  std::nth_element(norms.begin(), norms.begin() + static_cast<std::ptrdiff_t>(k), norms.end());
  return norms[k];
}

SpectralEstimate estimate_spectral(const InnovationModel& model, double quantile,
                                   std::size_t samples, std::uint64_t seed) {
  if (!(quantile > 0.9 && quantile < 1.0))
    throw std::invalid_argument("estimate_spectral: quantile must lie in (0.9, 1)");
  const auto w = sample_window(model, samples, seed);
  const std::size_t d = model.dim;
  auto norms = row_norms(w);

  auto sorted = norms;
  const auto k = static_cast<std::size_t>(quantile * static_cast<double>(samples));
  std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(k), sorted.end());

  SpectralEstimate est;
  est.threshold_quantile = quantile;
  est.threshold = sorted[k];
  est.samples = samples;
  est.p_plus.assign(d, 0.0);
  est.p_minus.assign(d, 0.0);

  std::vector<std::size_t> plus(d, 0), minus(d, 0);
  std::vector<std::vector<double>> off_axis;
  for (std::size_t r = 0; r < w.rows(); ++r) {
    if (!(norms[r] > est.threshold)) continue;
    ++est.exceedances;
    std::vector<double> dir(d);
    std::size_t axis = 0;
    for (std::size_t c = 0; c < d; ++c) {
      dir[c] = w.data[r * d + c] / norms[r];
      if (std::abs(dir[c]) > std::abs(dir[axis])) axis = c;
    }
    bool on_axis = true;
    for (std::size_t c = 0; c < d; ++c) {
      if (c != axis && std::abs(dir[c]) > kAxisTolerance) on_axis = false;
    }
    if (!on_axis) off_axis.push_back(std::move(dir));
    else if (dir[axis] > 0.0) ++plus[axis];
    else ++minus[axis];
  }
  if (est.exceedances < kMinExceedances)
    throw std::runtime_error("estimate_spectral: only " + std::to_string(est.exceedances) +
                             " exceedances (need " + std::to_string(kMinExceedances) + ")");

  const double total = static_cast<double>(est.exceedances);
  for (std::size_t c = 0; c < d; ++c) {
    est.p_plus[c] = static_cast<double>(plus[c]) / total;
    est.p_minus[c] = static_cast<double>(minus[c]) / total;
    for (int sign : {+1, -1}) {
      const std::size_t count = sign > 0 ? plus[c] : minus[c];
      if (count == 0) continue;
      std::vector<double> e(d, 0.0);
      e[c] = sign;
      est.atoms.push_back({std::move(e), static_cast<double>(count) / total});
    }
  }
  for (auto& dir : off_axis) est.atoms.push_back({std::move(dir), 1.0 / total});
  return est;
}

std::pair<double, double> wilson_interval(std::size_t k, std::size_t n, double z) {
  if (n == 0) return {0.0, 1.0};
  const double dn = static_cast<double>(n);
  const double ph = static_cast<double>(k) / dn;
  const double z2 = z * z;
  const double centre = (ph + z2 / (2.0 * dn)) / (1.0 + z2 / dn);
  const double half = z * std::sqrt(ph * (1.0 - ph) / dn + z2 / (4.0 * dn * dn)) / (1.0 + z2 / dn);
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

namespace {

ProportionEstimate proportion(std::size_t events, std::size_t trials) {
  ProportionEstimate p;
  p.events = events;
  p.trials = trials;
  if (trials > 0) {
    p.value = static_cast<double>(events) / static_cast<double>(trials);
    std::tie(p.ci_low, p.ci_high) = wilson_interval(events, trials);
  } else {
    p.ci_high = 1.0;
  }
  return p;
}

}  // namespace

IndependenceReport diagnose_asymptotic_independence(const InnovationModel& model,
                                                    std::span<const double> levels,
                                                    std::span<const long> lags, std::uint64_t seed,
                                                    std::size_t samples) {
  for (long h : lags) {
    if (h == 0) throw std::invalid_argument("diagnose_asymptotic_independence: lags must be nonzero");
  }
  for (std::size_t i = 1; i < levels.size(); ++i) {
    if (!(levels[i] > levels[i - 1]))
      throw std::invalid_argument("diagnose_asymptotic_independence: levels must increase");
  }
  long max_lag = 0;
  for (long h : lags) max_lag = std::max(max_lag, std::abs(h));
  const auto w = sample_window(model, samples + static_cast<std::size_t>(max_lag), seed);
  const auto norms = row_norms(w);
  const std::size_t d = model.dim;

  IndependenceReport rep;
  for (double x : levels) {
    for (long h : lags) {
      std::size_t first = 0, both = 0;
      for (std::size_t i = 0; i < samples; ++i) {
        // for negative lags shift the base so both indices stay in range
        const std::size_t a = h > 0 ? i : i + static_cast<std::size_t>(-h);
        const std::size_t b = static_cast<std::size_t>(static_cast<long>(a) + h);
        if (norms[a] > x) {
          ++first;
          if (norms[b] > x) ++both;
        }
      }
      rep.lags.push_back({h, x, proportion(both, first)});
    }
    for (std::size_t g = 0; g < d; ++g) {
      for (std::size_t t = 0; t < d; ++t) {
        if (g == t) continue;
        std::size_t given = 0, both = 0;
        for (std::size_t i = 0; i < samples; ++i) {
          if (std::abs(w.data[i * d + g]) > x) {
            ++given;
            if (std::abs(w.data[i * d + t]) > x) ++both;
          }
        }
        rep.components.push_back({g, t, x, proportion(both, given)});
      }
    }
  }
  return rep;
}

ProportionEstimate tail_process_exceedance(const InnovationModel& model, std::size_t n, double u,
                                           long lag, std::uint64_t seed, std::size_t samples) {
  if (lag == 0) throw std::invalid_argument("tail_process_exceedance: lag must be nonzero");
  const double an = normalizer(model, n, 1.0);
  const auto w = sample_window(model, samples + static_cast<std::size_t>(std::abs(lag)), seed);
  const auto norms = row_norms(w);
  std::size_t given = 0, hit = 0;
  for (std::size_t i = 0; i < samples; ++i) {
    const std::size_t a = lag > 0 ? i : i + static_cast<std::size_t>(-lag);
    const std::size_t b = static_cast<std::size_t>(static_cast<long>(a) + lag);
    if (norms[a] > an) {
      ++given;
      if (norms[b] > u * an) ++hit;
    }
  }
  return proportion(hit, given);
}

double karamata_diagnostic(const InnovationModel& model, KaramataMode mode, double exponent,
                           std::size_t n, std::size_t samples, std::uint64_t seed) {
  model.validate();
  if (model.dim != 1 || model.dependence != Dependence::Iid)
    throw std::invalid_argument("karamata_diagnostic: d=1 i.i.d. model required");
  if (mode == KaramataMode::BelowThreshold && !(exponent > model.alpha))
    throw std::invalid_argument("karamata_diagnostic: gamma must exceed alpha");
  if (mode == KaramataMode::AboveThreshold && !(exponent < model.alpha))
    throw std::invalid_argument("karamata_diagnostic: delta must be below alpha");
  if (samples == 0) throw std::invalid_argument("karamata_diagnostic: samples must be positive");

  const double an = normalizer(model, n, 1.0);
  Rng rng(seed);
  double sum = 0.0;
  if (mode == KaramataMode::BelowThreshold) {
    for (std::size_t i = 0; i < samples; ++i) {
      const double z = heavy_abs_from_tail(model, rng.uniform_open());
      if (z <= an) sum += std::pow(z / an, exponent);
    }
  } else {
    // |Z| > a_n only when the tail draw is below P(|Z| > a_n); skip the
    // inversion otherwise. The margin absorbs rounding at the boundary.
    const double cutoff = component_tail(model, an) * (1.0 + 1e-9);
    for (std::size_t i = 0; i < samples; ++i) {
      const double v = rng.uniform_open();
      if (v >= cutoff) continue;
      const double z = heavy_abs_from_tail(model, v);
      if (z > an) sum += std::pow(z / an, exponent);
    }
  }
  return static_cast<double>(n) * sum / static_cast<double>(samples);
}

}  // namespace heavymax
