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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "heavymax/rng.hpp"

namespace heavymax {

enum class Marginal {
  Frechet,          // P(Z <= x) = exp(-x^-alpha), x > 0; unit Frechet at alpha = 1
  Pareto,           // P(Z > x) = (x/scale)^-alpha, x >= scale
  TwoSidedPareto,   // |Z| ~ Pareto(alpha, 1), sign + with probability p
};

enum class Dependence {
  Iid,
  // Heavy i.i.d. part plus a moving average of uniform[-s, s] noise over
  // m + 1 consecutive indices: exactly m-dependent.
  MDependentLightNoise,
};

/// Strictly stationary regularly varying R^d innovations with independent
/// components.
struct InnovationModel {
  std::size_t dim = 1;
  double alpha = 1.0;
  Marginal marginal = Marginal::Frechet;
  double scale = 1.0;         // Pareto
  double tail_balance = 1.0;  // p for TwoSidedPareto; q = 1 - p
  Dependence dependence = Dependence::Iid;
  std::size_t m = 1;
  double noise_scale = 0.0;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
};

/// Rows of an innovation sequence; row r holds Z_{first_index + r}.
struct InnovationWindow {
  std::size_t dim = 1;
  long first_index = 1;
  std::vector<double> data;

  std::size_t rows() const noexcept { return dim ? data.size() / dim : 0; }
  std::span<const double> at(long index) const;
};

/// Draws `count` consecutive innovations Z_{first_index}, ...; deterministic in seed.
InnovationWindow sample_window(const InnovationModel& model, std::size_t count, std::uint64_t seed,
                               long first_index = 1);

/// Convenience: Z_1..Z_n as a flat row-major vector.
std::vector<double> sample_sequence(const InnovationModel& model, std::size_t n, std::uint64_t seed);

/// P(|Z^{(j)}| > x) of one component's heavy part.
double component_tail(const InnovationModel& model, double x);
/// Closed-form CDF of one component's heavy part.
double marginal_cdf(const InnovationModel& model, double x);

enum class NormalizerBasis {
  Norm,        // n P(||Z_1|| > a_n) = c, max-norm
  Coordinate,  // n P(|Z_1^{(1)}| > a_n) = c
};

/**
 * Exact finite-n normalizing constant. For m-dependent noise models the
 * heavy part is used (bounded noise does not change the tail asymptotically).
 * Throws std::invalid_argument if c/n >= 1 or n < 2.
 */
double normalizer(const InnovationModel& model, std::size_t n, double target_mass,
                  NormalizerBasis basis = NormalizerBasis::Norm);

struct SpectralAtom {
  std::vector<double> direction;  // max-norm 1
  double probability;
};

struct SpectralEstimate {
  std::vector<SpectralAtom> atoms;
  std::vector<double> p_plus;   // P(Q = +e_j)
  std::vector<double> p_minus;  // P(Q = -e_j)
  double threshold_quantile = 0.0;
  double threshold = 0.0;
  std::size_t samples = 0;
  std::size_t exceedances = 0;
};

inline constexpr double kAxisTolerance = 0.05;
inline constexpr std::size_t kMinExceedances = 500;

/// Empirical law of Z/||Z|| above the u-quantile of ||Z||, clustered onto
/// signed axes; directions farther than kAxisTolerance from every axis stay
/// as individual atoms.
SpectralEstimate estimate_spectral(const InnovationModel& model, double quantile,
                                   std::size_t samples, std::uint64_t seed);

/// Empirical quantile of ||Z|| over `samples` draws.
double norm_quantile(const InnovationModel& model, double quantile, std::size_t samples,
                     std::uint64_t seed);

struct ProportionEstimate {
  std::optional<double> value;  // missing when the conditioning event never occurs
  std::size_t events = 0;
  std::size_t trials = 0;
  double ci_low = 0.0;
  double ci_high = 0.0;
};

struct LagDiagnostic {
  long lag;
  double level;
  ProportionEstimate ratio;  // P(||Z_i||>x, ||Z_{i+lag}||>x) / P(||Z_i||>x)
};

struct ComponentDiagnostic {
  std::size_t given;   // conditioning component
  std::size_t target;
  double level;
  ProportionEstimate ratio;  // P(|Z^{(target)}|>x | |Z^{(given)}|>x)
};

struct IndependenceReport {
  std::vector<LagDiagnostic> lags;
  std::vector<ComponentDiagnostic> components;
};

IndependenceReport diagnose_asymptotic_independence(const InnovationModel& model,
                                                    std::span<const double> levels,
                                                    std::span<const long> lags, std::uint64_t seed,
                                                    std::size_t samples);

/// Conditional exceedance P(||Z_lag|| > u a_n | ||Z_0|| > a_n) for the tail
/// process check.
ProportionEstimate tail_process_exceedance(const InnovationModel& model, std::size_t n, double u,
                                           long lag, std::uint64_t seed, std::size_t samples);

enum class KaramataMode {
  BelowThreshold,  // n E[(|Z|/a_n)^gamma 1{|Z| <= a_n}] -> alpha/(gamma - alpha), gamma > alpha
  AboveThreshold,  // n E[(|Z|/a_n)^delta 1{|Z| > a_n}] -> alpha/(alpha - delta), delta < alpha
};

/// Monte Carlo truncated-moment estimate over `samples` draws of a d=1 i.i.d. model.
double karamata_diagnostic(const InnovationModel& model, KaramataMode mode, double exponent,
                           std::size_t n, std::size_t samples, std::uint64_t seed);

/// Wilson score interval for k successes in n trials.
std::pair<double, double> wilson_interval(std::size_t k, std::size_t n, double z = 1.96);

}  // namespace heavymax
