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

#include "heavymax/linproc.hpp"
#include "heavymax/maxima.hpp"
#include "heavymax/step_path.hpp"

namespace heavymax {

/**
 * Everything needed to simulate the limit of M_n: the tail index, the
 * signed-axis spectral atoms p_{j+-} = P(Q = +-e_j), and either fixed
 * coefficient extremes or a coefficient model whose extremes are redrawn
 * per path. The extremal index is 1 for the supported innovations.
 */
struct LimitSpec {
  double alpha = 1.0;
  std::vector<double> p_plus;
  std::vector<double> p_minus;
  std::optional<CoefficientExtremes> fixed_extremes;
  std::optional<CoefficientModel> random_coefficients;
  double theta = 1.0;
  // lim n P(||Z_1|| > a_n); scales the Poisson intensity
  double intensity = 1.0;

  std::size_t dim() const noexcept { return p_plus.size(); }
  void validate() const;
};

/// Limit spec of a scenario with closed-form atoms (independent components:
/// one-sided marginals put all mass on +e_j, two-sided ones split p, 1-p,
/// each axis weighted 1/d). The intensity follows from the normalization:
/// c for the norm basis, d c for the coordinate basis, 1 for a fixed a_n.
LimitSpec limit_spec_for(const Scenario& scenario);

struct ExponentScalars {
  std::vector<double> q_plus;   // E(Q^{(j)+})^alpha
  std::vector<double> q_minus;  // E(Q^{(j)-})^alpha
  std::vector<double> s_alpha;  // E(S^{(k)})^alpha
};

/// Closed form under signed-axis atoms with deterministic extremes:
/// E(S^{(k)})^alpha = sum_j p_{j+} (D+^{kj})^alpha + p_{j-} (D-^{kj})^alpha.
ExponentScalars exponent_scalars(const LimitSpec& spec);

/// Monte Carlo version over arbitrary direction samples (rows of `q`).
ExponentScalars exponent_scalars_mc(double alpha, const CoefficientExtremes& ext,
                                    std::span<const double> q, std::size_t dim);

/// Draws `count` directions Q from the spec's atoms (row-major).
std::vector<double> sample_directions(const LimitSpec& spec, std::size_t count, std::uint64_t seed);

/// Poisson process on [0,1] x R^d restricted to P > floor: K ~ Poisson(intensity floor^-alpha),
/// T uniform on (0,1), P = floor U^{-1/alpha}, mark P Q.
PointMeasure sample_poisson_marks(const LimitSpec& spec, double floor, std::uint64_t seed);

/// Running max over points with t_i <= t of non-negative marks.
StepPath extremal_path(const PointMeasure& measure);

struct LimitSample {
  StepPath path;
  CoefficientExtremes extremes;
  double error_budget;  // floor * Dmax
};

struct LimitSeeds {
  std::uint64_t poisson = 0;
  std::uint64_t coefficients = 0;
};

/// M(t)_k = max_j (D+^{kj} M^{(j+)}(t) v D-^{kj} M^{(j-)}(t)) built from one
/// Poisson draw and one (independent) draw of the extremes.
LimitSample sample_limit_path(const LimitSpec& spec, double floor, LimitSeeds seeds);

/// 1e-3 times the largest E(S^{(k)})^{1/alpha}.
double default_floor(const LimitSpec& spec);

/// P(M^{(k)}(t) <= x) = exp(-t intensity E(S^{(k)})^alpha x^{-alpha}); deterministic
/// extremes only.
double limit_marginal_cdf(const LimitSpec& spec, std::size_t k, double t, double x);

}  // namespace heavymax
