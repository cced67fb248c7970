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
#include <vector>

#include "heavymax/innovations.hpp"
#include "heavymax/linproc.hpp"
#include "heavymax/step_path.hpp"

namespace heavymax {

/// Innovation law, coefficient model and the normalization of a_n.
struct Scenario {
  InnovationModel innovations;
  CoefficientModel coefficients;
  NormalizerBasis basis = NormalizerBasis::Norm;
  double target_mass = 1.0;
  std::optional<double> fixed_normalizer;  // overrides the computed a_n

  void validate() const;
};

struct SeedPair {
  std::uint64_t innovations = 0;
  std::uint64_t coefficients = 0;
};

/// One realized sample: innovations on the burn-in window, coefficients,
/// X_1..X_n and a_n.
struct Realization {
  std::size_t n = 0;
  double an = 1.0;
  InnovationWindow z;
  std::vector<Matrix> coefficients;
  CoefficientExtremes extremes;
  std::vector<double> x;  // row-major n x d
  SeedPair seeds;

  std::size_t dim() const noexcept { return z.dim; }
};

/// a_n for the scenario at sample size n.
double scenario_normalizer(const Scenario& scenario, std::size_t n);

Realization realize_sample(const Scenario& scenario, std::size_t n, SeedPair seeds);

/// Partial maxima M_n(t) = a_n^{-1} max_{i <= floor(nt)} X_i (X_1/a_n for t < 1/n).
StepPath build_mn(const Realization& r);

/// Coupled process W_n built from the same Z and coefficient extremes:
/// component k is a_n^{-1} max_{i <= floor(nt)} max_j (D+^{kj} Z_i^{(j)+} + D-^{kj} Z_i^{(j)-});
/// the i = 1 term is used for t < 1/n.
StepPath build_wn(const Realization& r);

/// V_n = M_n^{(1)} - M_n^{(2)} for a two-dimensional M_n.
StepPath build_vn(const StepPath& mn);

struct MaximaPair {
  StepPath mn;
  StepPath wn;
  std::size_t n;
  double an;
  SeedPair seeds;
};

MaximaPair build_pair(const Scenario& scenario, std::size_t n, SeedPair seeds);

}  // namespace heavymax
