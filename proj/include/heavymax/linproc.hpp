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

#include "heavymax/innovations.hpp"

namespace heavymax {

/// Square d x d matrix, row-major.
struct Matrix {
  std::size_t dim = 0;
  std::vector<double> data;

  Matrix() = default;
  explicit Matrix(std::size_t d, double fill = 0.0) : dim(d), data(d * d, fill) {}
  Matrix(std::size_t d, std::vector<double> entries);

  static Matrix identity(std::size_t d, double diag = 1.0);

  double& operator()(std::size_t k, std::size_t j) { return data[k * dim + j]; }
  double operator()(std::size_t k, std::size_t j) const { return data[k * dim + j]; }

  /// Max row-sum norm max_k sum_j |C_kj|.
  double operator_norm() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;
};

struct FiniteDeterministic {
  std::vector<Matrix> coefficients;  // C_0..C_m
};

/// Entries drawn independently, C_{i;k,j} ~ Uniform[lower, upper], once per path.
struct FiniteRandom {
  std::vector<Matrix> lower;
  std::vector<Matrix> upper;
};

/// C_j = rho^j B for j >= 0, |rho| < 1, simulated through a truncation of order m.
struct InfiniteGeometric {
  double rho = 0.5;
  Matrix base;
  std::size_t truncation_order = 20;
};

struct CoefficientModel {
  enum class Kind { FiniteDeterministic, FiniteRandom, InfiniteGeometric };

  Kind kind = Kind::FiniteDeterministic;
  FiniteDeterministic finite;
  FiniteRandom random;
  InfiniteGeometric geometric;

  static CoefficientModel deterministic(std::vector<Matrix> coefficients);
  static CoefficientModel uniform_random(std::vector<Matrix> lower, std::vector<Matrix> upper);
  static CoefficientModel geometric_decay(double rho, Matrix base, std::size_t truncation_order);

  std::size_t dim() const;
  /// Number of lags m of the simulated (possibly truncated) filter.
  std::size_t order() const;
  bool is_random() const noexcept { return kind == Kind::FiniteRandom; }

  void validate() const;
};

/// Decay profile of ||C_j|| used for the series conditions.
struct NormDecay {
  enum class Kind { Finite, Geometric, PowerLaw };
  Kind kind = Kind::Finite;
  double rate = 0.0;  // |rho| for Geometric, exponent beta for ||C_j|| ~ j^-beta
  double scale = 1.0;
};

struct MomentReport {
  bool summable_below_alpha = false;  // sum E||C_j||^delta < inf for some delta < min(alpha,1)
  bool summable_above_alpha = false;  // alpha < 1: sum E||C_j||^gamma < inf for some gamma in (alpha,1)
  bool summable_norms = false;        // alpha >= 1: sum E||C_j|| < inf
  bool above_alpha_applicable = false;
  bool norms_applicable = false;
  std::optional<double> delta;  // witness
  std::optional<double> gamma;  // witness
  bool all_hold() const;
};

MomentReport check_series_conditions(const NormDecay& decay, double alpha);
MomentReport validate_moments(const CoefficientModel& model, double alpha);

/// Entrywise sup of positive and negative parts of the coefficients.
struct CoefficientExtremes {
  Matrix plus;
  Matrix minus;
  double max = 0.0;  // largest entry of plus and minus

  friend bool operator==(const CoefficientExtremes&, const CoefficientExtremes&) = default;
};

CoefficientExtremes extremes(std::span<const Matrix> coefficients);
/// Deterministic models only; geometric models in closed form over all j >= 0.
CoefficientExtremes extremes(const CoefficientModel& model);

/**
 * Finite model of order m: C_0..C_{m-2} followed by the entrywise sup and
 * inf of {C_i : i >= m-1}. Throws std::invalid_argument for m < 2 or a
 * non-geometric model.
 */
CoefficientModel truncate(const CoefficientModel& model, std::size_t m);

/// Realized coefficient list C_0..C_m (random kinds drawn from the seed).
std::vector<Matrix> realize(const CoefficientModel& model, std::uint64_t seed);

/// X_i = sum_j C_j Z_{i-j} for i = 1..n; row-major n x d. The window must
/// cover indices 1 - m .. n.
std::vector<double> generate_path(std::span<const Matrix> coefficients,
                                  const InnovationWindow& window, std::size_t n);

}  // namespace heavymax
