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
#include <functional>
#include <span>
#include <vector>

namespace heavymax {

/**
 * Piecewise-constant, right-continuous path [0,1] -> R^d with finitely many
 * jumps.
 *
 * Breakpoints 0 = t_0 < t_1 < ... < t_k <= 1; value(i) holds x(t) on
 * [t_i, t_{i+1}) and value(k) on [t_k, 1]. Breakpoint equality is exact
 * floating-point equality. Consecutive equal values are allowed; normalize()
 * removes them.
 */
class StepPath {
 public:
  /// values is row-major: (breakpoints.size()) rows of dim entries each.
  StepPath(std::size_t dim, std::vector<double> breakpoints, std::vector<double> values);

  static StepPath constant(std::vector<double> value);

  std::size_t dim() const noexcept { return dim_; }
  /// Number of constant pieces (k + 1).
  std::size_t pieces() const noexcept { return times_.size(); }

  const std::vector<double>& breakpoints() const noexcept { return times_; }
  const std::vector<double>& flat_values() const noexcept { return values_; }

  double time(std::size_t i) const { return times_[i]; }
  std::span<const double> value(std::size_t i) const {
    return {values_.data() + i * dim_, dim_};
  }
  double value(std::size_t i, std::size_t comp) const { return values_[i * dim_ + comp]; }

  /// Index of the piece containing t (largest i with t_i <= t).
  std::size_t piece_at(double t) const;

  std::vector<double> eval(double t) const;
  double eval(double t, std::size_t comp) const;
  /// x(t-); at t = 0 this is x(0).
  std::vector<double> left_limit(double t) const;

  StepPath normalize() const;
  StepPath component(std::size_t comp) const;
  StepPath scaled(double factor) const;

  /// Componentwise non-decreasing over all pieces with t_i >= from.
  bool is_nondecreasing(double from = 0.0) const;

  friend bool operator==(const StepPath&, const StepPath&) = default;

 private:
  std::size_t dim_;
  std::vector<double> times_;
  std::vector<double> values_;
};

/// One straight piece of a completed graph in R^{d+1}; coordinate 0 is time.
struct GraphSegment {
  std::vector<double> from;
  std::vector<double> to;
  bool is_jump = false;
};

/// Completed (thin) graph: horizontal pieces joined by straight jump pieces
/// {(t_i, l x(t_i-) + (1-l) x(t_i)) : l in [0,1]}.
struct ThinGraph {
  std::vector<GraphSegment> segments;
};

ThinGraph thin_graph(const StepPath& path);

struct PointAtom {
  double t;
  std::vector<double> x;
};

/// Finite point measure on [0,1] x R^d; duplicates allowed.
struct PointMeasure {
  std::size_t dim = 1;
  std::vector<PointAtom> points;
};

/**
 * Maximum functional. Component 2j is the running max of x^{(j)+} over
 * points with t_i <= t and component 2j+1 the running max of x^{(j)-}
 * (empty max = 0). With replicate = true the 2d block is repeated d times
 * (dimension 2d^2).
 */
StepPath max_functional(const PointMeasure& measure, bool replicate = false);

/// Repeats the components of path `times` times, in order.
StepPath replicate(const StepPath& path, std::size_t times);

/**
 * Partial-maxima path of rows X_1..X_n (row-major, dim columns) scaled by
 * 1/scale: x(t) = max_{i <= floor(nt)} X_i / scale for t >= 1/n and X_1/scale
 * before. Breakpoints sit at i/n only where the running max changes.
 */
StepPath running_max(std::span<const double> samples, std::size_t dim, double scale);

/// Pointwise reducer for combine().
struct Reducer {
  enum class Kind { Max, Difference, LinearCombination };
  Kind kind = Kind::Max;
  std::vector<double> weights;  // LinearCombination only

  static Reducer max() { return {Kind::Max, {}}; }
  static Reducer difference() { return {Kind::Difference, {}}; }
  static Reducer linear(std::vector<double> w) { return {Kind::LinearCombination, std::move(w)}; }
};

/// Pointwise combination on the union of breakpoints. Paths of dimension 1
/// broadcast against the common dimension. Difference takes exactly two
/// paths. Output may carry redundant breakpoints.
StepPath combine(std::span<const StepPath> paths, const Reducer& reducer);

/// Applies fn(in, out) to every piece value, producing a path of out_dim.
StepPath map_values(const StepPath& path, std::size_t out_dim,
                    const std::function<void(std::span<const double>, std::span<double>)>& fn);

}  // namespace heavymax
