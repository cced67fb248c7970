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

#include "heavymax/step_path.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace heavymax {

StepPath::StepPath(std::size_t dim, std::vector<double> breakpoints, std::vector<double> values)
    : dim_(dim), times_(std::move(breakpoints)), values_(std::move(values)) {
  if (dim_ == 0) throw std::invalid_argument("StepPath: dimension must be positive");
  if (times_.empty() || times_.front() != 0.0)
    throw std::invalid_argument("StepPath: first breakpoint must be 0");
  for (std::size_t i = 1; i < times_.size(); ++i) {
    if (!(times_[i] > times_[i - 1]))
      throw std::invalid_argument("StepPath: breakpoints must be strictly increasing");
  }
  if (times_.back() > 1.0) throw std::invalid_argument("StepPath: breakpoint beyond 1");
  if (values_.size() != times_.size() * dim_)
    throw std::invalid_argument("StepPath: expected " + std::to_string(times_.size() * dim_) +
                                " values, got " + std::to_string(values_.size()));
  for (double v : values_) {
    if (!std::isfinite(v)) throw std::invalid_argument("StepPath: non-finite value");
  }
}

StepPath StepPath::constant(std::vector<double> value) {
  const std::size_t d = value.size();
  return StepPath(d, {0.0}, std::move(value));
}

std::size_t StepPath::piece_at(double t) const {
  if (!(t >= 0.0 && t <= 1.0)) throw std::domain_error("StepPath: time outside [0,1]");
  auto it = std::upper_bound(times_.begin(), times_.end(), t);
  return static_cast<std::size_t>(it - times_.begin()) - 1;
}

std::vector<double> StepPath::eval(double t) const {
  auto v = value(piece_at(t));
  return {v.begin(), v.end()};
}

double StepPath::eval(double t, std::size_t comp) const { return value(piece_at(t), comp); }

std::vector<double> StepPath::left_limit(double t) const {
  const std::size_t i = piece_at(t);
  const std::size_t j = (i > 0 && times_[i] == t) ? i - 1 : i;
  auto v = value(j);
  return {v.begin(), v.end()};
}

StepPath StepPath::normalize() const {
  std::vector<double> times{times_.front()};
  std::vector<double> vals(values_.begin(), values_.begin() + static_cast<std::ptrdiff_t>(dim_));
  for (std::size_t i = 1; i < times_.size(); ++i) {
    auto prev = std::span<const double>(vals).subspan(vals.size() - dim_);
    auto cur = value(i);
    if (std::equal(cur.begin(), cur.end(), prev.begin())) continue;
    times.push_back(times_[i]);
    vals.insert(vals.end(), cur.begin(), cur.end());
  }
  return StepPath(dim_, std::move(times), std::move(vals));
}

StepPath StepPath::component(std::size_t comp) const {
  if (comp >= dim_) throw std::out_of_range("StepPath: component index out of range");
  std::vector<double> vals(times_.size());
  for (std::size_t i = 0; i < times_.size(); ++i) vals[i] = value(i, comp);
  return StepPath(1, times_, std::move(vals));
}

StepPath StepPath::scaled(double factor) const {
  std::vector<double> vals(values_);
  for (double& v : vals) v *= factor;
  return StepPath(dim_, times_, std::move(vals));
}

bool StepPath::is_nondecreasing(double from) const {
  for (std::size_t i = 1; i < times_.size(); ++i) {
    // piece i-1 only matters if it is still active after `from`
    if (times_[i] <= from) continue;
    for (std::size_t c = 0; c < dim_; ++c) {
      if (value(i, c) < value(i - 1, c)) return false;
    }
  }
  return true;
}

ThinGraph thin_graph(const StepPath& path) {
  const StepPath p = path.normalize();
  const std::size_t d = p.dim();
  auto point = [d](double t, std::span<const double> v) {
    std::vector<double> pt(d + 1);
    pt[0] = t;
    std::copy(v.begin(), v.end(), pt.begin() + 1);
    return pt;
  };
  ThinGraph g;
  for (std::size_t i = 0; i < p.pieces(); ++i) {
    const double t0 = p.time(i);
    if (i > 0) g.segments.push_back({point(t0, p.value(i - 1)), point(t0, p.value(i)), true});
    const double t1 = (i + 1 < p.pieces()) ? p.time(i + 1) : 1.0;
    if (t1 > t0) g.segments.push_back({point(t0, p.value(i)), point(t1, p.value(i)), false});
  }
  return g;
}

namespace {

StepPath running_max_of_points(std::vector<PointAtom> points, std::size_t out_dim,
                               const std::function<void(std::span<const double>, std::span<double>)>& update) {
  std::stable_sort(points.begin(), points.end(),
                   [](const PointAtom& a, const PointAtom& b) { return a.t < b.t; });
  std::vector<double> cur(out_dim, 0.0);
  std::vector<double> times{0.0};
  std::vector<double> vals(cur);
  std::size_t i = 0;
  while (i < points.size()) {
    const double t = points[i].t;
    std::vector<double> next(cur);
    for (; i < points.size() && points[i].t == t; ++i) update(points[i].x, next);
    if (next == cur) continue;
    cur = std::move(next);
    if (t == 0.0) {
      std::copy(cur.begin(), cur.end(), vals.begin());
    } else {
      times.push_back(t);
      vals.insert(vals.end(), cur.begin(), cur.end());
    }
  }
  return StepPath(out_dim, std::move(times), std::move(vals));
}

}  // namespace

StepPath max_functional(const PointMeasure& measure, bool replicate_block) {
  const std::size_t d = measure.dim;
  for (const auto& p : measure.points) {
    if (p.x.size() != d) throw std::invalid_argument("max_functional: mark dimension mismatch");
    if (!(p.t >= 0.0 && p.t <= 1.0) || !std::isfinite(p.t))
      throw std::invalid_argument("max_functional: point time outside [0,1]");
    for (double v : p.x) {
      if (!std::isfinite(v)) throw std::invalid_argument("max_functional: non-finite mark");
    }
  }
  StepPath out = running_max_of_points(
      measure.points, 2 * d, [d](std::span<const double> x, std::span<double> acc) {
        for (std::size_t j = 0; j < d; ++j) {
          const double pos = x[j] > 0.0 ? x[j] : 0.0;
          const double neg = x[j] < 0.0 ? -x[j] : 0.0;
          acc[2 * j] = std::max(acc[2 * j], pos);
          acc[2 * j + 1] = std::max(acc[2 * j + 1], neg);
        }
      });
  return replicate_block ? replicate(out, d) : out;
}

StepPath replicate(const StepPath& path, std::size_t times) {
  if (times == 0) throw std::invalid_argument("replicate: count must be positive");
  const std::size_t d = path.dim();
  return map_values(path, d * times, [d, times](std::span<const double> in, std::span<double> out) {
    for (std::size_t r = 0; r < times; ++r) std::copy(in.begin(), in.end(), out.begin() + r * d);
  });
}

StepPath running_max(std::span<const double> samples, std::size_t dim, double scale) {
  if (dim == 0) throw std::invalid_argument("running_max: dimension must be positive");
  if (samples.empty() || samples.size() % dim != 0)
    throw std::invalid_argument("running_max: need at least one complete sample row");
  if (!(scale > 0.0) || !std::isfinite(scale))
    throw std::invalid_argument("running_max: scale must be positive");
  const std::size_t n = samples.size() / dim;
  const double dn = static_cast<double>(n);

  std::vector<double> cur(samples.begin(), samples.begin() + static_cast<std::ptrdiff_t>(dim));
  std::vector<double> times{0.0};
  std::vector<double> vals(dim);
  for (std::size_t c = 0; c < dim; ++c) vals[c] = cur[c] / scale;
  for (std::size_t i = 1; i < n; ++i) {
    bool changed = false;
    for (std::size_t c = 0; c < dim; ++c) {
      const double x = samples[i * dim + c];
      if (x > cur[c]) {
        cur[c] = x;
        changed = true;
      }
    }
    if (!changed) continue;
    // sample index i (0-based) is X_{i+1}, first seen at t = (i+1)/n
    times.push_back(static_cast<double>(i + 1) / dn);
    for (std::size_t c = 0; c < dim; ++c) vals.push_back(cur[c] / scale);
  }
  return StepPath(dim, std::move(times), std::move(vals));
}

StepPath combine(std::span<const StepPath> paths, const Reducer& reducer) {
  if (paths.empty()) throw std::invalid_argument("combine: no input paths");
  std::size_t d = 1;
  for (const auto& p : paths) d = std::max(d, p.dim());
  for (const auto& p : paths) {
    if (p.dim() != d && p.dim() != 1) throw std::invalid_argument("combine: dimension mismatch");
  }
  if (reducer.kind == Reducer::Kind::Difference && paths.size() != 2)
    throw std::invalid_argument("combine: difference needs exactly two paths");
  if (reducer.kind == Reducer::Kind::LinearCombination && reducer.weights.size() != paths.size())
    throw std::invalid_argument("combine: one weight per path required");

  std::vector<double> times;
  for (const auto& p : paths) {
    std::vector<double> merged;
    merged.reserve(times.size() + p.pieces());
    std::set_union(times.begin(), times.end(), p.breakpoints().begin(), p.breakpoints().end(),
                   std::back_inserter(merged));
    times = std::move(merged);
  }

  std::vector<std::size_t> cursor(paths.size(), 0);
  std::vector<double> vals;
  vals.reserve(times.size() * d);
  for (double t : times) {
    for (std::size_t q = 0; q < paths.size(); ++q) {
      const auto& bp = paths[q].breakpoints();
      while (cursor[q] + 1 < bp.size() && bp[cursor[q] + 1] <= t) ++cursor[q];
    }
    for (std::size_t c = 0; c < d; ++c) {
      auto at = [&](std::size_t q) {
        const StepPath& p = paths[q];
        return p.value(cursor[q], p.dim() == 1 ? 0 : c);
      };
      double r = 0.0;
      switch (reducer.kind) {
        case Reducer::Kind::Max:
          r = at(0);
          for (std::size_t q = 1; q < paths.size(); ++q) r = std::max(r, at(q));
          break;
        case Reducer::Kind::Difference:
          r = at(0) - at(1);
          break;
        case Reducer::Kind::LinearCombination:
          for (std::size_t q = 0; q < paths.size(); ++q) r += reducer.weights[q] * at(q);
          break;
      }
      vals.push_back(r);
    }
  }
  return StepPath(d, std::move(times), std::move(vals));
}

StepPath map_values(const StepPath& path, std::size_t out_dim,
                    const std::function<void(std::span<const double>, std::span<double>)>& fn) {
  std::vector<double> vals(path.pieces() * out_dim, 0.0);
  for (std::size_t i = 0; i < path.pieces(); ++i)
    fn(path.value(i), std::span<double>(vals).subspan(i * out_dim, out_dim));
  return StepPath(out_dim, path.breakpoints(), std::move(vals));
}

}  // namespace heavymax
