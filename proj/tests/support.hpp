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

// Shared generators and brute-force oracles for the test binaries.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "heavymax/step_path.hpp"

namespace heavymax::testing {

struct PathGen {
  std::size_t max_jumps = 12;
  std::size_t dim = 1;
  bool monotone = false;
  // Times on a k/grid lattice when grid > 0 (forces coincident breakpoints).
  int grid = 0;
  double spread = 2.0;
};

inline StepPath random_path(std::mt19937_64& rng, const PathGen& g) {
  std::uniform_int_distribution<std::size_t> jumps(0, g.max_jumps);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::size_t k = jumps(rng);
  std::vector<double> times{0.0};
  while (times.size() < k + 1) {
    double t = g.grid > 0 ? std::floor(unit(rng) * g.grid + 1.0) / g.grid : unit(rng);
    if (t <= 0.0 || t > 1.0) continue;
    if (std::find(times.begin(), times.end(), t) == times.end()) times.push_back(t);
    if (g.grid > 0 && times.size() >= static_cast<std::size_t>(g.grid) + 1) break;
  }
  std::sort(times.begin(), times.end());
  std::vector<double> values(times.size() * g.dim);
  for (std::size_t c = 0; c < g.dim; ++c) {
    double level = (unit(rng) - 0.5) * g.spread;
    for (std::size_t i = 0; i < times.size(); ++i) {
      if (g.monotone) level += (i == 0 ? 0.0 : unit(rng) * g.spread / 2.0);
      else level = (unit(rng) - 0.5) * g.spread;
      values[i * g.dim + c] = level;
    }
  }
  return StepPath(g.dim, std::move(times), std::move(values));
}

// Chebyshev distance from a point to an axis-parallel segment in the plane.
inline double point_segment(double pt, double px, const GraphSegment& s) {
  const double t0 = std::min(s.from[0], s.to[0]), t1 = std::max(s.from[0], s.to[0]);
  const double v0 = std::min(s.from[1], s.to[1]), v1 = std::max(s.from[1], s.to[1]);
  const double dt = pt < t0 ? t0 - pt : (pt > t1 ? pt - t1 : 0.0);
  const double dv = px < v0 ? v0 - px : (px > v1 ? px - v1 : 0.0);
  return std::max(dt, dv);
}

// sup over a of inf over b, with a discretized into per_segment points per segment.
inline double directed_oracle(const ThinGraph& a, const ThinGraph& b, int per_segment) {
  double worst = 0.0;
  for (const auto& s : a.segments) {
    for (int i = 0; i < per_segment; ++i) {
      const double l = per_segment == 1 ? 0.0 : static_cast<double>(i) / (per_segment - 1);
      const double pt = s.from[0] + l * (s.to[0] - s.from[0]);
      const double px = s.from[1] + l * (s.to[1] - s.from[1]);
      double best = std::numeric_limits<double>::infinity();
      for (const auto& o : b.segments) best = std::min(best, point_segment(pt, px, o));
      worst = std::max(worst, best);
    }
  }
  return worst;
}

/// Brute-force Hausdorff distance between completed graphs of scalar paths.
inline double hausdorff_oracle(const StepPath& x, const StepPath& y, int per_segment = 2000) {
  const ThinGraph gx = thin_graph(x), gy = thin_graph(y);
  return std::max(directed_oracle(gx, gy, per_segment), directed_oracle(gy, gx, per_segment));
}

}  // namespace heavymax::testing
