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

#include "heavymax/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "heavymax/step_path_io.hpp"

namespace heavymax {

std::string to_string(MetricMethod m) {
  switch (m) {
    case MetricMethod::ExactGeometry: return "exact-geometry";
    case MetricMethod::CertifiedSubdivision: return "certified-subdivision";
    case MetricMethod::BruteForceOracle: return "brute-force-oracle";
  }
  return "unknown";
}

std::string to_string(MetricKind k) {
  switch (k) {
    case MetricKind::M2: return "m2";
    case MetricKind::M1Monotone: return "m1";
    case MetricKind::ProductM1: return "dp";
    case MetricKind::ProductM2: return "dp-m2";
    case MetricKind::Uniform: return "uniform";
    case MetricKind::Oscillation: return "osc";
  }
  return "unknown";
}

std::string to_json(const MetricResult& r) {
  return "{\"value\":" + format_double(r.value) + ",\"method\":\"" + to_string(r.method) +
         "\",\"tolerance\":" + format_double(r.tolerance) + ",\"metric\":\"" + to_string(r.kind) +
         "\"}";
}

namespace {

constexpr double kSubdivisionTolerance = 1e-9;

// Axis-parallel segment as a degenerate box [t0,t1] x [v0,v1].
struct Box {
  double t0, t1, v0, v1;
};

std::vector<Box> boxes_of(const StepPath& p) {
  std::vector<Box> out;
  for (const auto& s : thin_graph(p).segments) {
    out.push_back({std::min(s.from[0], s.to[0]), std::max(s.from[0], s.to[0]),
                   std::min(s.from[1], s.to[1]), std::max(s.from[1], s.to[1])});
  }
  return out;
}

bool interval_covered(double lo, double hi, std::vector<std::pair<double, double>>& cover,
                      double tol) {
  std::sort(cover.begin(), cover.end());
  double reach = lo;
  for (const auto& [a, b] : cover) {
    if (a > reach + tol) break;
    reach = std::max(reach, b);
    if (reach >= hi - tol) return true;
  }
  return reach >= hi - tol;
}

// Every box of `from` lies inside the union of r-inflated boxes of `to`.
bool covered(const std::vector<Box>& from, const std::vector<Box>& to, double r, double tol) {
  std::vector<std::pair<double, double>> cover;
  for (const Box& a : from) {
    cover.clear();
    if (a.t0 == a.t1) {
      // vertical (or a point): cover the value range at fixed time
      for (const Box& b : to) {
        if (a.t0 >= b.t0 - r - tol && a.t0 <= b.t1 + r + tol) cover.emplace_back(b.v0 - r, b.v1 + r);
      }
      if (!interval_covered(a.v0, a.v1, cover, tol)) return false;
    } else {
      for (const Box& b : to) {
        if (a.v0 >= b.v0 - r - tol && a.v0 <= b.v1 + r + tol) cover.emplace_back(b.t0 - r, b.t1 + r);
      }
      if (!interval_covered(a.t0, a.t1, cover, tol)) return false;
    }
  }
  return true;
}

void add_differences(std::vector<double> coords, std::vector<double>& out) {
  std::sort(coords.begin(), coords.end());
  coords.erase(std::unique(coords.begin(), coords.end()), coords.end());
  for (std::size_t i = 0; i < coords.size(); ++i) {
    for (std::size_t j = i + 1; j < coords.size(); ++j) {
      const double diff = coords[j] - coords[i];
      out.push_back(diff);
      out.push_back(0.5 * diff);
    }
  }
}

struct Directed {
  double value;
  bool certified_fallback;
};

Directed directed_hausdorff(const std::vector<Box>& from, const std::vector<Box>& to,
                            const std::vector<double>& candidates, double tol, double upper) {
  // Smallest candidate with full coverage; coverage is monotone in r.
  std::size_t lo = 0, hi = candidates.size();
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (covered(from, to, candidates[mid], tol)) hi = mid;
    else lo = mid + 1;
  }
  if (lo < candidates.size()) return {candidates[lo], false};

  // Degenerate configuration defeated the candidate set: bisect instead.
  double a = candidates.empty() ? 0.0 : candidates.back();
  double b = std::max(upper, a);
  while (!covered(from, to, b, tol)) b = 2.0 * b + 1.0;
  while (b - a > kSubdivisionTolerance) {
    const double m = 0.5 * (a + b);
    if (covered(from, to, m, tol)) b = m;
    else a = m;
  }
  return {b, true};
}

void require_scalar(const StepPath& x, const StepPath& y, const char* who) {
  if (x.dim() != 1 || y.dim() != 1)
    throw std::invalid_argument(std::string(who) + ": scalar (d=1) paths required");
}

}  // namespace

MetricResult d_m2_scalar(const StepPath& x, const StepPath& y) {
  require_scalar(x, y, "d_m2_scalar");
  const auto bx = boxes_of(x);
  const auto by = boxes_of(y);

  std::vector<double> times, vals;
  double scale = 1.0;
  for (const auto* boxes : {&bx, &by}) {
    for (const Box& b : *boxes) {
      times.insert(times.end(), {b.t0, b.t1});
      vals.insert(vals.end(), {b.v0, b.v1});
      scale = std::max({scale, std::abs(b.v0), std::abs(b.v1)});
    }
  }
  const double vmin = *std::min_element(vals.begin(), vals.end());
  const double vmax = *std::max_element(vals.begin(), vals.end());

  std::vector<double> candidates{0.0};
  add_differences(times, candidates);
  add_differences(vals, candidates);
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  const double tol = 1e-12 * scale;
  const double upper = std::max(1.0, vmax - vmin);
  const Directed xy = directed_hausdorff(bx, by, candidates, tol, upper);
  const Directed yx = directed_hausdorff(by, bx, candidates, tol, upper);

  MetricResult r;
  r.value = std::max(xy.value, yx.value);
  r.kind = MetricKind::M2;
  if (xy.certified_fallback || yx.certified_fallback) {
    r.method = MetricMethod::CertifiedSubdivision;
    r.tolerance = kSubdivisionTolerance;
  }
  return r;
}

MetricResult d_m1_monotone(const StepPath& x, const StepPath& y) {
  require_scalar(x, y, "d_m1_monotone");
  if (!x.is_nondecreasing() || !y.is_nondecreasing())
    throw std::invalid_argument("d_m1_monotone: inputs must be non-decreasing; use d_m2_scalar");
  MetricResult r = d_m2_scalar(x, y);
  r.kind = MetricKind::M1Monotone;
  return r;
}

MetricResult d_p(const StepPath& x, const StepPath& y) {
  if (x.dim() != y.dim()) throw std::invalid_argument("d_p: dimension mismatch");
  MetricResult out;
  out.kind = MetricKind::ProductM1;
  for (std::size_t c = 0; c < x.dim(); ++c) {
    const StepPath xc = x.component(c);
    const StepPath yc = y.component(c);
    MetricResult r;
    if (xc.is_nondecreasing() && yc.is_nondecreasing()) {
      r = d_m1_monotone(xc, yc);
    } else {
      r = d_m2_scalar(xc, yc);
      out.kind = MetricKind::ProductM2;
    }
    out.value = std::max(out.value, r.value);
    if (r.method == MetricMethod::CertifiedSubdivision) {
      out.method = r.method;
      out.tolerance = std::max(out.tolerance, r.tolerance);
    }
  }
  return out;
}

MetricResult d_uniform(const StepPath& x, const StepPath& y) {
  if (x.dim() != y.dim()) throw std::invalid_argument("d_uniform: dimension mismatch");
  const StepPath pair[] = {x, y};
  const StepPath diff = combine(pair, Reducer::difference());
  MetricResult r;
  r.kind = MetricKind::Uniform;
  for (double v : diff.flat_values()) r.value = std::max(r.value, std::abs(v));
  return r;
}

double m_triple(double x1, double x2, double x3) {
  const double lo = std::min(x1, x3);
  const double hi = std::max(x1, x3);
  if (x2 >= lo && x2 <= hi) return 0.0;
  return std::min(std::abs(x2 - x1), std::abs(x3 - x2));
}

double oscillation(const StepPath& x, double delta) {
  if (x.dim() != 1) throw std::invalid_argument("oscillation: scalar path required");
  if (!(delta > 0.0) || std::isnan(delta)) throw std::domain_error("oscillation: delta must be positive");
  const StepPath p = x.normalize();
  const std::size_t k = p.pieces();
  double best = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    // t1 ranges over [s_i, s_{i+1}); for t2 in piece l > i the smallest
    // achievable t2 - t1 is s_l - s_{i+1}, approached but never attained.
    for (std::size_t l = i + 1; l < k && p.time(l) - p.time(i + 1) < delta; ++l) {
      for (std::size_t j = i + 1; j < l; ++j)
        best = std::max(best, m_triple(p.value(i, 0), p.value(j, 0), p.value(l, 0)));
    }
  }
  return best;
}

}  // namespace heavymax
