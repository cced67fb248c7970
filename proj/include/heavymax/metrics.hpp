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

#include <string>

#include "heavymax/step_path.hpp"

namespace heavymax {

enum class MetricMethod { ExactGeometry, CertifiedSubdivision, BruteForceOracle };

/// Which distance a MetricResult holds.
enum class MetricKind {
  M2,            // Hausdorff distance of completed graphs
  M1Monotone,    // M1 on non-decreasing paths (equals M2 there)
  ProductM1,     // d_p with every component pair monotone
  ProductM2,     // d_p where some component pair fell back to M2
  Uniform,
  Oscillation,
};

struct MetricResult {
  double value = 0.0;
  MetricMethod method = MetricMethod::ExactGeometry;
  double tolerance = 0.0;
  MetricKind kind = MetricKind::M2;
};

std::string to_string(MetricMethod m);
std::string to_string(MetricKind k);
/// One-line JSON rendering of a result.
std::string to_json(const MetricResult& r);

/**
 * M2 distance between two scalar paths: two-sided Hausdorff distance between
 * the completed graphs in the plane under the max-norm.
 *
 * Both graphs are unions of axis-parallel segments, so the distance is one
 * of finitely many critical values (coordinate differences and half
 * differences). The smallest candidate r for which every segment of one
 * graph is covered by the r-inflated rectangles of the other is the exact
 * directed distance.
 */
MetricResult d_m2_scalar(const StepPath& x, const StepPath& y);

/// M1 distance for non-decreasing scalar paths. Throws std::invalid_argument
/// for non-monotone input; use d_m2_scalar for those.
MetricResult d_m1_monotone(const StepPath& x, const StepPath& y);

/// Weak-M1 product distance: max over components of d_m1_monotone when both
/// components are non-decreasing, d_m2_scalar otherwise (kind ProductM2).
MetricResult d_p(const StepPath& x, const StepPath& y);

/// Sup over t of the max-norm difference.
MetricResult d_uniform(const StepPath& x, const StepPath& y);

/// 0 if x2 lies between x1 and x3 (either order), else min(|x2-x1|, |x3-x2|).
double m_triple(double x1, double x2, double x3);

/// Oscillation sup_{t1<=t<=t2, t2-t1<=delta} m_triple(x(t1), x(t), x(t2)).
double oscillation(const StepPath& x, double delta);

}  // namespace heavymax
