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

#include "heavymax/maxima.hpp"

#include <algorithm>
#include <stdexcept>

namespace heavymax {

void Scenario::validate() const {
  innovations.validate();
  coefficients.validate();
  if (coefficients.dim() != innovations.dim)
    throw std::invalid_argument("coefficient matrices must be innovation.dim x innovation.dim");
  if (fixed_normalizer && !(*fixed_normalizer > 0.0))
    throw std::invalid_argument("fixed normalizer must be positive");
}

double scenario_normalizer(const Scenario& scenario, std::size_t n) {
  if (scenario.fixed_normalizer) return *scenario.fixed_normalizer;
  return normalizer(scenario.innovations, n, scenario.target_mass, scenario.basis);
}

Realization realize_sample(const Scenario& scenario, std::size_t n, SeedPair seeds) {
  scenario.validate();
  if (n == 0) throw std::invalid_argument("realize_sample: n must be positive");
  Realization r;
  r.n = n;
  r.seeds = seeds;
  r.an = scenario_normalizer(scenario, n);
  r.coefficients = realize(scenario.coefficients, seeds.coefficients);
  r.extremes = extremes(r.coefficients);
  const std::size_t m = r.coefficients.size() - 1;
  r.z = sample_window(scenario.innovations, n + m, seeds.innovations, 1 - static_cast<long>(m));
  r.x = generate_path(r.coefficients, r.z, n);
  return r;
}

StepPath build_mn(const Realization& r) { return running_max(r.x, r.dim(), r.an); }

StepPath build_wn(const Realization& r) {
  const std::size_t d = r.dim();
  std::vector<double> w(r.n * d, 0.0);
  for (std::size_t i = 1; i <= r.n; ++i) {
    const auto z = r.z.at(static_cast<long>(i));
    for (std::size_t k = 0; k < d; ++k) {
      double best = 0.0;
      for (std::size_t j = 0; j < d; ++j) {
        const double pos = z[j] > 0.0 ? z[j] : 0.0;
        const double neg = z[j] < 0.0 ? -z[j] : 0.0;
        best = std::max(best, r.extremes.plus(k, j) * pos + r.extremes.minus(k, j) * neg);
      }
      w[(i - 1) * d + k] = best;
    }
  }
  return running_max(w, d, r.an);
}

StepPath build_vn(const StepPath& mn) {
  if (mn.dim() != 2) throw std::invalid_argument("build_vn: two-dimensional M_n required");
  const StepPath parts[] = {mn.component(0), mn.component(1)};
  return combine(parts, Reducer::difference()).normalize();
}

MaximaPair build_pair(const Scenario& scenario, std::size_t n, SeedPair seeds) {
  const Realization r = realize_sample(scenario, n, seeds);
  return {build_mn(r), build_wn(r), n, r.an, seeds};
}

}  // namespace heavymax
