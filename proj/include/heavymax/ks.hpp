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

namespace heavymax {

/// sup_x |F_n(x) - F(x)| for a continuous reference CDF. The sample is copied and sorted.
double ks_statistic(std::span<const double> sample, const std::function<double(double)>& cdf);

/// Two-sample statistic sup_x |F_n(x) - G_m(x)|.
double ks_two_sample(std::span<const double> a, std::span<const double> b);

/// Asymptotic one-sample critical values (1.62762 / sqrt(n) and 1.35810 / sqrt(n)).
double ks_critical_1pct(std::size_t n);
double ks_critical_5pct(std::size_t n);

/// Two-sample analogues, c sqrt((n + m) / (n m)).
double ks_two_sample_critical_1pct(std::size_t n, std::size_t m);
double ks_two_sample_critical_5pct(std::size_t n, std::size_t m);

}  // namespace heavymax
