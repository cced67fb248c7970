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

#include "heavymax/linproc.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "heavymax/rng.hpp"

namespace heavymax {

Matrix::Matrix(std::size_t d, std::vector<double> entries) : dim(d), data(std::move(entries)) {
  if (data.size() != d * d)
    throw std::invalid_argument("Matrix: expected " + std::to_string(d * d) + " entries");
}

Matrix Matrix::identity(std::size_t d, double diag) {
  Matrix m(d);
  for (std::size_t k = 0; k < d; ++k) m(k, k) = diag;
  return m;
}

double Matrix::operator_norm() const {
  double best = 0.0;
  for (std::size_t k = 0; k < dim; ++k) {
    double row = 0.0;
    for (std::size_t j = 0; j < dim; ++j) row += std::abs((*this)(k, j));
    best = std::max(best, row);
  }
  return best;
}

CoefficientModel CoefficientModel::deterministic(std::vector<Matrix> coefficients) {
  CoefficientModel m;
  m.kind = Kind::FiniteDeterministic;
  m.finite.coefficients = std::move(coefficients);
  m.validate();
  return m;
}

CoefficientModel CoefficientModel::uniform_random(std::vector<Matrix> lower, std::vector<Matrix> upper) {
  CoefficientModel m;
  m.kind = Kind::FiniteRandom;
  m.random = {std::move(lower), std::move(upper)};
  m.validate();
  return m;
}

CoefficientModel CoefficientModel::geometric_decay(double rho, Matrix base, std::size_t truncation_order) {
  CoefficientModel m;
  m.kind = Kind::InfiniteGeometric;
  m.geometric = {rho, std::move(base), truncation_order};
  m.validate();
  return m;
}

std::size_t CoefficientModel::dim() const {
  switch (kind) {
    case Kind::FiniteDeterministic: return finite.coefficients.empty() ? 0 : finite.coefficients[0].dim;
    case Kind::FiniteRandom: return random.lower.empty() ? 0 : random.lower[0].dim;
    case Kind::InfiniteGeometric: return geometric.base.dim;
  }
  return 0;
}

std::size_t CoefficientModel::order() const {
  switch (kind) {
    case Kind::FiniteDeterministic: return finite.coefficients.size() - 1;
    case Kind::FiniteRandom: return random.lower.size() - 1;
    case Kind::InfiniteGeometric: return geometric.truncation_order;
  }
  return 0;
}

void CoefficientModel::validate() const {
  auto check_list = [](const std::vector<Matrix>& list, const char* what) {
    if (list.empty()) throw std::invalid_argument(std::string(what) + ": at least one matrix required");
    for (const auto& c : list) {
      if (c.dim == 0 || c.dim != list[0].dim || c.data.size() != c.dim * c.dim)
        throw std::invalid_argument(std::string(what) + ": matrices must share one square shape");
      for (double v : c.data) {
        if (!std::isfinite(v)) throw std::invalid_argument(std::string(what) + ": non-finite entry");
      }
    }
  };
  switch (kind) {
    case Kind::FiniteDeterministic:
      check_list(finite.coefficients, "coefficient.matrices");
      break;
    case Kind::FiniteRandom:
      check_list(random.lower, "coefficient.lower");
      check_list(random.upper, "coefficient.upper");
      if (random.lower.size() != random.upper.size() || random.lower[0].dim != random.upper[0].dim)
        throw std::invalid_argument("coefficient.lower and coefficient.upper must match in shape");
      for (std::size_t i = 0; i < random.lower.size(); ++i) {
        for (std::size_t e = 0; e < random.lower[i].data.size(); ++e) {
          if (random.lower[i].data[e] > random.upper[i].data[e])
            throw std::invalid_argument("coefficient.lower must not exceed coefficient.upper");
        }
      }
      break;
    case Kind::InfiniteGeometric:
      if (!(std::abs(geometric.rho) < 1.0))
        throw std::invalid_argument("coefficient.rho must satisfy |rho| < 1");
      check_list({geometric.base}, "coefficient.base");
      if (geometric.truncation_order < 2)
        throw std::invalid_argument("coefficient.truncation_order must be at least 2");
      break;
  }
}

bool MomentReport::all_hold() const {
  return summable_below_alpha && (!above_alpha_applicable || summable_above_alpha) &&
         (!norms_applicable || summable_norms);
}

MomentReport check_series_conditions(const NormDecay& decay, double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("check_series_conditions: alpha must be positive");
  MomentReport r;
  r.above_alpha_applicable = alpha < 1.0;
  r.norms_applicable = alpha >= 1.0;
  const double cap = std::min(alpha, 1.0);

  const bool summable_any = decay.kind == NormDecay::Kind::Finite || decay.scale == 0.0 ||
                            (decay.kind == NormDecay::Kind::Geometric && decay.rate < 1.0);
  if (summable_any) {
    // every positive power of a geometric (or finite) sequence is summable
    r.summable_below_alpha = true;
    r.delta = cap > 0.5 ? 0.5 : 0.5 * cap;
    if (r.above_alpha_applicable) {
      r.summable_above_alpha = true;
      r.gamma = 0.5 * (alpha + 1.0);
    }
    r.summable_norms = r.norms_applicable;
    return r;
  }
  if (decay.kind == NormDecay::Kind::PowerLaw) {
    // sum_j j^{-beta * eta} < inf iff beta * eta > 1
    const double beta = decay.rate;
    if (beta * cap > 1.0) {
      r.summable_below_alpha = true;
      r.delta = 0.5 * (1.0 / beta + cap);
    }
    if (r.above_alpha_applicable && beta > 1.0) {
      r.summable_above_alpha = true;
      r.gamma = 0.5 * (std::max(alpha, 1.0 / beta) + 1.0);
    }
    r.summable_norms = r.norms_applicable && beta > 1.0;
  }
  return r;
}

MomentReport validate_moments(const CoefficientModel& model, double alpha) {
  NormDecay decay;
  if (model.kind == CoefficientModel::Kind::InfiniteGeometric) {
    decay = {NormDecay::Kind::Geometric, std::abs(model.geometric.rho),
             model.geometric.base.operator_norm()};
  }
  return check_series_conditions(decay, alpha);
}

CoefficientExtremes extremes(std::span<const Matrix> coefficients) {
  if (coefficients.empty()) throw std::invalid_argument("extremes: no coefficients");
  const std::size_t d = coefficients[0].dim;
  CoefficientExtremes e{Matrix(d), Matrix(d), 0.0};
  for (const auto& c : coefficients) {
    for (std::size_t i = 0; i < d * d; ++i) {
      const double v = c.data[i];
      if (v > 0.0) e.plus.data[i] = std::max(e.plus.data[i], v);
      if (v < 0.0) e.minus.data[i] = std::max(e.minus.data[i], -v);
    }
  }
  for (std::size_t i = 0; i < d * d; ++i) e.max = std::max({e.max, e.plus.data[i], e.minus.data[i]});
  return e;
}

CoefficientExtremes extremes(const CoefficientModel& model) {
  switch (model.kind) {
    case CoefficientModel::Kind::FiniteDeterministic:
      return extremes(model.finite.coefficients);
    case CoefficientModel::Kind::FiniteRandom:
      throw std::invalid_argument("extremes: random model needs a realized draw");
    case CoefficientModel::Kind::InfiniteGeometric: {
      const double rho = model.geometric.rho;
      const Matrix& b = model.geometric.base;
      const std::size_t d = b.dim;
      CoefficientExtremes e{Matrix(d), Matrix(d), 0.0};
      for (std::size_t i = 0; i < d * d; ++i) {
        const double v = b.data[i];
        // j = 0 carries the sign of v; for rho < 0, j = 1 carries the opposite sign
        const double flipped = rho < 0.0 ? rho * v : 0.0;
        e.plus.data[i] = std::max({0.0, v, flipped});
        e.minus.data[i] = std::max({0.0, -v, -flipped});
        e.max = std::max({e.max, e.plus.data[i], e.minus.data[i]});
      }
      return e;
    }
  }
  return {};
}

CoefficientModel truncate(const CoefficientModel& model, std::size_t m) {
  if (model.kind != CoefficientModel::Kind::InfiniteGeometric)
    throw std::invalid_argument("truncate: infinite (geometric) model required");
  if (m < 2) throw std::invalid_argument("truncate: order must be at least 2");
  const double rho = model.geometric.rho;
  const Matrix& b = model.geometric.base;
  const std::size_t d = b.dim;

  std::vector<Matrix> coeffs;
  for (std::size_t j = 0; j + 2 <= m; ++j) {
    Matrix c(d);
    const double rj = std::pow(rho, static_cast<double>(j));
    for (std::size_t i = 0; i < d * d; ++i) c.data[i] = rj * b.data[i];
    coeffs.push_back(std::move(c));
  }
  // Tail {rho^i b : i >= m-1}: its sup and inf involve only the first two
  // terms and the limit 0.
  Matrix hi(d), lo(d);
  const double r1 = std::pow(rho, static_cast<double>(m - 1));
  const double r2 = std::pow(rho, static_cast<double>(m));
  for (std::size_t i = 0; i < d * d; ++i) {
    const double u = r1 * b.data[i];
    const double w = r2 * b.data[i];
    if (rho >= 0.0) {
      hi.data[i] = std::max(u, 0.0);
      lo.data[i] = std::min(u, 0.0);
    } else {
      hi.data[i] = std::max(u, w);
      lo.data[i] = std::min(u, w);
    }
  }
  coeffs.push_back(std::move(hi));
  coeffs.push_back(std::move(lo));
  return CoefficientModel::deterministic(std::move(coeffs));
}

std::vector<Matrix> realize(const CoefficientModel& model, std::uint64_t seed) {
  model.validate();
  switch (model.kind) {
    case CoefficientModel::Kind::FiniteDeterministic:
      return model.finite.coefficients;
    case CoefficientModel::Kind::FiniteRandom: {
      Rng rng(seed);
      std::vector<Matrix> out;
      for (std::size_t i = 0; i < model.random.lower.size(); ++i) {
        Matrix c = model.random.lower[i];
        const Matrix& up = model.random.upper[i];
        for (std::size_t e = 0; e < c.data.size(); ++e)
          c.data[e] += (up.data[e] - c.data[e]) * rng.uniform();
        out.push_back(std::move(c));
      }
      return out;
    }
    case CoefficientModel::Kind::InfiniteGeometric:
      return truncate(model, model.geometric.truncation_order).finite.coefficients;
  }
  return {};
}

std::vector<double> generate_path(std::span<const Matrix> coefficients,
                                  const InnovationWindow& window, std::size_t n) {
  if (coefficients.empty()) throw std::invalid_argument("generate_path: no coefficients");
  const std::size_t d = coefficients[0].dim;
  if (window.dim != d) throw std::invalid_argument("generate_path: dimension mismatch");
  const long m = static_cast<long>(coefficients.size()) - 1;
  const long last = window.first_index + static_cast<long>(window.rows()) - 1;
  if (window.first_index > 1 - m || last < static_cast<long>(n))
    throw std::invalid_argument("generate_path: innovation window must cover indices " +
                                std::to_string(1 - m) + ".." + std::to_string(n) +
                                " (insufficient burn-in)");
  std::vector<double> x(n * d, 0.0);
  for (std::size_t i = 1; i <= n; ++i) {
    double* out = x.data() + (i - 1) * d;
    for (long j = 0; j <= m; ++j) {
      const Matrix& c = coefficients[static_cast<std::size_t>(j)];
      const auto z = window.at(static_cast<long>(i) - j);
      for (std::size_t k = 0; k < d; ++k) {
        double s = 0.0;
        for (std::size_t l = 0; l < d; ++l) s += c(k, l) * z[l];
        out[k] += s;
      }
    }
  }
  return x;
}

}  // namespace heavymax
