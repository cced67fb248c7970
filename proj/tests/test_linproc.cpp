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

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "heavymax/innovations.hpp"
#include "heavymax/linproc.hpp"

using namespace heavymax;

namespace {

std::vector<Matrix> example_filter() { return {Matrix(2, {1, 1, 0, 0}), Matrix(2, {0, 0, 1, 1})}; }

// Extremes over an explicit list of rho^j B terms.
CoefficientExtremes explicit_geometric_extremes(double rho, const Matrix& b, int terms) {
  std::vector<Matrix> list;
  for (int j = 0; j < terms; ++j) {
    Matrix c(b.dim);
    for (std::size_t i = 0; i < c.data.size(); ++i) c.data[i] = std::pow(rho, j) * b.data[i];
    list.push_back(c);
  }
  return extremes(list);
}

Matrix random_matrix(std::mt19937_64& rng, std::size_t d) {
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  Matrix m(d);
  for (double& v : m.data) v = u(rng);
  return m;
}

}  // namespace

TEST(Matrix, OperatorNormIsMaxRowSum) {
  EXPECT_EQ(Matrix(2, {1, -2, 0.5, 0.25}).operator_norm(), 3.0);
  EXPECT_EQ(Matrix::identity(3, 0.5).operator_norm(), 0.5);
  EXPECT_THROW(Matrix(2, {1, 2, 3}), std::invalid_argument);
}

TEST(Moments, FiniteModelsPass) {
  const MomentReport r = validate_moments(CoefficientModel::deterministic(example_filter()), 1.0);
  EXPECT_TRUE(r.all_hold());
}

TEST(Moments, GeometricWitnesses) {
  const auto model = CoefficientModel::geometric_decay(0.5, Matrix::identity(2), 20);
  const MomentReport r = validate_moments(model, 0.8);
  EXPECT_TRUE(r.all_hold());
  EXPECT_TRUE(r.above_alpha_applicable);
  EXPECT_EQ(r.delta, 0.5);
  EXPECT_EQ(r.gamma, 0.9);
  const MomentReport r2 = validate_moments(model, 1.5);
  EXPECT_TRUE(r2.summable_norms);
  EXPECT_FALSE(r2.above_alpha_applicable);
}

TEST(Moments, HarmonicDecayFailsForAlphaAtLeastOne) {
  const MomentReport r = check_series_conditions({NormDecay::Kind::PowerLaw, 1.0, 1.0}, 1.0);
  EXPECT_FALSE(r.summable_norms);
  EXPECT_FALSE(r.all_hold());
  const MomentReport fast = check_series_conditions({NormDecay::Kind::PowerLaw, 3.0, 1.0}, 1.0);
  EXPECT_TRUE(fast.all_hold());
  ASSERT_TRUE(fast.delta.has_value());
  EXPECT_GT(*fast.delta * 3.0, 1.0);
  EXPECT_LT(*fast.delta, 1.0);
}

TEST(Extremes, MovingAverageExample) {
  const CoefficientExtremes e = extremes(std::span<const Matrix>(example_filter()));
  EXPECT_EQ(e.plus, Matrix(2, 1.0));
  EXPECT_EQ(e.minus, Matrix(2, 0.0));
  EXPECT_EQ(e.max, 1.0);
}

TEST(Extremes, NegativePart) {
  const std::vector<Matrix> c{Matrix(1, {-2.0})};
  const CoefficientExtremes e = extremes(c);
  EXPECT_EQ(e.plus, Matrix(1, {0.0}));
  EXPECT_EQ(e.minus, Matrix(1, {2.0}));
  EXPECT_EQ(e.max, 2.0);
}

TEST(Extremes, GeometricClosedForm) {
  EXPECT_EQ(extremes(CoefficientModel::geometric_decay(0.5, Matrix(1, {1.0}), 10)).plus, Matrix(1, {1.0}));
  const auto neg = extremes(CoefficientModel::geometric_decay(-0.5, Matrix(1, {2.0}), 10));
  EXPECT_EQ(neg.plus, Matrix(1, {2.0}));
  EXPECT_EQ(neg.minus, Matrix(1, {1.0}));
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(-0.99, 0.99);
  for (int rep = 0; rep < 200; ++rep) {
    const double rho = u(rng);
    const Matrix b = random_matrix(rng, 1 + rep % 3);
    EXPECT_EQ(extremes(CoefficientModel::geometric_decay(rho, b, 10)), explicit_geometric_extremes(rho, b, 400));
  }
}

TEST(Extremes, RandomModelNeedsDraw) {
  const auto model = CoefficientModel::uniform_random({Matrix(1, {0.0})}, {Matrix(1, {1.0})});
  EXPECT_THROW(extremes(model), std::invalid_argument);
}

TEST(Truncate, GeometricOrderThree) {
  const auto t = truncate(CoefficientModel::geometric_decay(0.5, Matrix::identity(2), 20), 3);
  const auto& c = t.finite.coefficients;
  ASSERT_EQ(c.size(), 4u);
  EXPECT_EQ(c[0], Matrix::identity(2));
  EXPECT_EQ(c[1], Matrix::identity(2, 0.5));
  EXPECT_EQ(c[2], Matrix::identity(2, 0.25));
  EXPECT_EQ(c[3], Matrix(2, 0.0));
}

TEST(Truncate, ZeroTail) {
  const auto t = truncate(CoefficientModel::geometric_decay(0.5, Matrix(2, 0.0), 20), 4);
  EXPECT_EQ(t.finite.coefficients.end()[-1], Matrix(2, 0.0));
  EXPECT_EQ(t.finite.coefficients.end()[-2], Matrix(2, 0.0));
}

TEST(Truncate, Errors) {
  const auto g = CoefficientModel::geometric_decay(0.5, Matrix::identity(1), 20);
  EXPECT_THROW(truncate(g, 1), std::invalid_argument);
  EXPECT_THROW(truncate(CoefficientModel::deterministic(example_filter()), 3), std::invalid_argument);
}

TEST(Truncate, ExtremesIdentity) {
  std::mt19937_64 rng(32);
  std::uniform_real_distribution<double> u(-0.95, 0.95);
  for (int rep = 0; rep < 100; ++rep) {
    const auto model = CoefficientModel::geometric_decay(rep == 0 ? 0.5 : u(rng),
                                                         rep == 0 ? Matrix::identity(2) : random_matrix(rng, 2), 20);
    for (std::size_t m = 2; m <= 12; ++m) EXPECT_EQ(extremes(truncate(model, m)), extremes(model)) << "m=" << m;
  }
}

TEST(Realize, RandomDrawsAreBoundedAndSeeded) {
  const auto model = CoefficientModel::uniform_random({Matrix(2, -1.0), Matrix(2, 0.0)}, {Matrix(2, 1.0), Matrix(2, 2.0)});
  const auto a = realize(model, 5), b = realize(model, 5), c = realize(model, 6);
  EXPECT_EQ(a, b);
  EXPECT_NE(a, c);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t e = 0; e < 4; ++e) {
      EXPECT_GE(a[i].data[e], model.random.lower[i].data[e]);
      EXPECT_LE(a[i].data[e], model.random.upper[i].data[e]);
    }
  const CoefficientExtremes ex = extremes(a);
  for (const auto& m : a)
    for (double v : m.data) EXPECT_LE(std::abs(v), ex.max);
}

TEST(Realize, GeometricUsesTruncation) {
  const auto model = CoefficientModel::geometric_decay(0.5, Matrix::identity(1), 6);
  EXPECT_EQ(realize(model, 0), truncate(model, 6).finite.coefficients);
  EXPECT_EQ(model.order(), 6u);
}

TEST(GeneratePath, IdentityFilter) {
  const InnovationModel im{.dim = 2, .marginal = Marginal::Frechet};
  const auto w = sample_window(im, 10, 3, 1);
  const std::vector<Matrix> c{Matrix::identity(2)};
  EXPECT_EQ(generate_path(c, w, 10), w.data);
}

TEST(GeneratePath, MovingAverageExpansion) {
  const InnovationModel im{.dim = 2, .marginal = Marginal::Frechet};
  const std::size_t n = 6;
  const auto w = sample_window(im, n + 1, 4, 0);
  const auto x = generate_path(example_filter(), w, n);
  // T_j = data[j + 1], Z_i = (T_{2i-1}, T_{2i}).
  auto T = [&](long j) { return w.data[static_cast<std::size_t>(j + 1)]; };
  for (std::size_t i = 1; i <= n; ++i) {
    const long k = static_cast<long>(i);
    EXPECT_EQ(x[(i - 1) * 2], T(2 * k - 1) + T(2 * k));
    EXPECT_EQ(x[(i - 1) * 2 + 1], T(2 * k - 3) + T(2 * k - 2));
  }
}

TEST(GeneratePath, ConstantInput) {
  const InnovationWindow w{1, -1, std::vector<double>(7, 1.0)};
  const std::vector<Matrix> c{Matrix(1, {2.0}), Matrix(1, {3.0})};
  for (double v : generate_path(c, w, 5)) EXPECT_EQ(v, 5.0);
}

TEST(GeneratePath, Linearity) {
  const InnovationModel im{.dim = 2, .alpha = 1.5, .marginal = Marginal::TwoSidedPareto, .tail_balance = 0.4};
  auto w = sample_window(im, 30, 5, -4);
  std::mt19937_64 rng(33);
  std::vector<Matrix> c;
  for (int j = 0; j < 5; ++j) c.push_back(random_matrix(rng, 2));
  const auto x = generate_path(c, w, 25);
  for (double& v : w.data) v *= 2.0;
  const auto x2 = generate_path(c, w, 25);
  for (std::size_t i = 0; i < x.size(); ++i) EXPECT_EQ(x2[i], 2.0 * x[i]);
}

TEST(GeneratePath, InsufficientBurnInThrows) {
  const InnovationWindow w{1, 1, std::vector<double>(10, 1.0)};
  const std::vector<Matrix> c{Matrix(1, {1.0}), Matrix(1, {1.0})};
  EXPECT_THROW(generate_path(c, w, 5), std::invalid_argument);
  const InnovationWindow shorter{1, 0, std::vector<double>(3, 1.0)};
  EXPECT_THROW(generate_path(c, shorter, 5), std::invalid_argument);
}

TEST(CoefficientModel, ValidationNamesKeys) {
  try {
    CoefficientModel::geometric_decay(1.5, Matrix::identity(1), 10).validate();
    FAIL();
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("coefficient.rho"), std::string::npos);
  }
  EXPECT_THROW(CoefficientModel::deterministic({Matrix(1), Matrix(2)}).validate(), std::invalid_argument);
  EXPECT_THROW(CoefficientModel::uniform_random({Matrix(1, {1.0})}, {Matrix(1, {0.0})}).validate(),
               std::invalid_argument);
}
