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

#include "heavymax/step_path.hpp"
#include "heavymax/step_path_io.hpp"
#include "support.hpp"

using namespace heavymax;
using heavymax::testing::PathGen;
using heavymax::testing::random_path;

namespace {

StepPath scalar(std::vector<double> t, std::vector<double> v) { return StepPath(1, std::move(t), std::move(v)); }

std::vector<double> brute_running_max(const std::vector<double>& x, std::size_t d, double a, double t) {
  const std::size_t n = x.size() / d;
  // floor(nt) evaluated as #{i : i/n <= t} so grid times i/n count exactly.
  std::size_t upto = 1;
  while (upto < n && static_cast<double>(upto + 1) / static_cast<double>(n) <= t) ++upto;
  std::vector<double> out(d, -INFINITY);
  for (std::size_t i = 0; i < upto; ++i)
    for (std::size_t c = 0; c < d; ++c) out[c] = std::max(out[c], x[i * d + c]);
  for (double& v : out) v /= a;
  return out;
}

}  // namespace

TEST(StepPath, EvalConstant) {
  const StepPath x = StepPath::constant({2.0});
  EXPECT_EQ(x.eval(0.7, 0), 2.0);
}

TEST(StepPath, RightContinuityAndLeftLimit) {
  const StepPath x = scalar({0.0, 0.5}, {0.0, 1.0});
  EXPECT_EQ(x.eval(0.5, 0), 1.0);
  EXPECT_EQ(x.left_limit(0.5)[0], 0.0);
  EXPECT_EQ(x.left_limit(0.0)[0], 0.0);
  EXPECT_EQ(x.eval(1.0, 0), 1.0);
}

TEST(StepPath, EvalOutsideDomainThrows) {
  const StepPath x = StepPath::constant({1.0});
  EXPECT_THROW(x.eval(-0.1), std::domain_error);
  EXPECT_THROW(x.eval(1.5), std::domain_error);
  EXPECT_THROW(x.eval(NAN), std::domain_error);
}

TEST(StepPath, ConstructorRejectsBadInput) {
  EXPECT_THROW(scalar({0.1}, {1.0}), std::invalid_argument);
  EXPECT_THROW(scalar({0.0, 0.5, 0.5}, {1, 2, 3}), std::invalid_argument);
  EXPECT_THROW(scalar({0.0, 1.2}, {1, 2}), std::invalid_argument);
  EXPECT_THROW(scalar({0.0}, {NAN}), std::invalid_argument);
  EXPECT_THROW(scalar({0.0, 0.5}, {1.0}), std::invalid_argument);
  EXPECT_THROW(StepPath(0, {0.0}, {}), std::invalid_argument);
}

TEST(StepPath, NormalizeDropsRedundantBreakpoints) {
  const StepPath x = scalar({0.0, 0.2, 0.4, 0.6}, {1, 1, 2, 2});
  const StepPath n = x.normalize();
  EXPECT_EQ(n.breakpoints(), (std::vector<double>{0.0, 0.4}));
  EXPECT_EQ(n.flat_values(), (std::vector<double>{1, 2}));
}

TEST(StepPath, LeftLimitMatchesEvalJustBefore) {
  std::mt19937_64 rng(11);
  for (int rep = 0; rep < 200; ++rep) {
    const StepPath x = random_path(rng, {.max_jumps = 10, .dim = 2});
    for (std::size_t i = 1; i < x.pieces(); ++i) {
      const double gap = x.time(i) - x.time(i - 1);
      for (double frac : {0.5, 1e-3, 1e-9}) {
        const double before = x.time(i) - frac * gap;
        if (before <= x.time(i - 1)) continue;
        EXPECT_EQ(x.left_limit(x.time(i)), x.eval(before));
      }
    }
  }
}

TEST(ThinGraph, ConstantIsOneSegment) {
  const ThinGraph g = thin_graph(StepPath::constant({1.0}));
  ASSERT_EQ(g.segments.size(), 1u);
  EXPECT_EQ(g.segments[0].from, (std::vector<double>{0, 1}));
  EXPECT_EQ(g.segments[0].to, (std::vector<double>{1, 1}));
}

TEST(ThinGraph, SingleJumpHasThreeSegments) {
  const ThinGraph g = thin_graph(scalar({0.0, 0.5}, {0.0, 1.0}));
  ASSERT_EQ(g.segments.size(), 3u);
  EXPECT_EQ(g.segments[0].from, (std::vector<double>{0, 0}));
  EXPECT_EQ(g.segments[0].to, (std::vector<double>{0.5, 0}));
  EXPECT_TRUE(g.segments[1].is_jump);
  EXPECT_EQ(g.segments[1].from, (std::vector<double>{0.5, 0}));
  EXPECT_EQ(g.segments[1].to, (std::vector<double>{0.5, 1}));
  EXPECT_EQ(g.segments[2].from, (std::vector<double>{0.5, 1}));
  EXPECT_EQ(g.segments[2].to, (std::vector<double>{1, 1}));
}

TEST(ThinGraph, VectorJumpIsStraightSegment) {
  const ThinGraph g = thin_graph(StepPath(2, {0.0, 0.5}, {0, 0, 1, 2}));
  ASSERT_EQ(g.segments.size(), 3u);
  EXPECT_EQ(g.segments[1].from, (std::vector<double>{0.5, 0, 0}));
  EXPECT_EQ(g.segments[1].to, (std::vector<double>{0.5, 1, 2}));
}

TEST(ThinGraph, JumpAtOneEndsThePolyline) {
  const ThinGraph g = thin_graph(scalar({0.0, 1.0}, {0.0, 3.0}));
  ASSERT_EQ(g.segments.size(), 2u);
  EXPECT_TRUE(g.segments.back().is_jump);
  EXPECT_EQ(g.segments.back().to, (std::vector<double>{1, 3}));
}

TEST(ThinGraph, ConnectedAndContainsVertices) {
  std::mt19937_64 rng(12);
  for (int rep = 0; rep < 200; ++rep) {
    const StepPath x = random_path(rng, {.max_jumps = 8, .dim = static_cast<std::size_t>(1 + rep % 3), .grid = rep % 2 ? 10 : 0});
    const ThinGraph g = thin_graph(x);
    ASSERT_FALSE(g.segments.empty());
    EXPECT_EQ(g.segments.front().from[0], 0.0);
    for (std::size_t s = 1; s < g.segments.size(); ++s) EXPECT_EQ(g.segments[s].from, g.segments[s - 1].to);
    const StepPath n = x.normalize();
    for (std::size_t i = 0; i < n.pieces(); ++i) {
      std::vector<double> v{n.time(i)};
      for (double c : n.value(i)) v.push_back(c);
      bool found = false;
      for (const auto& s : g.segments) found = found || s.from == v || s.to == v;
      EXPECT_TRUE(found);
    }
  }
}

TEST(MaxFunctional, EmptyMeasureIsZero) {
  const StepPath p = max_functional(PointMeasure{2, {}});
  EXPECT_EQ(p.dim(), 4u);
  EXPECT_EQ(p.pieces(), 1u);
  for (double v : p.flat_values()) EXPECT_EQ(v, 0.0);
}

TEST(MaxFunctional, PositiveAndNegativeParts) {
  const StepPath p = max_functional(PointMeasure{1, {{0.3, {2.0}}, {0.6, {-5.0}}}});
  EXPECT_EQ(p.eval(0.29), (std::vector<double>{0, 0}));
  EXPECT_EQ(p.eval(0.3), (std::vector<double>{2, 0}));
  EXPECT_EQ(p.eval(0.6), (std::vector<double>{2, 5}));
}

TEST(MaxFunctional, LaterSmallerPointIsAbsorbed) {
  const StepPath p = max_functional(PointMeasure{1, {{0.7, {1.0}}, {0.3, {2.0}}}});
  EXPECT_EQ(p.eval(0.5, 0), 2.0);
  EXPECT_EQ(p.eval(1.0, 0), 2.0);
}

TEST(MaxFunctional, MonotoneNonNegativeAndAbsorbing) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t d = 1 + rep % 3;
    PointMeasure m{d, {}};
    const int k = static_cast<int>(u(rng) * 15);
    for (int i = 0; i < k; ++i) {
      std::vector<double> x(d);
      for (double& v : x) v = (u(rng) - 0.5) * 10.0;
      m.points.push_back({u(rng), x});
    }
    const StepPath p = max_functional(m);
    EXPECT_TRUE(p.is_nondecreasing());
    for (double v : p.flat_values()) EXPECT_GE(v, 0.0);
    // A point dominated by the running maxima already in force changes nothing.
    const double t = 0.5 + 0.5 * u(rng);
    const auto level = p.eval(t);
    std::vector<double> small(d);
    for (std::size_t j = 0; j < d; ++j) {
      const double cap = std::min(level[2 * j], level[2 * j + 1]);
      small[j] = cap * 0.5 * (u(rng) < 0.5 ? 1.0 : -1.0);
    }
    PointMeasure more = m;
    more.points.push_back({t, small});
    EXPECT_EQ(max_functional(more).normalize(), p.normalize());
  }
}

TEST(MaxFunctional, ReplicateRepeatsBlock) {
  const PointMeasure m{2, {{0.5, {1.0, -2.0}}}};
  const StepPath p = max_functional(m, true);
  EXPECT_EQ(p.dim(), 8u);
  EXPECT_EQ(p.eval(0.6), (std::vector<double>{1, 0, 0, 2, 1, 0, 0, 2}));
  EXPECT_EQ(replicate(max_functional(m), 2), p);
}

TEST(RunningMax, SinglePoint) {
  const StepPath p = running_max(std::vector<double>{3.0}, 1, 1.0);
  EXPECT_EQ(p.pieces(), 1u);
  EXPECT_EQ(p.eval(0.0, 0), 3.0);
}

TEST(RunningMax, FloorIndexing) {
  const StepPath p = running_max(std::vector<double>{1, 3, 2, 5}, 1, 1.0);
  EXPECT_EQ(p.breakpoints(), (std::vector<double>{0.0, 0.5, 1.0}));
  EXPECT_EQ(p.flat_values(), (std::vector<double>{1, 3, 5}));
  EXPECT_EQ(p.eval(0.1, 0), 1.0);
  EXPECT_EQ(p.eval(0.99, 0), 3.0);
}

TEST(RunningMax, ComponentwiseWithScale) {
  const StepPath p = running_max(std::vector<double>{-1, 4, 2, 1}, 2, 2.0);
  EXPECT_EQ(p.eval(0.0), (std::vector<double>{-0.5, 2.0}));
  EXPECT_EQ(p.eval(0.99), (std::vector<double>{-0.5, 2.0}));
  EXPECT_EQ(p.eval(1.0), (std::vector<double>{1.0, 2.0}));
}

TEST(RunningMax, RejectsBadInput) {
  EXPECT_THROW(running_max(std::vector<double>{}, 1, 1.0), std::invalid_argument);
  EXPECT_THROW(running_max(std::vector<double>{1.0}, 1, 0.0), std::invalid_argument);
}

TEST(RunningMax, MatchesBruteForce) {
  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int rep = 0; rep < 1000; ++rep) {
    const std::size_t n = 1 + static_cast<std::size_t>(u(rng) * 50);
    const std::size_t d = 1 + static_cast<std::size_t>(u(rng) * 3);
    const double a = 0.5 + u(rng) * 3.0;
    std::vector<double> x(n * d);
    for (double& v : x) v = (u(rng) - 0.3) * 10.0;
    const StepPath p = running_max(x, d, a);
    EXPECT_TRUE(p.is_nondecreasing());
    for (int k = 0; k < 200; ++k) {
      // Mix random times with exact grid points i/n.
      const double t = k % 2 ? u(rng) : static_cast<double>(static_cast<std::size_t>(u(rng) * (n + 1))) / n;
      EXPECT_EQ(p.eval(std::min(t, 1.0)), brute_running_max(x, d, a, std::min(t, 1.0)));
    }
  }
}

TEST(Combine, MaxOfStaircases) {
  const StepPath parts[] = {scalar({0.0, 0.4}, {0, 1}), scalar({0.0, 0.6}, {0, 2})};
  const StepPath m = combine(parts, Reducer::max()).normalize();
  EXPECT_EQ(m.breakpoints(), (std::vector<double>{0.0, 0.4, 0.6}));
  EXPECT_EQ(m.flat_values(), (std::vector<double>{0, 1, 2}));
}

TEST(Combine, IdempotentMaxAndZeroDifference) {
  std::mt19937_64 rng(15);
  for (int rep = 0; rep < 100; ++rep) {
    const StepPath x = random_path(rng, {.max_jumps = 8, .dim = 2});
    const StepPath same[] = {x, x};
    EXPECT_EQ(combine(same, Reducer::max()).normalize(), x.normalize());
    const StepPath diff = combine(same, Reducer::difference()).normalize();
    EXPECT_EQ(diff.pieces(), 1u);
    for (double v : diff.flat_values()) EXPECT_EQ(v, 0.0);
  }
}

TEST(Combine, LinearAndBroadcast) {
  const StepPath parts[] = {StepPath(2, {0.0, 0.5}, {1, 2, 3, 4}), StepPath::constant({10.0})};
  const StepPath s = combine(parts, Reducer::linear({2.0, 1.0}));
  EXPECT_EQ(s.eval(0.7), (std::vector<double>{16, 18}));
}

TEST(Combine, DimensionMismatchThrows) {
  const StepPath parts[] = {StepPath(2, {0.0}, {1, 2}), StepPath(3, {0.0}, {1, 2, 3})};
  EXPECT_THROW(combine(parts, Reducer::max()), std::invalid_argument);
}

TEST(StepPathIO, CsvAndJsonRoundTripBitExact) {
  std::mt19937_64 rng(16);
  for (int rep = 0; rep < 200; ++rep) {
    const StepPath x = random_path(rng, {.max_jumps = 12, .dim = static_cast<std::size_t>(1 + rep % 3), .spread = 1e-3 + rep});
    EXPECT_EQ(from_csv(to_csv(x)), x);
    EXPECT_EQ(from_json(to_json(x)), x);
  }
}

TEST(StepPathIO, CsvHeader) {
  EXPECT_EQ(to_csv(StepPath(2, {0.0, 0.5}, {1, 2, 3, 4})), "t,comp1,comp2\n0,1,2\n0.5,3,4\n");
}

TEST(StepPathIO, ParseErrors) {
  EXPECT_THROW(from_csv(""), ParseError);
  EXPECT_THROW(from_csv("x,comp1\n0,1\n"), ParseError);
  EXPECT_THROW(from_csv("t,comp1\n0,abc\n"), ParseError);
  EXPECT_THROW(from_csv("t,comp1\n0,1,2\n"), ParseError);
  EXPECT_THROW(from_csv("t,comp1\n0.2,1\n"), ParseError);
  EXPECT_THROW(from_json("{\"dim\":1}"), ParseError);
  EXPECT_THROW(read_csv_file("/nonexistent/file.csv"), ParseError);
}
