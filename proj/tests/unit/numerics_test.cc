// Copyright 2026 The tgtriage Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tgtriage/numerics.h"

#include <cmath>
#include <numeric>

#include <gtest/gtest.h>

#include "test_util.h"
#include "tgtriage/error.h"

namespace tgtriage::numerics {
namespace {

std::uint64_t ParseU64(const nlohmann::json &j) {
  return std::stoull(j.get<std::string>());
}

TEST(Prng, MatchesSplitMixReference) {
  // Seed 1234567 is the published SplitMix64 test vector.
  EXPECT_EQ(Prng(1234567).Next(), 6457827717110365317ULL);
  const auto golden = testing::LoadFixtureJson("prng_goldens.json");
  for (const auto &e : golden["next"]) {
    Prng rng(ParseU64(e["seed"]));
    for (const auto &v : e["values"]) EXPECT_EQ(rng.Next(), ParseU64(v));
  }
  for (const auto &e : golden["uniform"]) {
    Prng rng(ParseU64(e["seed"]));
    for (const auto &v : e["values"]) EXPECT_EQ(rng.Uniform(), v.get<double>());
  }
  for (const auto &e : golden["uniform_int"]) {
    Prng rng(ParseU64(e["seed"]));
    for (std::size_t k = 0; k < e["bounds"].size(); ++k) {
      EXPECT_EQ(rng.UniformInt(ParseU64(e["bounds"][k])),
                ParseU64(e["values"][k]));
    }
  }
  for (const auto &e : golden["shuffle"]) {
    Prng rng(ParseU64(e["seed"]));
    std::vector<int> items(10);
    std::iota(items.begin(), items.end(), 0);
    Shuffle(std::span<int>(items), rng);
    EXPECT_EQ(items, e["permutation"].get<std::vector<int>>());
  }
}

TEST(Prng, RangesAndMoments) {
  Prng rng(17);
  double sum = 0, sum_sq = 0;
  constexpr int kDraws = 200000;
  for (int i = 0; i < kDraws; ++i) {
    const double u = rng.Uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    ASSERT_LT(rng.UniformInt(7), 7u);
    const double z = rng.Normal();
    sum += z;
    sum_sq += z * z;
  }
  EXPECT_NEAR(sum / kDraws, 0.0, 0.01);
  EXPECT_NEAR(sum_sq / kDraws, 1.0, 0.02);
}

TEST(Matrix, MatMulAndIdentity) {
  const Matrix a = {{1, 2}, {3, 4}, {5, 6}};
  const Matrix b = {{1, 0, 2}, {0, 1, 3}};
  const Matrix expected = {{1, 2, 8}, {3, 4, 18}, {5, 6, 28}};
  EXPECT_EQ(MatMul(a, b), expected);
  const Matrix m = {{1, 2, 3}, {4, 5, 6}, {7, 8, 9}};
  EXPECT_EQ(MatMul(Matrix::Identity(3), m), m);
  EXPECT_EQ(MatMul(m, Matrix::Identity(3)), m);
  EXPECT_THROW(MatMul(a, a), DimensionError);
  EXPECT_THROW(Matrix(2, 2, std::vector<double>{1, 2, 3}), DimensionError);
  EXPECT_EQ(a.Transposed(), (Matrix{{1, 3, 5}, {2, 4, 6}}));
}

TEST(Matrix, AllFinite) {
  Matrix m(2, 2, 1.0);
  EXPECT_TRUE(m.AllFinite());
  m(1, 0) = std::nan("");
  EXPECT_FALSE(m.AllFinite());
}

TEST(Adam, FirstStepIsSignTimesRate) {
  std::vector<double> p = {1.0, -2.0, 0.5};
  const std::vector<double> g = {0.3, -4.0, 0.0};
  AdamState state(3);
  AdamStep(p, g, state);
  EXPECT_NEAR(p[0], 1.0 - 0.001 * 0.3 / (0.3 + 1e-8), 1e-15);
  EXPECT_NEAR(p[1], -2.0 + 0.001 * 4.0 / (4.0 + 1e-8), 1e-15);
  EXPECT_EQ(p[2], 0.5);
  EXPECT_EQ(state.t, 1);
  std::vector<double> wrong(2);
  EXPECT_THROW(AdamStep(p, wrong, state), DimensionError);
}

TEST(Adam, SecondStepHandComputed) {
  std::vector<double> p = {0.0};
  AdamState state(1);
  AdamStep(p, std::vector<double>{1.0}, state);
  AdamStep(p, std::vector<double>{-1.0}, state);
  // m2 = 0.9*0.1 - 0.1 = -0.01, v2 = 0.999*0.001 + 0.001 = 0.001999.
  const double mhat = -0.01 / (1 - 0.81);
  const double vhat = 0.001999 / (1 - 0.998001);
  const double first = -0.001 * 1.0 / (1.0 + 1e-8);
  const double expected = first - 0.001 * mhat / (std::sqrt(vhat) + 1e-8);
  EXPECT_NEAR(p[0], expected, 1e-15);
}

TEST(Adam, MinimizesQuadratic) {
  std::vector<double> p = {3.0, -2.0};
  AdamState state(2);
  AdamConfig config;
  config.learning_rate = 0.05;
  for (int i = 0; i < 2000; ++i) {
    std::vector<double> g = {2 * p[0], 2 * p[1]};
    AdamStep(p, g, state, config);
  }
  EXPECT_NEAR(p[0], 0.0, 1e-3);
  EXPECT_NEAR(p[1], 0.0, 1e-3);
}

TEST(FiniteDifference, QuadraticAndCubic) {
  const std::vector<double> x = {0.5, -1.5, 2.0};
  auto f = [](std::span<const double> v) {
    return v[0] * v[0] + 3 * v[1] * v[2] + v[2] * v[2] * v[2];
  };
  const auto g = FiniteDifferenceGradient(f, x);
  EXPECT_NEAR(g[0], 1.0, 1e-8);
  EXPECT_NEAR(g[1], 6.0, 1e-8);
  EXPECT_NEAR(g[2], 3 * -1.5 + 3 * 4.0, 1e-6);
  const std::vector<std::size_t> coords = {2};
  const auto partial = FiniteDifferenceGradient(f, x, coords);
  ASSERT_EQ(partial.size(), 1u);
  EXPECT_NEAR(partial[0], g[2], 1e-12);
  auto bad = [](std::span<const double>) { return std::nan(""); };
  EXPECT_THROW(FiniteDifferenceGradient(bad, x), NumericalError);
}

TEST(Sigmoid, StableAtExtremes) {
  EXPECT_EQ(Sigmoid(0.0), 0.5);
  EXPECT_EQ(Sigmoid(-1000.0), 0.0);
  EXPECT_EQ(Sigmoid(1000.0), 1.0);
  EXPECT_NEAR(Sigmoid(2.0) + Sigmoid(-2.0), 1.0, 1e-15);
}

}  // namespace
}  // namespace tgtriage::numerics
