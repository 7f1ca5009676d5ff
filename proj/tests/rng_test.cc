//
// Copyright 2026 The pmlgame Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "pmlgame/rng.h"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

namespace pmlgame {
namespace {

TEST(RngTest, SameSeedSameStream) {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.NextU64(), b.NextU64());
}

TEST(RngTest, Uniform01IsOpenInterval) {
  Rng rng(3);
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.Uniform01();
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

TEST(RngTest, LaplaceMeanNearZero) {
  Rng rng(7);
  double sum = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) sum += rng.Laplace(1.0);
  // Variance 2, so three standard errors is about 0.013.
  EXPECT_LT(std::fabs(sum / n), 0.02);
}

TEST(RngTest, LaplaceMeanAbsoluteDeviationIsScale) {
  Rng rng(8);
  double sum = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) sum += std::fabs(rng.Laplace(2.0));
  EXPECT_NEAR(sum / n, 2.0, 0.03);
}

TEST(RngTest, LaplaceZeroScaleIsZero) {
  Rng rng(9);
  EXPECT_EQ(rng.Laplace(0.0), 0.0);
}

TEST(RngTest, CategoricalFollowsWeights) {
  Rng rng(11);
  const std::vector<double> w = {0.1, 0.0, 0.6, 0.3};
  std::vector<int> counts(4, 0);
  const int n = 100000;
  for (int i = 0; i < n; ++i) ++counts[rng.Categorical(w)];
  EXPECT_EQ(counts[1], 0);
  for (int k : {0, 2, 3}) {
    EXPECT_NEAR(counts[k] / static_cast<double>(n), w[k], 0.01);
  }
}

TEST(RngTest, DerivedSeedsDiffer) {
  EXPECT_NE(DeriveSeed(1, 0), DeriveSeed(1, 1));
  EXPECT_NE(DeriveSeed(1, 0), DeriveSeed(2, 0));
  EXPECT_EQ(DeriveSeed(5, 9), DeriveSeed(5, 9));
}

TEST(RngTest, SeedHashIsOrderSensitive) {
  const std::vector<std::uint64_t> a = {1, 2, 3}, b = {3, 2, 1};
  EXPECT_NE(SeedHash(a), SeedHash(b));
  EXPECT_EQ(SeedHash(a), SeedHash(std::vector<std::uint64_t>{1, 2, 3}));
}

}  // namespace
}  // namespace pmlgame
