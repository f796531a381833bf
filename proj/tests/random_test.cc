// Copyright 2026 The vqaprobe Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <vector>

#include "oracle.h"
#include "vqaprobe/random.h"

namespace vqaprobe {
namespace {

TEST(RngTest, DeriveIsStableAndLabelSensitive) {
  Rng a = Rng::Derive(7, {"rephrase", "Q1", "2400001"});
  Rng b = Rng::Derive(7, {"rephrase", "Q1", "2400001"});
  Rng c = Rng::Derive(7, {"rephrase", "Q1", "2400002"});
  Rng d = Rng::Derive(8, {"rephrase", "Q1", "2400001"});
  const uint64_t first = a.Next();
  EXPECT_EQ(first, b.Next());
  EXPECT_NE(first, c.Next());
  EXPECT_NE(first, d.Next());
}

TEST(RngTest, UniformIsUniform) {
  Rng rng(1);
  std::vector<long> counts(7, 0);
  for (int i = 0; i < 70000; ++i) ++counts[rng.Uniform(7)];
  EXPECT_LT(oracle::ChiSquare(counts, std::vector<double>(7, 1.0 / 7)),
            oracle::ChiSquareCritical(6));
  EXPECT_THROW(rng.Uniform(0), Error);
}

TEST(RngTest, ShuffleCoversPermutationsEvenly) {
  Rng rng(2);
  std::map<std::vector<int>, long> seen;
  for (int i = 0; i < 60000; ++i) {
    std::vector<int> v = {0, 1, 2};
    rng.Shuffle(v);
    ++seen[v];
  }
  ASSERT_EQ(seen.size(), 6u);
  std::vector<long> counts;
  for (const auto& [perm, n] : seen) counts.push_back(n);
  EXPECT_LT(oracle::ChiSquare(counts, std::vector<double>(6, 1.0 / 6)),
            oracle::ChiSquareCritical(5));
}

TEST(RngTest, WeightedFollowsWeights) {
  Rng rng(3);
  const std::vector<double> weights = {1.0, 0.0, 3.0, 6.0};
  std::vector<long> counts(4, 0);
  for (int i = 0; i < 50000; ++i) ++counts[rng.Weighted(weights)];
  EXPECT_EQ(counts[1], 0);
  EXPECT_LT(oracle::ChiSquare(counts, {0.1, 0.0, 0.3, 0.6}), oracle::ChiSquareCritical(2));
}

TEST(RngTest, WeightedAllZeroReturnsSize) {
  Rng rng(4);
  const std::vector<double> zeros = {0.0, 0.0};
  EXPECT_EQ(rng.Weighted(zeros), 2u);
  EXPECT_EQ(rng.Weighted(std::vector<double>{}), 0u);
}

TEST(RngTest, UniformRealInUnitInterval) {
  Rng rng(5);
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.UniformReal();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

}  // namespace
}  // namespace vqaprobe
