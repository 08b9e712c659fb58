// Copyright 2026 The abc-hmm Authors
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

#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <vector>

#include "abc_hmm/rng.hpp"

namespace abc_hmm {
namespace {

TEST(Rng, SameKeySameStream) {
  Rng a({42, StreamTag::kSimulate, 3, 7});
  Rng b({42, StreamTag::kSimulate, 3, 7});
  for (int i = 0; i < 100; ++i) {
    EXPECT_EQ(a(), b());
  }
}

TEST(Rng, EveryKeyFieldSeparatesStreams) {
  const std::vector<StreamKey> keys = {{42, StreamTag::kSimulate, 3, 7},
                                       {43, StreamTag::kSimulate, 3, 7},
                                       {42, StreamTag::kNoise, 3, 7},
                                       {42, StreamTag::kSimulate, 4, 7},
                                       {42, StreamTag::kSimulate, 3, 8}};
  std::set<std::uint64_t> first;
  for (const auto& key : keys) {
    Rng rng(key);
    first.insert(rng());
  }
  EXPECT_EQ(first.size(), keys.size());
}

TEST(Rng, UniformMoments) {
  Rng rng({1, StreamTag::kUser, 0, 0});
  const int n = 200000;
  double sum = 0.0;
  double sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform01();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
    sq += u * u;
  }
  const double mean = sum / n;
  EXPECT_NEAR(mean, 0.5, 4.0 * std::sqrt(1.0 / 12.0 / n));
  EXPECT_NEAR(sq / n - mean * mean, 1.0 / 12.0, 2e-3);
}

TEST(Rng, OpenUniformNeverHitsEndpoints) {
  Rng rng({5, StreamTag::kUser, 0, 0});
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.uniform_open();
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

TEST(Rng, NormalAndExponentialMoments) {
  Rng rng({9, StreamTag::kUser, 1, 2});
  const int n = 200000;
  double ns = 0.0;
  double nsq = 0.0;
  double es = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = rng.normal();
    ns += z;
    nsq += z * z;
    es += rng.exponential();
  }
  EXPECT_NEAR(ns / n, 0.0, 4.0 / std::sqrt(n));
  EXPECT_NEAR(nsq / n, 1.0, 4.0 * std::sqrt(2.0 / n));
  EXPECT_NEAR(es / n, 1.0, 4.0 / std::sqrt(n));
}

TEST(Rng, DeriveSeedIsDeterministicAndSpread) {
  EXPECT_EQ(derive_seed(7, StreamTag::kReplicate, 0), derive_seed(7, StreamTag::kReplicate, 0));
  std::set<std::uint64_t> seeds;
  for (std::uint64_t i = 0; i < 1000; ++i) {
    seeds.insert(derive_seed(7, StreamTag::kReplicate, i));
  }
  seeds.insert(derive_seed(7, StreamTag::kNoise, 0));
  seeds.insert(derive_seed(8, StreamTag::kReplicate, 0));
  EXPECT_EQ(seeds.size(), 1002U);
}

TEST(Rng, WorksWithStandardDistributions) {
  Rng rng({3, StreamTag::kUser, 0, 0});
  std::uniform_int_distribution<int> dist(1, 6);
  for (int i = 0; i < 1000; ++i) {
    const int v = dist(rng);
    ASSERT_GE(v, 1);
    ASSERT_LE(v, 6);
  }
}

}  // namespace
}  // namespace abc_hmm
