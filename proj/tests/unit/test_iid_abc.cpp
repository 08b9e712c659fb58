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
#include <vector>

#include "abc_hmm/iid_abc.hpp"
#include "abc_hmm/simulate.hpp"
#include "abc_hmm/summary.hpp"
#include "test_support.hpp"

namespace abc_hmm {
namespace {

Trajectory plus_minus_data(std::size_t n, double theta, std::uint64_t seed) {
  const auto loaded = testing::iid_pm();
  return simulate(*loaded.model, ParameterVector({theta}, loaded.box), n, seed);
}

TEST(IidAbc, ThetaZeroCapturesEverything) {
  const Trajectory data = plus_minus_data(100, 1.0, 7);
  EXPECT_EQ(iid_abc_likelihood(0.0, data, PerturbationSpec::uniform_ball(1.5)), 1.0);
  EXPECT_EQ(iid_abc_log_likelihood(0.0, data, PerturbationSpec::uniform_ball(1.5)), 0.0);
}

TEST(IidAbc, TrueThetaGivesExactPowerOfHalf) {
  for (const std::size_t n : {1U, 10U, 100U, 1000U}) {
    const Trajectory data = plus_minus_data(n, 1.0, 11);
    const auto pert = PerturbationSpec::uniform_ball(1.5);
    EXPECT_EQ(iid_abc_likelihood(1.0, data, pert), std::ldexp(1.0, -static_cast<int>(n)));
    EXPECT_NEAR(iid_abc_log_likelihood(1.0, data, pert),
                -static_cast<double>(n) * std::log(2.0), 1e-9);
  }
}

TEST(IidAbc, WideBallsCaptureBothSupportPoints) {
  const Trajectory data = plus_minus_data(50, 0.7, 3);
  EXPECT_EQ(iid_abc_likelihood(0.7, data, PerturbationSpec::uniform_ball(1.4)), 1.0);
}

TEST(IidAbc, DirectTermFormula) {
  const Trajectory data = make_scalar_trajectory({1.0, -1.0, 1.0});
  const auto pert = PerturbationSpec::uniform_ball(0.5);
  // theta = 1.2: each ball around +/-1 holds exactly one of +/-1.2.
  EXPECT_EQ(iid_abc_likelihood(1.2, data, pert), 0.125);
  // theta = 2: neither support point is within 0.5.
  EXPECT_EQ(iid_abc_likelihood(2.0, data, pert), 0.0);
  EXPECT_EQ(iid_abc_log_likelihood(2.0, data, pert), -INFINITY);
}

TEST(IidAbc, AbsoluteSummaryRestoresIdentifiability) {
  const Trajectory data = apply_summary(plus_minus_data(80, 1.0, 5), absolute_summary());
  const auto pert = PerturbationSpec::uniform_ball(0.5);
  const SummaryStatistic s = absolute_summary();
  EXPECT_EQ(iid_abc_likelihood(1.0, data, pert, s), 1.0);
  EXPECT_EQ(iid_abc_likelihood(0.0, data, pert, s), 0.0);
  // Maximisers form [theta* - eps, theta* + eps], which contains theta*.
  EXPECT_EQ(iid_abc_likelihood(1.5, data, pert, s), 1.0);
  EXPECT_EQ(iid_abc_likelihood(1.51, data, pert, s), 0.0);
}

}  // namespace
}  // namespace abc_hmm
