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

#include <vector>

#include "abc_hmm/errors.hpp"
#include "abc_hmm/parameter.hpp"

namespace abc_hmm {
namespace {

TEST(Box, ContainsAndClamp) {
  const Box box{{0.0, 1.0}, {-2.0, 2.0}};
  EXPECT_EQ(box.dim(), 2U);
  EXPECT_TRUE(box.contains(std::vector<double>{0.0, 2.0}));
  EXPECT_FALSE(box.contains(std::vector<double>{1.1, 0.0}));
  EXPECT_FALSE(box.contains(std::vector<double>{0.5}));
  EXPECT_EQ(box.clamp(std::vector<double>{1.5, -3.0}), (std::vector<double>{1.0, -2.0}));
  EXPECT_EQ(box.center(), (std::vector<double>{0.5, 0.0}));
}

TEST(Box, RejectsReversedInterval) { EXPECT_THROW((Box{{1.0, 0.0}}), DomainError); }

TEST(ParameterVector, EnforcesDimensionAndBox) {
  const Box box{{0.0, 3.0}};
  EXPECT_NO_THROW(ParameterVector({3.0}, box));
  EXPECT_THROW(ParameterVector({3.5}, box), DomainError);
  EXPECT_THROW(ParameterVector({1.0, 1.0}, box), DomainError);
  EXPECT_THROW(ParameterVector({}, Box{}), DomainError);
}

TEST(ParameterVector, WithValuesKeepsTheBox) {
  const ParameterVector theta({1.0}, Box{{0.0, 3.0}});
  const ParameterVector moved = theta.with_values({2.0});
  EXPECT_EQ(moved[0], 2.0);
  EXPECT_EQ(moved.box(), theta.box());
  EXPECT_THROW((void)theta.with_values({4.0}), DomainError);
}

}  // namespace
}  // namespace abc_hmm
