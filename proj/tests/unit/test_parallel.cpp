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

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <vector>

#include "abc_hmm/parallel.hpp"

namespace abc_hmm {
namespace {

TEST(Parallel, VisitsEveryIndexOnce) {
  for (const std::size_t threads : {1U, 2U, 7U}) {
    std::vector<int> hits(1000, 0);
    parallel_for(hits.size(), [&](std::size_t i) { hits[i] += 1; }, threads);
    for (const int h : hits) {
      ASSERT_EQ(h, 1);
    }
  }
}

TEST(Parallel, RethrowsWorkerException) {
  std::atomic<int> done{0};
  EXPECT_THROW(parallel_for(
                   50,
                   [&](std::size_t i) {
                     if (i == 17) {
                       throw std::runtime_error("boom");
                     }
                     ++done;
                   },
                   4),
               std::runtime_error);
}

TEST(Parallel, EnvironmentCapsDefaultThreads) {
  ::setenv("ABC_HMM_THREADS", "3", 1);
  EXPECT_EQ(default_thread_count(), 3U);
  ::setenv("ABC_HMM_THREADS", "bogus", 1);
  EXPECT_GE(default_thread_count(), 1U);
  ::unsetenv("ABC_HMM_THREADS");
  EXPECT_GE(default_thread_count(), 1U);
}

TEST(Parallel, ZeroCountIsANoOp) {
  parallel_for(0, [](std::size_t) { FAIL(); }, 4);
}

}  // namespace
}  // namespace abc_hmm
