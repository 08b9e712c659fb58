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


#include <benchmark/benchmark.h>

#include <vector>

#include "abc_hmm/resample.hpp"

namespace {

using namespace abc_hmm;

std::vector<double> weights(std::size_t n) {
  Rng rng({1, StreamTag::kUser, 0, 0});
  std::vector<double> w(n);
  for (auto& v : w) {
    v = rng.uniform01() < 0.3 ? 0.0 : 1.0;
  }
  return w;
}

void BM_ResampleIndices(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto scheme =
      state.range(1) == 0 ? ResamplingScheme::kMultinomial : ResamplingScheme::kSystematic;
  const std::vector<double> w = weights(n);
  Rng rng({2, StreamTag::kUser, 0, 0});
  for (auto _ : state) {
    benchmark::DoNotOptimize(resample_indices(w, scheme, rng, n));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ResampleIndices)->ArgsProduct({{1000, 100000}, {0, 1}});

void BM_EffectiveSampleSize(benchmark::State& state) {
  const std::vector<double> w = weights(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(effective_sample_size(w));
  }
}
BENCHMARK(BM_EffectiveSampleSize)->Arg(100000);

}  // namespace
