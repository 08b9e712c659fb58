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

#include "abc_hmm/forward.hpp"
#include "abc_hmm/model_config.hpp"
#include "abc_hmm/simulate.hpp"

namespace {

using namespace abc_hmm;

const LoadedModel& gaussian() {
  static const LoadedModel loaded = parse_model_config(
      R"({"model":"finite_gaussian","hyper":{"states":3,"free":["mean_scale","sd","stay_prob"]}})");
  return loaded;
}

void BM_ForwardLoglik(benchmark::State& state) {
  const auto& loaded = gaussian();
  const std::vector<double> theta{1.0, 1.0, 0.7};
  const auto n = static_cast<std::size_t>(state.range(0));
  const Trajectory data = simulate(*loaded.model, ParameterVector(theta, loaded.box), n, 1);
  std::optional<PerturbationSpec> pert;
  if (state.range(1) != 0) {
    pert = PerturbationSpec::uniform_ball(0.5);
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(forward_loglik(*loaded.model, theta, data, pert));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ForwardLoglik)->ArgsProduct({{1000, 10000}, {0, 1}});

void BM_ForwardScore(benchmark::State& state) {
  const auto& loaded = gaussian();
  const std::vector<double> theta{1.0, 1.0, 0.7};
  const auto n = static_cast<std::size_t>(state.range(0));
  const Trajectory data = simulate(*loaded.model, ParameterVector(theta, loaded.box), n, 1);
  const auto pert = PerturbationSpec::uniform_ball(0.5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(forward_score(*loaded.model, theta, data, pert));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ForwardScore)->Arg(1000)->Arg(10000);

}  // namespace
