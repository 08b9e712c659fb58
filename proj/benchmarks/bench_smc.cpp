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

#include "abc_hmm/model_config.hpp"
#include "abc_hmm/simulate.hpp"
#include "abc_hmm/smc_abc.hpp"

namespace {

using namespace abc_hmm;

void BM_SmcAbcLikelihood(benchmark::State& state) {
  const LoadedModel loaded = parse_model_config(
      R"({"model":"finite_gaussian","hyper":{"states":2,"free":["mean_scale","sd"]}})");
  const ParameterVector theta({1.0, 1.0}, loaded.box);
  const Trajectory data = simulate(*loaded.model, theta, 100, 3);
  SmcOptions options;
  options.particles = static_cast<std::size_t>(state.range(0));
  options.threads = static_cast<std::size_t>(state.range(1));
  options.seed = 5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(smc_abc_likelihood(*loaded.model, theta, data,
                                                PerturbationSpec::uniform_ball(0.5), options));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * 100);
}
BENCHMARK(BM_SmcAbcLikelihood)
    ->ArgsProduct({{1000, 10000}, {1, 4}})
    ->Unit(benchmark::kMillisecond);

void BM_SmcAlphaStable(benchmark::State& state) {
  const LoadedModel loaded = parse_model_config(R"({"model":"two_state_alpha_stable"})");
  const ParameterVector theta({1.0, 0.0}, loaded.box);
  const Trajectory data = simulate(*loaded.model, theta, 100, 3);
  SmcOptions options;
  options.particles = static_cast<std::size_t>(state.range(0));
  options.seed = 5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(smc_abc_likelihood(*loaded.model, theta, data,
                                                PerturbationSpec::uniform_ball(1.0), options));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * 100);
}
BENCHMARK(BM_SmcAlphaStable)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

}  // namespace
