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

#include "abc_hmm/simulate.hpp"

#include "abc_hmm/errors.hpp"
#include "abc_hmm/rng.hpp"

namespace abc_hmm {

Trajectory simulate(const HiddenMarkovModel& model, const ParameterVector& theta, std::size_t n,
                    std::uint64_t seed) {
  if (n == 0) {
    throw DomainError("simulate: n must be at least 1");
  }
  if (theta.dim() != model.param_dim()) {
    throw DomainError("simulate: theta has dimension " + std::to_string(theta.dim()) +
                      ", model '" + model.name() + "' expects " +
                      std::to_string(model.param_dim()));
  }
  const std::size_t p = model.state_space().storage_dim();
  const std::size_t m = model.obs_dim();
  Rng rng(StreamKey{seed, StreamTag::kSimulate, 0, 0});

  std::vector<double> hidden(n * p);
  std::vector<double> observations(n * m);
  std::vector<double> previous(p);
  model.sample_initial(theta.values(), rng, previous);
  for (std::size_t k = 0; k < n; ++k) {
    std::span<double> current(hidden.data() + k * p, p);
    model.sample_transition(theta.values(), previous, rng, current);
    model.sample_observation(theta.values(), current, rng,
                             std::span<double>(observations.data() + k * m, m));
    std::copy(current.begin(), current.end(), previous.begin());
  }
  TrajectoryMeta meta;
  meta.seed = seed;
  meta.model = model.name();
  meta.theta.assign(theta.values().begin(), theta.values().end());
  return Trajectory(m, std::move(observations), std::move(hidden), p, std::move(meta));
}

Trajectory noisify(const Trajectory& trajectory, const PerturbationSpec& pert,
                   std::uint64_t seed) {
  if (trajectory.meta().noise_epsilon) {
    throw UsageError("noisify: trajectory is already noisified");
  }
  const std::size_t n = trajectory.size();
  const std::size_t m = trajectory.obs_dim();
  std::vector<double> observations(trajectory.observations().begin(),
                                   trajectory.observations().end());
  if (pert.epsilon() > 0.0) {
    Rng rng(StreamKey{seed, StreamTag::kNoise, 0, 0});
    std::vector<double> z(m);
    for (std::size_t k = 0; k < n; ++k) {
      pert.sample_unit_noise(rng, z);
      for (std::size_t i = 0; i < m; ++i) {
        observations[k * m + i] += pert.epsilon() * z[i];
      }
    }
  }
  TrajectoryMeta meta = trajectory.meta();
  meta.noise_epsilon = pert.epsilon();
  meta.noise_kernel = pert.kernel_name();
  return Trajectory(m, std::move(observations), trajectory.hidden(), trajectory.state_dim(),
                    std::move(meta));
}

}  // namespace abc_hmm
