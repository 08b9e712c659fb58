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

#include "abc_hmm/trajectory.hpp"

#include "abc_hmm/errors.hpp"

namespace abc_hmm {

Trajectory::Trajectory(std::size_t obs_dim, std::vector<double> observations,
                       std::optional<std::vector<double>> hidden, std::size_t state_dim,
                       TrajectoryMeta meta)
    : obs_dim_(obs_dim),
      state_dim_(state_dim),
      observations_(std::move(observations)),
      hidden_(std::move(hidden)),
      meta_(std::move(meta)) {
  if (obs_dim_ == 0 || state_dim_ == 0) {
    throw DomainError("Trajectory: dimensions must be positive");
  }
  if (observations_.empty() || observations_.size() % obs_dim_ != 0) {
    throw DomainError("Trajectory: need n >= 1 complete observation rows");
  }
  if (hidden_ && hidden_->size() != size() * state_dim_) {
    throw DomainError("Trajectory: hidden states do not match the observation count");
  }
}

Trajectory make_scalar_trajectory(std::vector<double> observations) {
  return Trajectory(1, std::move(observations));
}

}  // namespace abc_hmm
