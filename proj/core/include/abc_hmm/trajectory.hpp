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

#ifndef ABC_HMM_TRAJECTORY_HPP
#define ABC_HMM_TRAJECTORY_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace abc_hmm {

struct TrajectoryMeta {
  std::uint64_t seed = 0;
  std::string model;
  std::vector<double> theta;
  /// Present iff the observations were noisified.
  std::optional<double> noise_epsilon;
  std::optional<std::string> noise_kernel;
  /// Name of the per-observation summary applied, if any.
  std::optional<std::string> summary;

  friend bool operator==(const TrajectoryMeta&, const TrajectoryMeta&) = default;
};

/// Observations Y_1..Y_n (n x m, row-major) with optional hidden states X_1..X_n.
class Trajectory {
 public:
  /// Throws DomainError unless n >= 1 and the buffers are consistent with the dimensions.
  Trajectory(std::size_t obs_dim, std::vector<double> observations,
             std::optional<std::vector<double>> hidden = std::nullopt, std::size_t state_dim = 1,
             TrajectoryMeta meta = {});

  [[nodiscard]] std::size_t size() const noexcept { return observations_.size() / obs_dim_; }
  [[nodiscard]] std::size_t obs_dim() const noexcept { return obs_dim_; }
  [[nodiscard]] std::size_t state_dim() const noexcept { return state_dim_; }

  [[nodiscard]] std::span<const double> observation(std::size_t k) const {
    return std::span<const double>(observations_).subspan(k * obs_dim_, obs_dim_);
  }
  [[nodiscard]] std::span<const double> observations() const noexcept { return observations_; }

  [[nodiscard]] bool has_hidden() const noexcept { return hidden_.has_value(); }
  [[nodiscard]] std::span<const double> hidden_state(std::size_t k) const {
    return std::span<const double>(*hidden_).subspan(k * state_dim_, state_dim_);
  }
  [[nodiscard]] const std::optional<std::vector<double>>& hidden() const noexcept {
    return hidden_;
  }

  [[nodiscard]] const TrajectoryMeta& meta() const noexcept { return meta_; }
  [[nodiscard]] TrajectoryMeta& meta() noexcept { return meta_; }

  friend bool operator==(const Trajectory&, const Trajectory&) = default;

 private:
  std::size_t obs_dim_;
  std::size_t state_dim_;
  std::vector<double> observations_;
  std::optional<std::vector<double>> hidden_;
  TrajectoryMeta meta_;
};

/// Convenience constructor for scalar observations.
Trajectory make_scalar_trajectory(std::vector<double> observations);

}  // namespace abc_hmm

#endif  // ABC_HMM_TRAJECTORY_HPP
