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

#ifndef ABC_HMM_RESAMPLE_HPP
#define ABC_HMM_RESAMPLE_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "abc_hmm/rng.hpp"

namespace abc_hmm {

/// N weighted particles at one SMC step.
struct ParticleEnsemble {
  std::size_t state_dim = 1;
  std::size_t obs_dim = 1;
  /// N x state_dim, row-major.
  std::vector<double> states;
  /// N x obs_dim pseudo-observations, row-major.
  std::vector<double> pseudo_obs;
  std::vector<double> raw_weights;
  std::size_t step = 0;

  [[nodiscard]] std::size_t size() const noexcept { return raw_weights.size(); }
};

enum class ResamplingScheme { kMultinomial, kSystematic, kNone };

/// When and how to resample. A threshold of nullopt resamples at every step; otherwise the
/// ensemble is resampled when ESS < threshold * N.
struct ResamplingPolicy {
  ResamplingScheme scheme = ResamplingScheme::kMultinomial;
  std::optional<double> ess_threshold;

  static ResamplingPolicy multinomial_always() { return {}; }
  static ResamplingPolicy systematic_ess(double threshold) {
    return {ResamplingScheme::kSystematic, threshold};
  }
  /// Pure importance sampling: weights accumulate and particles are never resampled.
  static ResamplingPolicy never() { return {ResamplingScheme::kNone, std::nullopt}; }

  [[nodiscard]] bool should_resample(double ess, std::size_t n) const noexcept {
    if (scheme == ResamplingScheme::kNone) {
      return false;
    }
    return !ess_threshold || ess < *ess_threshold * static_cast<double>(n);
  }
  [[nodiscard]] std::string to_string() const;
};

/// Parses "multinomial", "systematic" or "systematic:<threshold>" and "none".
ResamplingPolicy parse_resampling_policy(const std::string& text);

/// Effective sample size (sum w)^2 / sum w^2; zero when every weight is zero.
double effective_sample_size(std::span<const double> weights);

/// Draws `count` ancestor indices, in nondecreasing order, proportional to `weights`.
/// Throws DomainError when no weight is positive.
std::vector<std::size_t> resample_indices(std::span<const double> weights,
                                          ResamplingScheme scheme, Rng& rng, std::size_t count);

/// Resamples states and pseudo-observations; the returned raw weights are all 1.
ParticleEnsemble resample(const ParticleEnsemble& ensemble, const ResamplingPolicy& policy,
                          Rng& rng);

}  // namespace abc_hmm

#endif  // ABC_HMM_RESAMPLE_HPP
