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

#ifndef ABC_HMM_SMC_ABC_HPP
#define ABC_HMM_SMC_ABC_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "abc_hmm/model.hpp"
#include "abc_hmm/parameter.hpp"
#include "abc_hmm/perturbation.hpp"
#include "abc_hmm/resample.hpp"
#include "abc_hmm/trajectory.hpp"

namespace abc_hmm {

struct SmcOptions {
  std::size_t particles = 1000;
  ResamplingPolicy resampling = ResamplingPolicy::multinomial_always();
  std::uint64_t seed = 0;
  /// Workers for propagation and weighting; 1 keeps everything on the calling thread.
  std::size_t threads = 1;
};

/// Particle estimate of the ABC likelihood p^eps(y_1, ..., y_n) at a fixed theta.
struct LikelihoodEstimate {
  /// Log of the product of per-step acceptance rates; -inf after a collapse.
  double log_value = 0.0;
  /// Weighted mean raw weight at each processed step.
  std::vector<double> step_acceptance;
  /// 1-based step at which every weight was zero.
  std::optional<std::size_t> collapsed_at;
  std::vector<double> ess_trace;
  /// Delta-method standard-error proxy for log_value from the per-step weight spread.
  double se_proxy = 0.0;
  /// log of the weight normaliser (ball volume, or eps^m for a smoothing kernel); subtracting
  /// n times this from log_value gives the perturbed-model log-density.
  double log_normalizer = 0.0;
  std::size_t n = 0;
  std::size_t particles = 0;
  double epsilon = 0.0;
  std::uint64_t seed = 0;
  ResamplingPolicy resampling;

  [[nodiscard]] bool collapsed() const noexcept { return collapsed_at.has_value(); }
  /// log_value - n * log_normalizer.
  [[nodiscard]] double log_density() const noexcept;
};

/// Bootstrap SMC estimate of the ABC likelihood. Per-particle random streams are keyed by
/// (seed, particle, step) and never by theta, so estimates at different theta share common
/// random numbers; results do not depend on the thread count.
LikelihoodEstimate smc_abc_likelihood(const HiddenMarkovModel& model,
                                      const ParameterVector& theta, const Trajectory& data,
                                      const PerturbationSpec& pert, const SmcOptions& options);

}  // namespace abc_hmm

#endif  // ABC_HMM_SMC_ABC_HPP
