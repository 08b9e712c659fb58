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

#ifndef ABC_HMM_ESTIMATE_HPP
#define ABC_HMM_ESTIMATE_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "abc_hmm/model.hpp"
#include "abc_hmm/optimize.hpp"
#include "abc_hmm/parameter.hpp"
#include "abc_hmm/perturbation.hpp"
#include "abc_hmm/resample.hpp"
#include "abc_hmm/trajectory.hpp"

namespace abc_hmm {

enum class EstimationMethod {
  kAbc,
  kNoisyAbc,
  kSmoothedAbc,
  kSmoothedNoisyAbc,
  kExactMle,
  kExactAbcMle,
};

std::string to_string(EstimationMethod method);
EstimationMethod parse_method(const std::string& text);

/// Which likelihood the ABC estimators maximise.
enum class ObjectiveKind {
  /// The closed-form i.i.d. oracle for iid_pm_theta, SMC otherwise.
  kAuto,
  kSmc,
  /// Closed-form perturbed forward likelihood (finite-state models) or the i.i.d. oracle.
  kOracle,
};

std::string to_string(ObjectiveKind kind);
ObjectiveKind parse_objective_kind(const std::string& text);

struct EstimateOptions {
  Box box;
  std::size_t particles = 1000;
  ResamplingPolicy resampling = ResamplingPolicy::multinomial_always();
  OptimizerSpec optimizer;
  ObjectiveKind objective = ObjectiveKind::kAuto;
  /// Seed for the SMC streams shared by every candidate theta.
  std::uint64_t seed = 0;
  /// Seed for the noisy-ABC perturbation; derived from `seed` on a separate stream if unset.
  std::optional<std::uint64_t> noise_seed;
  /// Workers inside one SMC evaluation.
  std::size_t smc_threads = 1;
};

struct EstimateSettings {
  double epsilon = 0.0;
  std::string kernel;
  std::size_t particles = 0;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> noise_seed;
  std::string optimizer;
  std::string objective;
  std::string resampling;
};

struct EstimateResult {
  ParameterVector theta_hat;
  double objective_value = 0.0;
  /// Candidates in evaluation order with their objective values and SE proxies.
  std::vector<TraceEntry> trace;
  EstimationMethod method = EstimationMethod::kAbc;
  std::vector<std::string> parameter_names;
  EstimateSettings settings;
  /// Candidates whose objective collapsed to -inf.
  std::size_t failures = 0;
};

/// ABC MLE (smoothed ABC MLE for a smoothing kernel): maximises the ABC likelihood of `data`.
/// The SMC objective is log_value - n * log_normalizer, so it is on the same scale as the
/// oracle's perturbed-model log-density.
EstimateResult abc_mle(const ModelSpec& model, const Trajectory& data,
                       const PerturbationSpec& pert, const EstimateOptions& options);

/// Noisy ABC MLE: perturbs `data` by eps Z with the noise seed, then runs abc_mle on it.
EstimateResult noisy_abc_mle(const ModelSpec& model, const Trajectory& data,
                             const PerturbationSpec& pert, const EstimateOptions& options);

/// abc_mle restricted to smoothing kernels.
EstimateResult smoothed_abc_mle(const ModelSpec& model, const Trajectory& data,
                                const PerturbationSpec& pert, const EstimateOptions& options);

/// noisy_abc_mle restricted to smoothing kernels.
EstimateResult smoothed_noisy_abc_mle(const ModelSpec& model, const Trajectory& data,
                                      const PerturbationSpec& pert,
                                      const EstimateOptions& options);

/// Maximises the exact log-likelihood of a finite-state model with a tractable density.
EstimateResult exact_mle(const ModelSpec& model, const Trajectory& data,
                         const EstimateOptions& options);

/// Dispatches on `method`; `pert` is ignored by kExactMle.
EstimateResult run_estimator(EstimationMethod method, const ModelSpec& model,
                             const Trajectory& data, const PerturbationSpec& pert,
                             const EstimateOptions& options);

/// Noise seed used by noisy_abc_mle for these options.
std::uint64_t noise_seed_for(const EstimateOptions& options);

}  // namespace abc_hmm

#endif  // ABC_HMM_ESTIMATE_HPP
