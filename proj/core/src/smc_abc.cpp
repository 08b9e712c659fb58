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

#include "abc_hmm/smc_abc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "abc_hmm/errors.hpp"
#include "abc_hmm/parallel.hpp"

namespace abc_hmm {

double LikelihoodEstimate::log_density() const noexcept {
  if (collapsed()) {
    return -std::numeric_limits<double>::infinity();
  }
  return log_value - static_cast<double>(n) * log_normalizer;
}

namespace {

constexpr std::size_t kParallelGrain = 2048;

void for_particles(std::size_t count, std::size_t threads,
                   const std::function<void(std::size_t, std::size_t)>& body) {
  if (threads <= 1 || count < 2 * kParallelGrain) {
    body(0, count);
    return;
  }
  const std::size_t blocks = std::min(threads, (count + kParallelGrain - 1) / kParallelGrain);
  parallel_for(
      blocks,
      [&](std::size_t b) {
        body(b * count / blocks, (b + 1) * count / blocks);
      },
      blocks);
}

}  // namespace

LikelihoodEstimate smc_abc_likelihood(const HiddenMarkovModel& model,
                                      const ParameterVector& theta, const Trajectory& data,
                                      const PerturbationSpec& pert, const SmcOptions& options) {
  const std::size_t big_n = options.particles;
  if (big_n < 2) {
    throw ConfigError("particles", "need at least 2 particles");
  }
  if (theta.dim() != model.param_dim()) {
    throw DomainError("smc_abc_likelihood: theta dimension does not match the model");
  }
  if (!theta.box().contains(theta.values())) {
    throw DomainError("smc_abc_likelihood: theta outside its box");
  }
  if (data.obs_dim() != model.obs_dim()) {
    throw DomainError("smc_abc_likelihood: data dimension does not match the model");
  }
  if (pert.is_null()) {
    throw ConfigError("epsilon", "the ABC likelihood needs epsilon > 0");
  }
  const std::size_t p = model.state_space().storage_dim();
  const std::size_t m = model.obs_dim();
  const std::size_t n = data.size();
  const std::size_t threads = options.threads == 0 ? default_thread_count() : options.threads;
  const Theta th = theta.values();

  LikelihoodEstimate result;
  result.n = n;
  result.particles = big_n;
  result.epsilon = pert.epsilon();
  result.seed = options.seed;
  result.resampling = options.resampling;
  result.log_normalizer = pert.log_normalizer(m);
  result.step_acceptance.reserve(n);
  result.ess_trace.reserve(n);

  ParticleEnsemble ensemble;
  ensemble.state_dim = p;
  ensemble.obs_dim = m;
  ensemble.states.resize(big_n * p);
  ensemble.pseudo_obs.resize(big_n * m);
  ensemble.raw_weights.assign(big_n, 0.0);
  std::vector<double> next_states(big_n * p);
  std::vector<double> log_weights(big_n);
  // Unnormalised weights carried from the previous step; all ones after a resample.
  std::vector<double> carried(big_n, 1.0);

  for_particles(big_n, threads, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t l = lo; l < hi; ++l) {
      Rng rng(StreamKey{options.seed, StreamTag::kSmcPropagate, l, 0});
      model.sample_initial(th, rng, std::span<double>(ensemble.states.data() + l * p, p));
    }
  });

  double variance_sum = 0.0;
  for (std::size_t k = 1; k <= n; ++k) {
    const auto y_hat = data.observation(k - 1);
    for_particles(big_n, threads, [&](std::size_t lo, std::size_t hi) {
      for (std::size_t l = lo; l < hi; ++l) {
        Rng rng(StreamKey{options.seed, StreamTag::kSmcPropagate, l, k});
        std::span<double> x(next_states.data() + l * p, p);
        std::span<double> y(ensemble.pseudo_obs.data() + l * m, m);
        model.sample_transition(th, std::span<const double>(ensemble.states.data() + l * p, p),
                                rng, x);
        model.sample_observation(th, x, rng, y);
        log_weights[l] = pert.log_weight(y_hat, y);
      }
    });
    ensemble.states.swap(next_states);
    ensemble.step = k;

    double max_log = -std::numeric_limits<double>::infinity();
    for (const double lw : log_weights) {
      max_log = std::max(max_log, lw);
    }
    const auto collapse = [&] {
      result.step_acceptance.push_back(0.0);
      result.ess_trace.push_back(0.0);
      result.collapsed_at = k;
      result.log_value = -std::numeric_limits<double>::infinity();
      return result;
    };
    if (max_log == -std::numeric_limits<double>::infinity()) {
      return collapse();
    }
    // Ordered reductions keep the result independent of the thread layout.
    double carried_total = 0.0;
    double mean_scaled = 0.0;
    double second_scaled = 0.0;
    for (std::size_t l = 0; l < big_n; ++l) {
      const double w = std::exp(log_weights[l] - max_log);
      ensemble.raw_weights[l] = carried[l] * w;
      carried_total += carried[l];
      mean_scaled += carried[l] * w;
      second_scaled += carried[l] * w * w;
    }
    if (!(mean_scaled > 0.0)) {
      return collapse();
    }
    mean_scaled /= carried_total;
    second_scaled /= carried_total;
    const double log_step = max_log + std::log(mean_scaled);
    result.log_value += log_step;
    result.step_acceptance.push_back(std::exp(log_step));
    const double rel_var = second_scaled / (mean_scaled * mean_scaled) - 1.0;
    variance_sum += std::max(rel_var, 0.0) / static_cast<double>(big_n);

    const double ess = effective_sample_size(ensemble.raw_weights);
    result.ess_trace.push_back(ess);
    if (options.resampling.should_resample(ess, big_n)) {
      Rng rng(StreamKey{options.seed, StreamTag::kSmcResample, 0, k});
      ensemble = resample(ensemble, options.resampling, rng);
      std::fill(carried.begin(), carried.end(), 1.0);
    } else {
      const double largest =
          *std::max_element(ensemble.raw_weights.begin(), ensemble.raw_weights.end());
      for (std::size_t l = 0; l < big_n; ++l) {
        carried[l] = ensemble.raw_weights[l] / largest;
      }
    }
  }
  result.se_proxy = std::sqrt(variance_sum);
  return result;
}

}  // namespace abc_hmm
