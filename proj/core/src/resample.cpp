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

#include "abc_hmm/resample.hpp"

#include <cmath>

#include "abc_hmm/errors.hpp"

namespace abc_hmm {

std::string ResamplingPolicy::to_string() const {
  switch (scheme) {
    case ResamplingScheme::kNone:
      return "none";
    case ResamplingScheme::kMultinomial:
      return ess_threshold ? "multinomial:" + std::to_string(*ess_threshold) : "multinomial";
    case ResamplingScheme::kSystematic:
      return ess_threshold ? "systematic:" + std::to_string(*ess_threshold) : "systematic";
  }
  return "unknown";
}

ResamplingPolicy parse_resampling_policy(const std::string& text) {
  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  ResamplingPolicy policy;
  if (head == "none") {
    if (colon != std::string::npos) {
      throw ConfigError("resampling", "'none' takes no threshold");
    }
    return ResamplingPolicy::never();
  }
  if (head == "multinomial") {
    policy.scheme = ResamplingScheme::kMultinomial;
  } else if (head == "systematic") {
    policy.scheme = ResamplingScheme::kSystematic;
  } else {
    throw ConfigError("resampling", "unknown scheme '" + head + "'");
  }
  if (colon != std::string::npos) {
    double threshold = 0.0;
    try {
      threshold = std::stod(text.substr(colon + 1));
    } catch (const std::exception&) {
      throw ConfigError("resampling", "bad ESS threshold in '" + text + "'");
    }
    if (!(threshold > 0.0 && threshold <= 1.0)) {
      throw ConfigError("resampling", "ESS threshold must lie in (0, 1]");
    }
    policy.ess_threshold = threshold;
  }
  return policy;
}

double effective_sample_size(std::span<const double> weights) {
  double sum = 0.0;
  double squares = 0.0;
  for (const double w : weights) {
    sum += w;
    squares += w * w;
  }
  return squares > 0.0 ? sum * sum / squares : 0.0;
}

std::vector<std::size_t> resample_indices(std::span<const double> weights,
                                          ResamplingScheme scheme, Rng& rng, std::size_t count) {
  double total = 0.0;
  for (const double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw DomainError("resample: weights must be finite and non-negative");
    }
    total += w;
  }
  if (!(total > 0.0)) {
    throw DomainError("resample: every weight is zero");
  }
  std::vector<std::size_t> ancestors(count);
  if (scheme == ResamplingScheme::kNone) {
    throw DomainError("resample: scheme 'none' draws no ancestors");
  }

  // Sorted positions in [0, total): systematic uses one offset, multinomial uses normalised
  // exponential spacings, which are distributed as sorted i.i.d. uniforms.
  std::vector<double> positions(count);
  if (scheme == ResamplingScheme::kSystematic) {
    const double offset = rng.uniform01();
    for (std::size_t i = 0; i < count; ++i) {
      positions[i] = (static_cast<double>(i) + offset) / static_cast<double>(count) * total;
    }
  } else {
    double cumulative = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
      cumulative += rng.exponential();
      positions[i] = cumulative;
    }
    cumulative += rng.exponential();
    for (double& p : positions) {
      p = p / cumulative * total;
    }
  }

  std::size_t j = 0;
  double edge = weights[0];
  const std::size_t last_positive = [&] {
    std::size_t idx = weights.size() - 1;
    while (weights[idx] <= 0.0) {
      --idx;
    }
    return idx;
  }();
  for (std::size_t i = 0; i < count; ++i) {
    while (j < last_positive && positions[i] >= edge) {
      ++j;
      edge += weights[j];
    }
    ancestors[i] = j;
  }
  return ancestors;
}

ParticleEnsemble resample(const ParticleEnsemble& ensemble, const ResamplingPolicy& policy,
                          Rng& rng) {
  const std::size_t n = ensemble.size();
  const auto ancestors = resample_indices(ensemble.raw_weights, policy.scheme, rng, n);
  ParticleEnsemble out;
  out.state_dim = ensemble.state_dim;
  out.obs_dim = ensemble.obs_dim;
  out.step = ensemble.step;
  out.states.resize(n * ensemble.state_dim);
  out.pseudo_obs.resize(ensemble.pseudo_obs.empty() ? 0 : n * ensemble.obs_dim);
  out.raw_weights.assign(n, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t a = ancestors[i];
    std::copy_n(ensemble.states.begin() + static_cast<std::ptrdiff_t>(a * ensemble.state_dim),
                ensemble.state_dim,
                out.states.begin() + static_cast<std::ptrdiff_t>(i * ensemble.state_dim));
    if (!out.pseudo_obs.empty()) {
      std::copy_n(ensemble.pseudo_obs.begin() + static_cast<std::ptrdiff_t>(a * ensemble.obs_dim),
                  ensemble.obs_dim,
                  out.pseudo_obs.begin() + static_cast<std::ptrdiff_t>(i * ensemble.obs_dim));
    }
  }
  return out;
}

}  // namespace abc_hmm
