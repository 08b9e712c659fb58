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

#include "abc_hmm/estimate.hpp"

#include "abc_hmm/builtin_models.hpp"
#include "abc_hmm/errors.hpp"
#include "abc_hmm/forward.hpp"
#include "abc_hmm/iid_abc.hpp"
#include "abc_hmm/simulate.hpp"
#include "abc_hmm/smc_abc.hpp"

namespace abc_hmm {

std::string to_string(EstimationMethod method) {
  switch (method) {
    case EstimationMethod::kAbc:
      return "abc";
    case EstimationMethod::kNoisyAbc:
      return "noisy_abc";
    case EstimationMethod::kSmoothedAbc:
      return "smoothed_abc";
    case EstimationMethod::kSmoothedNoisyAbc:
      return "smoothed_noisy_abc";
    case EstimationMethod::kExactMle:
      return "exact_mle";
    case EstimationMethod::kExactAbcMle:
      return "exact_abc_mle";
  }
  return "unknown";
}

EstimationMethod parse_method(const std::string& text) {
  for (const auto m :
       {EstimationMethod::kAbc, EstimationMethod::kNoisyAbc, EstimationMethod::kSmoothedAbc,
        EstimationMethod::kSmoothedNoisyAbc, EstimationMethod::kExactMle,
        EstimationMethod::kExactAbcMle}) {
    if (to_string(m) == text) {
      return m;
    }
  }
  throw ConfigError("method", "unknown estimation method '" + text + "'");
}

std::string to_string(ObjectiveKind kind) {
  switch (kind) {
    case ObjectiveKind::kAuto:
      return "auto";
    case ObjectiveKind::kSmc:
      return "smc";
    case ObjectiveKind::kOracle:
      return "oracle";
  }
  return "unknown";
}

ObjectiveKind parse_objective_kind(const std::string& text) {
  for (const auto k : {ObjectiveKind::kAuto, ObjectiveKind::kSmc, ObjectiveKind::kOracle}) {
    if (to_string(k) == text) {
      return k;
    }
  }
  throw ConfigError("objective", "unknown objective kind '" + text + "'");
}

std::uint64_t noise_seed_for(const EstimateOptions& options) {
  return options.noise_seed ? *options.noise_seed
                            : derive_seed(options.seed, StreamTag::kNoise, 0);
}

namespace {

const Box& effective_box(const ModelSpec& model, const EstimateOptions& options, Box& storage) {
  if (options.box.dim() > 0) {
    if (options.box.dim() != model->param_dim()) {
      throw ConfigError("theta_box", "dimension does not match the model parameters");
    }
    return options.box;
  }
  storage = model->default_box();
  return storage;
}

EstimateResult finish(const ModelSpec& model, const Box& box, OptimizeResult opt,
                      EstimationMethod method, EstimateSettings settings) {
  EstimateResult result{ParameterVector(opt.theta_hat, box), opt.value, std::move(opt.trace),
                        method, model->parameter_names(), std::move(settings), opt.failures};
  return result;
}

EstimateResult run_abc(const ModelSpec& model, const Trajectory& data,
                       const PerturbationSpec& pert, const EstimateOptions& options,
                       bool noisy) {
  if (pert.is_null()) {
    throw ConfigError("epsilon", "ABC estimation needs epsilon > 0");
  }
  if (data.obs_dim() != model->obs_dim()) {
    throw ConfigError("data", "observation dimension does not match the model");
  }
  Box storage;
  const Box& box = effective_box(model, options, storage);
  const bool is_iid = dynamic_cast<const IidPmThetaModel*>(model.get()) != nullptr;
  const bool oracle_available =
      is_iid || (model->state_space().kind == StateKind::kFinite && model->has_density() &&
                 model->has_perturbed_density(pert));

  ObjectiveKind kind = options.objective;
  if (kind == ObjectiveKind::kAuto) {
    kind = is_iid ? ObjectiveKind::kOracle : ObjectiveKind::kSmc;
  }
  if (kind == ObjectiveKind::kOracle && !oracle_available) {
    throw ConfigError("objective", "no closed-form ABC likelihood for model '" + model->name() +
                                       "' with kernel '" + pert.kernel_name() + "'");
  }

  Objective objective;
  if (kind == ObjectiveKind::kOracle && is_iid) {
    objective = [&](std::span<const double> theta) {
      return ObjectiveValue{iid_abc_log_likelihood(theta[0], data, pert), 0.0};
    };
  } else if (kind == ObjectiveKind::kOracle) {
    objective = [&](std::span<const double> theta) {
      return ObjectiveValue{forward_loglik(*model, theta, data, pert), 0.0};
    };
  } else {
    SmcOptions smc;
    smc.particles = options.particles;
    smc.resampling = options.resampling;
    smc.seed = options.seed;
    smc.threads = options.smc_threads;
    objective = [&, smc](std::span<const double> theta) {
      const ParameterVector candidate(std::vector<double>(theta.begin(), theta.end()), box);
      const LikelihoodEstimate estimate = smc_abc_likelihood(*model, candidate, data, pert, smc);
      return ObjectiveValue{estimate.log_density(), estimate.se_proxy};
    };
  }

  OptimizerSpec optimizer = options.optimizer;
  OptimizeResult opt = maximize(objective, box, optimizer);

  const bool smooth = pert.kind() == KernelKind::kSmooth;
  EstimationMethod method = EstimationMethod::kAbc;
  if (kind == ObjectiveKind::kOracle && is_iid) {
    method = EstimationMethod::kExactAbcMle;
  } else if (noisy) {
    method = smooth ? EstimationMethod::kSmoothedNoisyAbc : EstimationMethod::kNoisyAbc;
  } else {
    method = smooth ? EstimationMethod::kSmoothedAbc : EstimationMethod::kAbc;
  }
  EstimateSettings settings;
  settings.epsilon = pert.epsilon();
  settings.kernel = pert.kernel_name();
  settings.particles = kind == ObjectiveKind::kSmc ? options.particles : 0;
  settings.n = data.size();
  settings.seed = options.seed;
  settings.optimizer = optimizer.to_string();
  settings.objective = to_string(kind);
  settings.resampling = kind == ObjectiveKind::kSmc ? options.resampling.to_string() : "";
  return finish(model, box, std::move(opt), method, std::move(settings));
}

}  // namespace

EstimateResult abc_mle(const ModelSpec& model, const Trajectory& data,
                       const PerturbationSpec& pert, const EstimateOptions& options) {
  return run_abc(model, data, pert, options, false);
}

EstimateResult noisy_abc_mle(const ModelSpec& model, const Trajectory& data,
                             const PerturbationSpec& pert, const EstimateOptions& options) {
  if (pert.is_null()) {
    throw ConfigError("epsilon", "noisy ABC estimation needs epsilon > 0");
  }
  if (!pert.has_sampler()) {
    throw ConfigError("kernel", "kernel '" + pert.kernel_name() + "' has no sampler");
  }
  const std::uint64_t noise_seed = noise_seed_for(options);
  const Trajectory noisy = noisify(data, pert, noise_seed);
  EstimateResult result = run_abc(model, noisy, pert, options, true);
  result.settings.noise_seed = noise_seed;
  return result;
}

EstimateResult smoothed_abc_mle(const ModelSpec& model, const Trajectory& data,
                                const PerturbationSpec& pert, const EstimateOptions& options) {
  if (pert.kind() != KernelKind::kSmooth) {
    throw ConfigError("kernel", "smoothed ABC needs a smoothing kernel");
  }
  return abc_mle(model, data, pert, options);
}

EstimateResult smoothed_noisy_abc_mle(const ModelSpec& model, const Trajectory& data,
                                      const PerturbationSpec& pert,
                                      const EstimateOptions& options) {
  if (pert.kind() != KernelKind::kSmooth) {
    throw ConfigError("kernel", "smoothed ABC needs a smoothing kernel");
  }
  return noisy_abc_mle(model, data, pert, options);
}

EstimateResult exact_mle(const ModelSpec& model, const Trajectory& data,
                         const EstimateOptions& options) {
  require_finite_tractable(*model, "exact_mle");
  if (data.obs_dim() != model->obs_dim()) {
    throw ConfigError("data", "observation dimension does not match the model");
  }
  Box storage;
  const Box& box = effective_box(model, options, storage);
  const Objective objective = [&](std::span<const double> theta) {
    return ObjectiveValue{forward_loglik(*model, theta, data), 0.0};
  };
  OptimizeResult opt = maximize(objective, box, options.optimizer);
  EstimateSettings settings;
  settings.n = data.size();
  settings.seed = options.seed;
  settings.optimizer = options.optimizer.to_string();
  settings.objective = "exact";
  return finish(model, box, std::move(opt), EstimationMethod::kExactMle, std::move(settings));
}

EstimateResult run_estimator(EstimationMethod method, const ModelSpec& model,
                             const Trajectory& data, const PerturbationSpec& pert,
                             const EstimateOptions& options) {
  switch (method) {
    case EstimationMethod::kAbc:
    case EstimationMethod::kExactAbcMle:
      return abc_mle(model, data, pert, options);
    case EstimationMethod::kNoisyAbc:
      return noisy_abc_mle(model, data, pert, options);
    case EstimationMethod::kSmoothedAbc:
      return smoothed_abc_mle(model, data, pert, options);
    case EstimationMethod::kSmoothedNoisyAbc:
      return smoothed_noisy_abc_mle(model, data, pert, options);
    case EstimationMethod::kExactMle:
      return exact_mle(model, data, options);
  }
  throw ConfigError("method", "unsupported method");
}

}  // namespace abc_hmm
