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

#ifndef ABC_HMM_MODEL_HPP
#define ABC_HMM_MODEL_HPP

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "abc_hmm/parameter.hpp"
#include "abc_hmm/perturbation.hpp"
#include "abc_hmm/rng.hpp"

namespace abc_hmm {

/// Raw parameter coordinates. Model callbacks accept points slightly outside the
/// box so that central differences work at the boundary.
using Theta = std::span<const double>;

enum class StateKind { kFinite, kContinuous };

struct StateSpace {
  StateKind kind = StateKind::kFinite;
  /// Number of states K when finite, state dimension p when continuous.
  std::size_t size = 1;

  /// Number of doubles used to store one hidden state (1 for a finite index).
  [[nodiscard]] std::size_t storage_dim() const noexcept {
    return kind == StateKind::kFinite ? 1 : size;
  }
};

/// Transition matrix q_theta (row-stochastic) and initial law pi_0 of a finite chain.
/// pi_0 is taken to be free of theta.
struct FiniteChain {
  Eigen::MatrixXd transition;
  Eigen::VectorXd initial;
};

/// A parametric hidden Markov model {X_k, Y_k}.
///
/// Sampling is always available. Finite-state models additionally expose their chain,
/// and tractable ones their observation density g_theta(y | x) with respect to Lebesgue
/// measure. Finite hidden states are stored as the index cast to double.
///
/// Implementations are immutable; share them through ModelSpec.
class HiddenMarkovModel {
 public:
  virtual ~HiddenMarkovModel() = default;

  [[nodiscard]] virtual std::string name() const = 0;
  [[nodiscard]] virtual std::vector<std::string> parameter_names() const = 0;
  [[nodiscard]] std::size_t param_dim() const { return parameter_names().size(); }
  [[nodiscard]] virtual StateSpace state_space() const = 0;
  [[nodiscard]] virtual std::size_t obs_dim() const = 0;
  [[nodiscard]] virtual Box default_box() const = 0;

  virtual void sample_initial(Theta theta, Rng& rng, std::span<double> x) const = 0;
  virtual void sample_transition(Theta theta, std::span<const double> x, Rng& rng,
                                 std::span<double> next) const = 0;
  virtual void sample_observation(Theta theta, std::span<const double> x, Rng& rng,
                                  std::span<double> y) const = 0;

  /// Chain structure, or nullopt for continuous state spaces.
  [[nodiscard]] virtual std::optional<FiniteChain> finite_chain(Theta theta) const;

  /// d q_theta / d theta_j for j = 0..d-1. Defaults to central differences of finite_chain.
  [[nodiscard]] virtual std::vector<Eigen::MatrixXd> transition_gradient(Theta theta) const;

  [[nodiscard]] virtual bool has_density() const { return false; }

  /// g_theta(y | state). Throws UnsupportedModel when has_density() is false.
  [[nodiscard]] virtual double density(Theta theta, std::size_t state,
                                       std::span<const double> y) const;

  /// d g_theta(y | state) / d theta. Defaults to central differences of density().
  virtual void density_gradient(Theta theta, std::size_t state, std::span<const double> y,
                                std::span<double> grad) const;

  /// Whether the density of Y + eps Z is available in closed form for `pert`.
  [[nodiscard]] virtual bool has_perturbed_density(const PerturbationSpec& pert) const;

  /// Density of Y + eps Z given the state. Throws UnsupportedModel if unavailable.
  [[nodiscard]] virtual double perturbed_density(Theta theta, std::size_t state,
                                                 std::span<const double> y,
                                                 const PerturbationSpec& pert) const;

  /// Gradient in theta of perturbed_density. Defaults to central differences.
  virtual void perturbed_density_gradient(Theta theta, std::size_t state,
                                          std::span<const double> y,
                                          const PerturbationSpec& pert,
                                          std::span<double> grad) const;
};

using ModelSpec = std::shared_ptr<const HiddenMarkovModel>;

/// Step used by the default central-difference derivatives.
inline constexpr double kFiniteDifferenceStep = 1e-6;

/// The perturbed HMM {X_k, Y_k + eps Z_k}.
///
/// Its observation sampler adds eps Z with Z drawn from the perturbation kernel. If the
/// base model has a closed-form perturbed density for `pert` it becomes this model's
/// density. Throws ConfigError if epsilon is not positive or the kernel cannot be sampled.
ModelSpec perturb_model(const ModelSpec& model, const PerturbationSpec& pert);

/// Throws UnsupportedModel unless `model` is finite-state with a density.
void require_finite_tractable(const HiddenMarkovModel& model, const char* operation);

/// Stationary distribution of a row-stochastic matrix (left eigenvector for eigenvalue 1).
Eigen::VectorXd stationary_distribution(const Eigen::MatrixXd& transition);

}  // namespace abc_hmm

#endif  // ABC_HMM_MODEL_HPP
