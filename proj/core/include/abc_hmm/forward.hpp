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

#ifndef ABC_HMM_FORWARD_HPP
#define ABC_HMM_FORWARD_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "abc_hmm/model.hpp"
#include "abc_hmm/perturbation.hpp"
#include "abc_hmm/trajectory.hpp"

namespace abc_hmm {

/// How an observation enters one forward step.
enum class Emission {
  kExact,      ///< g(y | x)
  kPerturbed,  ///< g^eps(y | x), the density of Y + eps Z
  kMissing,    ///< no observation at this step
};

/// Scaled forward filter p(x_k | y_{1:k}) with optional parameter sensitivities.
struct ForwardState {
  double log_scale = 0.0;
  Eigen::VectorXd alpha;
  /// d x K derivative of alpha; empty when gradients are not tracked.
  Eigen::MatrixXd dalpha;
  /// Accumulated gradient of log_scale.
  Eigen::VectorXd score;
  /// Gradient of the last step's log conditional likelihood.
  Eigen::VectorXd increment;
  std::size_t steps = 0;

  [[nodiscard]] bool tracks_gradient() const noexcept { return dalpha.size() > 0; }
};

/// Forward recursion for a finite-state model at a fixed theta. The initial law is treated as
/// independent of theta.
class ForwardRecursion {
 public:
  /// `pert` is required only for Emission::kPerturbed steps.
  ForwardRecursion(const HiddenMarkovModel& model, Theta theta,
                   std::optional<PerturbationSpec> pert, bool with_gradient);

  /// Filter at time 0 from the model's initial law.
  [[nodiscard]] ForwardState initial_state() const;
  /// Filter at time 0 from an arbitrary probability vector.
  [[nodiscard]] ForwardState initial_state(const Eigen::VectorXd& initial) const;

  /// Advances one step; returns log p(y_k | y_{1:k-1}), or -inf if the observation has zero
  /// density under every state (the state is then left unchanged).
  double step(ForwardState& state, std::span<const double> y, Emission emission) const;

  [[nodiscard]] const FiniteChain& chain() const noexcept { return chain_; }
  [[nodiscard]] std::size_t param_dim() const noexcept { return theta_.size(); }

 private:
  void emission(std::span<const double> y, Emission kind, Eigen::VectorXd& e,
                Eigen::MatrixXd& de) const;

  const HiddenMarkovModel& model_;
  std::vector<double> theta_;
  std::optional<PerturbationSpec> pert_;
  bool with_gradient_;
  FiniteChain chain_;
  std::vector<Eigen::MatrixXd> dtransition_;
};

/// Exact log p_theta(y_{1:n}), or log p^eps_theta(y_{1:n}) (density scale) when `pert` is given.
double forward_loglik(const HiddenMarkovModel& model, Theta theta, const Trajectory& data,
                      const std::optional<PerturbationSpec>& pert = std::nullopt);

/// Gradient of forward_loglik with respect to theta by sensitivity propagation.
Eigen::VectorXd forward_score(const HiddenMarkovModel& model, Theta theta,
                              const Trajectory& data,
                              const std::optional<PerturbationSpec>& pert = std::nullopt);

/// n x d matrix whose row k is the gradient of log p(y_k | y_{1:k-1}); rows sum to the score.
Eigen::MatrixXd forward_score_increments(const HiddenMarkovModel& model, Theta theta,
                                         const Trajectory& data,
                                         const std::optional<PerturbationSpec>& pert =
                                             std::nullopt);

/// Total-variation distance (half the L1 distance) between two filters started from
/// `init_a` and `init_b` on the same data, after each of the n steps.
std::vector<double> filter_tv_forgetting(const HiddenMarkovModel& model, Theta theta,
                                         const Trajectory& data, const Eigen::VectorXd& init_a,
                                         const Eigen::VectorXd& init_b,
                                         const std::optional<PerturbationSpec>& pert =
                                             std::nullopt);

/// Mixing-rate bound rho = 1 - c_lo^2 / c_hi^2, where c_lo and c_hi bound every transition
/// entry and every emission density over observations in [y_lo, y_hi].
struct ForgettingBound {
  double rho = 1.0;
  double c_lo = 0.0;
  double c_hi = 0.0;
  double y_lo = 0.0;
  double y_hi = 0.0;
};

/// Evaluates the density bounds on `grid_points` equally spaced observations (scalar models).
ForgettingBound forgetting_rate_bound(const HiddenMarkovModel& model, Theta theta, double y_lo,
                                      double y_hi, std::size_t grid_points = 2001,
                                      const std::optional<PerturbationSpec>& pert =
                                          std::nullopt);

}  // namespace abc_hmm

#endif  // ABC_HMM_FORWARD_HPP
