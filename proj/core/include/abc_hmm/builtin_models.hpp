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

#ifndef ABC_HMM_BUILTIN_MODELS_HPP
#define ABC_HMM_BUILTIN_MODELS_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "abc_hmm/model.hpp"

namespace abc_hmm {

/// K-state chain with Gaussian emissions N(mean_scale * c_x, sd^2).
///
/// Any of "mean_scale", "sd" and "stay_prob" may be declared free; theta lists the free
/// ones in the order given. When "stay_prob" is free (or no transition matrix is given) the
/// chain is symmetric: q(i, i) = stay_prob, q(i, j) = (1 - stay_prob) / (K - 1).
struct FiniteGaussianConfig {
  std::size_t states = 2;
  std::optional<Eigen::MatrixXd> transition;
  std::vector<double> mean_coeffs;
  double mean_scale = 1.0;
  double sd = 1.0;
  double stay_prob = 0.7;
  std::optional<Eigen::VectorXd> initial;
  std::vector<std::string> free = {"mean_scale"};
  std::optional<Box> box;
};

class FiniteGaussianModel final : public HiddenMarkovModel {
 public:
  explicit FiniteGaussianModel(FiniteGaussianConfig config);

  std::string name() const override { return "finite_gaussian"; }
  std::vector<std::string> parameter_names() const override { return config_.free; }
  StateSpace state_space() const override { return {StateKind::kFinite, config_.states}; }
  std::size_t obs_dim() const override { return 1; }
  Box default_box() const override { return box_; }

  void sample_initial(Theta theta, Rng& rng, std::span<double> x) const override;
  void sample_transition(Theta theta, std::span<const double> x, Rng& rng,
                         std::span<double> next) const override;
  void sample_observation(Theta theta, std::span<const double> x, Rng& rng,
                          std::span<double> y) const override;

  std::optional<FiniteChain> finite_chain(Theta theta) const override;
  std::vector<Eigen::MatrixXd> transition_gradient(Theta theta) const override;

  bool has_density() const override { return true; }
  double density(Theta theta, std::size_t state, std::span<const double> y) const override;
  void density_gradient(Theta theta, std::size_t state, std::span<const double> y,
                        std::span<double> grad) const override;

  bool has_perturbed_density(const PerturbationSpec& pert) const override;
  double perturbed_density(Theta theta, std::size_t state, std::span<const double> y,
                           const PerturbationSpec& pert) const override;
  void perturbed_density_gradient(Theta theta, std::size_t state, std::span<const double> y,
                                  const PerturbationSpec& pert,
                                  std::span<double> grad) const override;

  [[nodiscard]] const FiniteGaussianConfig& config() const noexcept { return config_; }
  /// Emission mean of `state` under theta.
  [[nodiscard]] double mean(Theta theta, std::size_t state) const;
  /// Emission standard deviation under theta.
  [[nodiscard]] double sd(Theta theta) const;

 private:
  struct Resolved {
    double mean_scale;
    double sd;
    double stay;
  };
  Resolved resolve(Theta theta) const;

  FiniteGaussianConfig config_;
  Box box_;
  int mean_index_ = -1;
  int sd_index_ = -1;
  int stay_index_ = -1;
  Eigen::MatrixXd cumulative_;
  Eigen::VectorXd initial_;
};

/// Hidden chain on {-1, +1} with transition matrix [[19/20, 1/20], [1/5, 4/5]] and
/// Y | X ~ S_alpha(sigma, 0, X + delta); theta = (sigma, delta), alpha fixed.
class TwoStateAlphaStableModel final : public HiddenMarkovModel {
 public:
  explicit TwoStateAlphaStableModel(double alpha = 1.8, std::optional<Box> box = std::nullopt);

  std::string name() const override { return "two_state_alpha_stable"; }
  std::vector<std::string> parameter_names() const override { return {"sigma", "delta"}; }
  StateSpace state_space() const override { return {StateKind::kFinite, 2}; }
  std::size_t obs_dim() const override { return 1; }
  Box default_box() const override { return box_; }

  void sample_initial(Theta theta, Rng& rng, std::span<double> x) const override;
  void sample_transition(Theta theta, std::span<const double> x, Rng& rng,
                         std::span<double> next) const override;
  void sample_observation(Theta theta, std::span<const double> x, Rng& rng,
                          std::span<double> y) const override;
  std::optional<FiniteChain> finite_chain(Theta theta) const override;
  std::vector<Eigen::MatrixXd> transition_gradient(Theta theta) const override;

  [[nodiscard]] double alpha() const noexcept { return alpha_; }
  /// Hidden level (-1 or +1) of a state index.
  [[nodiscard]] static double level(std::size_t state) { return state == 0 ? -1.0 : 1.0; }

 private:
  double alpha_;
  Box box_;
};

/// Directly observed i.i.d. X = +theta or -theta with probability 1/2 each.
/// Observations have a two-point law, so there is no Lebesgue density.
class IidPmThetaModel final : public HiddenMarkovModel {
 public:
  explicit IidPmThetaModel(std::optional<Box> box = std::nullopt);

  std::string name() const override { return "iid_pm_theta"; }
  std::vector<std::string> parameter_names() const override { return {"theta"}; }
  StateSpace state_space() const override { return {StateKind::kFinite, 2}; }
  std::size_t obs_dim() const override { return 1; }
  Box default_box() const override { return box_; }

  void sample_initial(Theta theta, Rng& rng, std::span<double> x) const override;
  void sample_transition(Theta theta, std::span<const double> x, Rng& rng,
                         std::span<double> next) const override;
  void sample_observation(Theta theta, std::span<const double> x, Rng& rng,
                          std::span<double> y) const override;
  std::optional<FiniteChain> finite_chain(Theta theta) const override;
  std::vector<Eigen::MatrixXd> transition_gradient(Theta theta) const override;

 private:
  Box box_;
};

/// Builds a named model ("two_state_alpha_stable", "finite_gaussian", "iid_pm_theta")
/// from a JSON object of hyper-parameters. Throws ConfigError naming the bad key.
ModelSpec builtin_model(std::string_view name, std::string_view hyper_json = "{}");

/// Names accepted by builtin_model.
std::vector<std::string> builtin_model_names();

}  // namespace abc_hmm

#endif  // ABC_HMM_BUILTIN_MODELS_HPP
