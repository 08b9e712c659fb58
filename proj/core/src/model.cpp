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

#include "abc_hmm/model.hpp"

#include <algorithm>
#include <cmath>

#include "abc_hmm/errors.hpp"

namespace abc_hmm {

std::optional<FiniteChain> HiddenMarkovModel::finite_chain(Theta) const { return std::nullopt; }

std::vector<Eigen::MatrixXd> HiddenMarkovModel::transition_gradient(Theta theta) const {
  std::vector<double> shifted(theta.begin(), theta.end());
  std::vector<Eigen::MatrixXd> grads;
  grads.reserve(theta.size());
  for (std::size_t j = 0; j < theta.size(); ++j) {
    const double h = kFiniteDifferenceStep * std::max(1.0, std::abs(theta[j]));
    shifted[j] = theta[j] + h;
    const auto up = finite_chain(shifted);
    shifted[j] = theta[j] - h;
    const auto down = finite_chain(shifted);
    shifted[j] = theta[j];
    if (!up || !down) {
      throw UnsupportedModel(name() + ": transition gradient needs a finite chain");
    }
    grads.push_back((up->transition - down->transition) / (2.0 * h));
  }
  return grads;
}

double HiddenMarkovModel::density(Theta, std::size_t, std::span<const double>) const {
  throw UnsupportedModel(name() + ": observation density is intractable");
}

void HiddenMarkovModel::density_gradient(Theta theta, std::size_t state,
                                         std::span<const double> y,
                                         std::span<double> grad) const {
  std::vector<double> shifted(theta.begin(), theta.end());
  for (std::size_t j = 0; j < theta.size(); ++j) {
    const double h = kFiniteDifferenceStep * std::max(1.0, std::abs(theta[j]));
    shifted[j] = theta[j] + h;
    const double up = density(shifted, state, y);
    shifted[j] = theta[j] - h;
    const double down = density(shifted, state, y);
    shifted[j] = theta[j];
    grad[j] = (up - down) / (2.0 * h);
  }
}

bool HiddenMarkovModel::has_perturbed_density(const PerturbationSpec&) const { return false; }

double HiddenMarkovModel::perturbed_density(Theta, std::size_t, std::span<const double>,
                                            const PerturbationSpec& pert) const {
  throw UnsupportedModel(name() + ": no closed-form perturbed density for kernel " +
                         pert.kernel_name());
}

void HiddenMarkovModel::perturbed_density_gradient(Theta theta, std::size_t state,
                                                   std::span<const double> y,
                                                   const PerturbationSpec& pert,
                                                   std::span<double> grad) const {
  std::vector<double> shifted(theta.begin(), theta.end());
  for (std::size_t j = 0; j < theta.size(); ++j) {
    const double h = kFiniteDifferenceStep * std::max(1.0, std::abs(theta[j]));
    shifted[j] = theta[j] + h;
    const double up = perturbed_density(shifted, state, y, pert);
    shifted[j] = theta[j] - h;
    const double down = perturbed_density(shifted, state, y, pert);
    shifted[j] = theta[j];
    grad[j] = (up - down) / (2.0 * h);
  }
}

namespace {

class PerturbedModel final : public HiddenMarkovModel {
 public:
  PerturbedModel(ModelSpec base, PerturbationSpec pert)
      : base_(std::move(base)), pert_(std::move(pert)) {}

  std::string name() const override { return base_->name() + "+perturbed"; }
  std::vector<std::string> parameter_names() const override { return base_->parameter_names(); }
  StateSpace state_space() const override { return base_->state_space(); }
  std::size_t obs_dim() const override { return base_->obs_dim(); }
  Box default_box() const override { return base_->default_box(); }

  void sample_initial(Theta theta, Rng& rng, std::span<double> x) const override {
    base_->sample_initial(theta, rng, x);
  }
  void sample_transition(Theta theta, std::span<const double> x, Rng& rng,
                         std::span<double> next) const override {
    base_->sample_transition(theta, x, rng, next);
  }
  void sample_observation(Theta theta, std::span<const double> x, Rng& rng,
                          std::span<double> y) const override {
    base_->sample_observation(theta, x, rng, y);
    std::vector<double> z(y.size());
    pert_.sample_unit_noise(rng, z);
    for (std::size_t i = 0; i < y.size(); ++i) {
      y[i] += pert_.epsilon() * z[i];
    }
  }

  std::optional<FiniteChain> finite_chain(Theta theta) const override {
    return base_->finite_chain(theta);
  }
  std::vector<Eigen::MatrixXd> transition_gradient(Theta theta) const override {
    return base_->transition_gradient(theta);
  }

  bool has_density() const override { return base_->has_perturbed_density(pert_); }
  double density(Theta theta, std::size_t state, std::span<const double> y) const override {
    return base_->perturbed_density(theta, state, y, pert_);
  }
  void density_gradient(Theta theta, std::size_t state, std::span<const double> y,
                        std::span<double> grad) const override {
    base_->perturbed_density_gradient(theta, state, y, pert_, grad);
  }

 private:
  ModelSpec base_;
  PerturbationSpec pert_;
};

}  // namespace

ModelSpec perturb_model(const ModelSpec& model, const PerturbationSpec& pert) {
  if (!model) {
    throw ConfigError("model", "perturb_model requires a model");
  }
  if (!(pert.epsilon() > 0.0)) {
    throw ConfigError("epsilon", "perturb_model requires epsilon > 0");
  }
  if (!pert.has_sampler()) {
    throw ConfigError("kernel", "kernel '" + pert.kernel_name() + "' has no registered sampler");
  }
  return std::make_shared<PerturbedModel>(model, pert);
}

void require_finite_tractable(const HiddenMarkovModel& model, const char* operation) {
  if (model.state_space().kind != StateKind::kFinite) {
    throw UnsupportedModel(std::string(operation) + ": model '" + model.name() +
                           "' does not have a finite state space");
  }
  if (!model.has_density()) {
    throw UnsupportedModel(std::string(operation) + ": model '" + model.name() +
                           "' has no tractable observation density");
  }
}

Eigen::VectorXd stationary_distribution(const Eigen::MatrixXd& transition) {
  const auto k = transition.rows();
  // Solve pi (Q - I) = 0 with sum(pi) = 1 as a least-squares system.
  Eigen::MatrixXd system(k + 1, k);
  system.topRows(k) = (transition - Eigen::MatrixXd::Identity(k, k)).transpose();
  system.row(k).setOnes();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(k + 1);
  rhs(k) = 1.0;
  Eigen::VectorXd pi = system.colPivHouseholderQr().solve(rhs);
  for (Eigen::Index i = 0; i < k; ++i) {
    pi(i) = std::max(pi(i), 0.0);
  }
  return pi / pi.sum();
}

}  // namespace abc_hmm
