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

#include "abc_hmm/forward.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "abc_hmm/errors.hpp"

namespace abc_hmm {

ForwardRecursion::ForwardRecursion(const HiddenMarkovModel& model, Theta theta,
                                   std::optional<PerturbationSpec> pert, bool with_gradient)
    : model_(model),
      theta_(theta.begin(), theta.end()),
      pert_(std::move(pert)),
      with_gradient_(with_gradient) {
  require_finite_tractable(model, "forward recursion");
  if (pert_ && pert_->is_null()) {
    pert_.reset();
  }
  if (pert_ && !model.has_perturbed_density(*pert_)) {
    throw UnsupportedModel("forward recursion: model '" + model.name() +
                           "' has no closed-form perturbed density for kernel '" +
                           pert_->kernel_name() + "'");
  }
  chain_ = *model.finite_chain(theta_);
  if (with_gradient_) {
    dtransition_ = model.transition_gradient(theta_);
  }
}

ForwardState ForwardRecursion::initial_state() const { return initial_state(chain_.initial); }

ForwardState ForwardRecursion::initial_state(const Eigen::VectorXd& initial) const {
  const auto k = chain_.transition.rows();
  if (initial.size() != k) {
    throw DomainError("forward recursion: initial law has the wrong number of states");
  }
  ForwardState state;
  state.alpha = initial;
  if (with_gradient_) {
    const auto d = static_cast<Eigen::Index>(theta_.size());
    state.dalpha = Eigen::MatrixXd::Zero(d, k);
    state.score = Eigen::VectorXd::Zero(d);
    state.increment = Eigen::VectorXd::Zero(d);
  }
  return state;
}

void ForwardRecursion::emission(std::span<const double> y, Emission kind, Eigen::VectorXd& e,
                                Eigen::MatrixXd& de) const {
  const auto k = chain_.transition.rows();
  const std::size_t d = theta_.size();
  e.resize(k);
  if (with_gradient_) {
    de.resize(static_cast<Eigen::Index>(d), k);
  }
  if (kind == Emission::kMissing) {
    e.setOnes();
    if (with_gradient_) {
      de.setZero();
    }
    return;
  }
  if (kind == Emission::kPerturbed && !pert_) {
    throw UsageError("forward recursion: perturbed emission requested without epsilon > 0");
  }
  std::vector<double> grad(d);
  for (Eigen::Index x = 0; x < k; ++x) {
    const auto state = static_cast<std::size_t>(x);
    if (kind == Emission::kExact) {
      e(x) = model_.density(theta_, state, y);
      if (with_gradient_) {
        model_.density_gradient(theta_, state, y, grad);
      }
    } else {
      e(x) = model_.perturbed_density(theta_, state, y, *pert_);
      if (with_gradient_) {
        model_.perturbed_density_gradient(theta_, state, y, *pert_, grad);
      }
    }
    if (with_gradient_) {
      for (std::size_t r = 0; r < d; ++r) {
        de(static_cast<Eigen::Index>(r), x) = grad[r];
      }
    }
  }
}

double ForwardRecursion::step(ForwardState& state, std::span<const double> y,
                              Emission kind) const {
  Eigen::VectorXd e;
  Eigen::MatrixXd de;
  emission(y, kind, e, de);
  const Eigen::VectorXd pred = chain_.transition.transpose() * state.alpha;
  const Eigen::VectorXd u = pred.cwiseProduct(e);
  const double c = u.sum();
  if (!(c > 0.0) || !std::isfinite(c)) {
    return -std::numeric_limits<double>::infinity();
  }
  if (with_gradient_) {
    const auto d = static_cast<Eigen::Index>(theta_.size());
    Eigen::MatrixXd du(d, u.size());
    for (Eigen::Index r = 0; r < d; ++r) {
      const Eigen::RowVectorXd dpred =
          state.dalpha.row(r) * chain_.transition +
          state.alpha.transpose() * dtransition_[static_cast<std::size_t>(r)];
      du.row(r) = dpred.cwiseProduct(e.transpose()) + pred.transpose().cwiseProduct(de.row(r));
    }
    const Eigen::VectorXd dc = du.rowwise().sum();
    const Eigen::VectorXd alpha_next = u / c;
    state.dalpha = (du - dc * alpha_next.transpose()) / c;
    state.increment = dc / c;
    state.score += state.increment;
    state.alpha = alpha_next;
  } else {
    state.alpha = u / c;
  }
  const double log_c = std::log(c);
  state.log_scale += log_c;
  ++state.steps;
  return log_c;
}

namespace {

Emission emission_for(const std::optional<PerturbationSpec>& pert) {
  return pert && !pert->is_null() ? Emission::kPerturbed : Emission::kExact;
}

void check_data(const HiddenMarkovModel& model, Theta theta, const Trajectory& data) {
  if (theta.size() != model.param_dim()) {
    throw DomainError("forward recursion: theta dimension does not match the model");
  }
  if (data.obs_dim() != model.obs_dim()) {
    throw DomainError("forward recursion: data dimension does not match the model");
  }
}

}  // namespace

double forward_loglik(const HiddenMarkovModel& model, Theta theta, const Trajectory& data,
                      const std::optional<PerturbationSpec>& pert) {
  check_data(model, theta, data);
  const ForwardRecursion recursion(model, theta, pert, false);
  ForwardState state = recursion.initial_state();
  const Emission kind = emission_for(pert);
  for (std::size_t k = 0; k < data.size(); ++k) {
    if (recursion.step(state, data.observation(k), kind) ==
        -std::numeric_limits<double>::infinity()) {
      return -std::numeric_limits<double>::infinity();
    }
  }
  return state.log_scale;
}

Eigen::MatrixXd forward_score_increments(const HiddenMarkovModel& model, Theta theta,
                                         const Trajectory& data,
                                         const std::optional<PerturbationSpec>& pert) {
  check_data(model, theta, data);
  const ForwardRecursion recursion(model, theta, pert, true);
  ForwardState state = recursion.initial_state();
  const Emission kind = emission_for(pert);
  Eigen::MatrixXd increments(static_cast<Eigen::Index>(data.size()),
                             static_cast<Eigen::Index>(theta.size()));
  for (std::size_t k = 0; k < data.size(); ++k) {
    if (recursion.step(state, data.observation(k), kind) ==
        -std::numeric_limits<double>::infinity()) {
      throw DomainError("forward_score: observation " + std::to_string(k + 1) +
                        " has zero density");
    }
    increments.row(static_cast<Eigen::Index>(k)) = state.increment.transpose();
  }
  return increments;
}

Eigen::VectorXd forward_score(const HiddenMarkovModel& model, Theta theta,
                              const Trajectory& data,
                              const std::optional<PerturbationSpec>& pert) {
  return forward_score_increments(model, theta, data, pert).colwise().sum().transpose();
}

std::vector<double> filter_tv_forgetting(const HiddenMarkovModel& model, Theta theta,
                                         const Trajectory& data, const Eigen::VectorXd& init_a,
                                         const Eigen::VectorXd& init_b,
                                         const std::optional<PerturbationSpec>& pert) {
  check_data(model, theta, data);
  const ForwardRecursion recursion(model, theta, pert, false);
  ForwardState a = recursion.initial_state(init_a);
  ForwardState b = recursion.initial_state(init_b);
  const Emission kind = emission_for(pert);
  std::vector<double> tv;
  tv.reserve(data.size());
  for (std::size_t k = 0; k < data.size(); ++k) {
    recursion.step(a, data.observation(k), kind);
    recursion.step(b, data.observation(k), kind);
    tv.push_back(0.5 * (a.alpha - b.alpha).cwiseAbs().sum());
  }
  return tv;
}

ForgettingBound forgetting_rate_bound(const HiddenMarkovModel& model, Theta theta, double y_lo,
                                      double y_hi, std::size_t grid_points,
                                      const std::optional<PerturbationSpec>& pert) {
  require_finite_tractable(model, "forgetting_rate_bound");
  if (model.obs_dim() != 1) {
    throw UnsupportedModel("forgetting_rate_bound: scalar observations only");
  }
  if (!(y_hi >= y_lo) || grid_points < 2) {
    throw DomainError("forgetting_rate_bound: need y_lo <= y_hi and at least 2 grid points");
  }
  const FiniteChain chain = *model.finite_chain(theta);
  double lo = chain.transition.minCoeff();
  double hi = chain.transition.maxCoeff();
  const bool perturbed = pert && !pert->is_null();
  const auto k = static_cast<std::size_t>(chain.transition.rows());
  for (std::size_t i = 0; i < grid_points; ++i) {
    const double y =
        y_lo + (y_hi - y_lo) * static_cast<double>(i) / static_cast<double>(grid_points - 1);
    const double obs[1] = {y};
    for (std::size_t x = 0; x < k; ++x) {
      const double g = perturbed ? model.perturbed_density(theta, x, obs, *pert)
                                 : model.density(theta, x, obs);
      lo = std::min(lo, g);
      hi = std::max(hi, g);
    }
  }
  ForgettingBound bound;
  bound.c_lo = lo;
  bound.c_hi = hi;
  bound.y_lo = y_lo;
  bound.y_hi = y_hi;
  bound.rho = 1.0 - (lo * lo) / (hi * hi);
  return bound;
}

}  // namespace abc_hmm
