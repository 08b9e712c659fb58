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

#include "abc_hmm/builtin_models.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include <json.hpp>

#include "abc_hmm/errors.hpp"
#include "abc_hmm/random_variates.hpp"
#include "normal_math.hpp"

namespace abc_hmm {
namespace {

constexpr double kRowSumTolerance = 1e-12;

void validate_stochastic(const Eigen::MatrixXd& q, const std::string& key) {
  if (q.rows() != q.cols() || q.rows() == 0) {
    throw ConfigError(key, "transition matrix must be square and non-empty");
  }
  for (Eigen::Index i = 0; i < q.rows(); ++i) {
    if ((q.row(i).array() < 0.0).any()) {
      throw ConfigError(key, "transition matrix has a negative entry in row " +
                                 std::to_string(i));
    }
    if (std::abs(q.row(i).sum() - 1.0) > kRowSumTolerance) {
      throw ConfigError(key, "transition matrix row " + std::to_string(i) +
                                 " does not sum to 1");
    }
  }
}

std::size_t sample_categorical(const Eigen::Ref<const Eigen::VectorXd>& cumulative,
                               double u) {
  const auto k = static_cast<std::size_t>(cumulative.size());
  for (std::size_t i = 0; i + 1 < k; ++i) {
    if (u < cumulative(static_cast<Eigen::Index>(i))) {
      return i;
    }
  }
  return k - 1;
}

Eigen::MatrixXd cumulative_rows(const Eigen::MatrixXd& q) {
  Eigen::MatrixXd c = q;
  for (Eigen::Index j = 1; j < q.cols(); ++j) {
    c.col(j) += c.col(j - 1);
  }
  return c;
}

Eigen::MatrixXd symmetric_chain(std::size_t k, double stay) {
  if (k == 1) {
    return Eigen::MatrixXd::Ones(1, 1);
  }
  const double move = (1.0 - stay) / static_cast<double>(k - 1);
  Eigen::MatrixXd q = Eigen::MatrixXd::Constant(static_cast<Eigen::Index>(k),
                                                static_cast<Eigen::Index>(k), move);
  q.diagonal().setConstant(stay);
  return q;
}

}  // namespace

// ---------------------------------------------------------------------------
// finite_gaussian

FiniteGaussianModel::FiniteGaussianModel(FiniteGaussianConfig config)
    : config_(std::move(config)) {
  const std::size_t k = config_.states;
  if (k == 0) {
    throw ConfigError("hyper.states", "must be at least 1");
  }
  if (config_.mean_coeffs.empty()) {
    if (k == 1) {
      config_.mean_coeffs = {1.0};
    } else {
      for (std::size_t i = 0; i < k; ++i) {
        config_.mean_coeffs.push_back(-1.0 + 2.0 * static_cast<double>(i) /
                                                 static_cast<double>(k - 1));
      }
    }
  }
  if (config_.mean_coeffs.size() != k) {
    throw ConfigError("hyper.mean_coeffs", "needs one coefficient per state");
  }
  if (!(config_.sd > 0.0)) {
    throw ConfigError("hyper.sd", "must be positive");
  }
  if (config_.free.empty()) {
    throw ConfigError("hyper.free", "at least one parameter must be free");
  }
  std::set<std::string> seen;
  for (std::size_t i = 0; i < config_.free.size(); ++i) {
    const auto& name = config_.free[i];
    if (!seen.insert(name).second) {
      throw ConfigError("hyper.free", "duplicate parameter '" + name + "'");
    }
    if (name == "mean_scale") {
      mean_index_ = static_cast<int>(i);
    } else if (name == "sd") {
      sd_index_ = static_cast<int>(i);
    } else if (name == "stay_prob") {
      stay_index_ = static_cast<int>(i);
    } else {
      throw ConfigError("hyper.free", "unknown parameter '" + name + "'");
    }
  }
  if (stay_index_ >= 0 && config_.transition) {
    throw ConfigError("hyper.transition", "cannot fix the transition matrix when stay_prob is free");
  }
  if (stay_index_ >= 0 && k < 2) {
    throw ConfigError("hyper.free", "stay_prob needs at least two states");
  }
  if (config_.transition) {
    if (static_cast<std::size_t>(config_.transition->rows()) != k) {
      throw ConfigError("hyper.transition", "must be K x K");
    }
    validate_stochastic(*config_.transition, "hyper.transition");
    cumulative_ = cumulative_rows(*config_.transition);
  } else {
    if (!(config_.stay_prob >= 0.0 && config_.stay_prob <= 1.0)) {
      throw ConfigError("hyper.stay_prob", "must lie in [0, 1]");
    }
    cumulative_ = cumulative_rows(symmetric_chain(k, config_.stay_prob));
  }
  if (config_.initial) {
    if (static_cast<std::size_t>(config_.initial->size()) != k ||
        (config_.initial->array() < 0.0).any() ||
        std::abs(config_.initial->sum() - 1.0) > kRowSumTolerance) {
      throw ConfigError("hyper.initial", "must be a probability vector of length K");
    }
    initial_ = *config_.initial;
  } else if (stay_index_ >= 0 || !config_.transition) {
    initial_ = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(k), 1.0 / static_cast<double>(k));
  } else {
    initial_ = stationary_distribution(*config_.transition);
  }

  if (config_.box) {
    if (config_.box->dim() != config_.free.size()) {
      throw ConfigError("theta_box", "dimension does not match the free parameters");
    }
    box_ = *config_.box;
  } else {
    std::vector<Interval> bounds;
    for (const auto& name : config_.free) {
      if (name == "mean_scale") {
        bounds.push_back({0.0, 3.0});
      } else if (name == "sd") {
        bounds.push_back({0.2, 3.0});
      } else {
        bounds.push_back({0.05, 0.95});
      }
    }
    box_ = Box(std::move(bounds));
  }
}

FiniteGaussianModel::Resolved FiniteGaussianModel::resolve(Theta theta) const {
  return {mean_index_ >= 0 ? theta[static_cast<std::size_t>(mean_index_)] : config_.mean_scale,
          sd_index_ >= 0 ? theta[static_cast<std::size_t>(sd_index_)] : config_.sd,
          stay_index_ >= 0 ? theta[static_cast<std::size_t>(stay_index_)] : config_.stay_prob};
}

double FiniteGaussianModel::mean(Theta theta, std::size_t state) const {
  return resolve(theta).mean_scale * config_.mean_coeffs[state];
}

double FiniteGaussianModel::sd(Theta theta) const { return resolve(theta).sd; }

void FiniteGaussianModel::sample_initial(Theta, Rng& rng, std::span<double> x) const {
  double acc = 0.0;
  const double u = rng.uniform01();
  std::size_t state = config_.states - 1;
  for (std::size_t i = 0; i + 1 < config_.states; ++i) {
    acc += initial_(static_cast<Eigen::Index>(i));
    if (u < acc) {
      state = i;
      break;
    }
  }
  x[0] = static_cast<double>(state);
}

void FiniteGaussianModel::sample_transition(Theta theta, std::span<const double> x, Rng& rng,
                                            std::span<double> next) const {
  const auto from = static_cast<std::size_t>(x[0]);
  const double u = rng.uniform01();
  if (stay_index_ >= 0) {
    const double stay = resolve(theta).stay;
    if (u < stay) {
      next[0] = x[0];
      return;
    }
    const double scaled = (u - stay) / (1.0 - stay) * static_cast<double>(config_.states - 1);
    auto offset = std::min(static_cast<std::size_t>(scaled), config_.states - 2);
    next[0] = static_cast<double>(offset >= from ? offset + 1 : offset);
    return;
  }
  next[0] = static_cast<double>(
      sample_categorical(cumulative_.row(static_cast<Eigen::Index>(from)).transpose(), u));
}

void FiniteGaussianModel::sample_observation(Theta theta, std::span<const double> x, Rng& rng,
                                             std::span<double> y) const {
  const auto p = resolve(theta);
  y[0] = p.mean_scale * config_.mean_coeffs[static_cast<std::size_t>(x[0])] + p.sd * rng.normal();
}

std::optional<FiniteChain> FiniteGaussianModel::finite_chain(Theta theta) const {
  FiniteChain chain;
  chain.transition = config_.transition && stay_index_ < 0
                         ? *config_.transition
                         : symmetric_chain(config_.states, resolve(theta).stay);
  chain.initial = initial_;
  return chain;
}

std::vector<Eigen::MatrixXd> FiniteGaussianModel::transition_gradient(Theta theta) const {
  const auto k = static_cast<Eigen::Index>(config_.states);
  std::vector<Eigen::MatrixXd> grads(theta.size(), Eigen::MatrixXd::Zero(k, k));
  if (stay_index_ >= 0) {
    auto& g = grads[static_cast<std::size_t>(stay_index_)];
    g.setConstant(-1.0 / static_cast<double>(k - 1));
    g.diagonal().setOnes();
  }
  return grads;
}

double FiniteGaussianModel::density(Theta theta, std::size_t state,
                                    std::span<const double> y) const {
  const auto p = resolve(theta);
  const double z = (y[0] - p.mean_scale * config_.mean_coeffs[state]) / p.sd;
  return detail::normal_pdf(z) / p.sd;
}

void FiniteGaussianModel::density_gradient(Theta theta, std::size_t state,
                                           std::span<const double> y,
                                           std::span<double> grad) const {
  const auto p = resolve(theta);
  const double c = config_.mean_coeffs[state];
  const double r = y[0] - p.mean_scale * c;
  const double g = detail::normal_pdf(r / p.sd) / p.sd;
  std::fill(grad.begin(), grad.end(), 0.0);
  if (mean_index_ >= 0) {
    grad[static_cast<std::size_t>(mean_index_)] = g * r * c / (p.sd * p.sd);
  }
  if (sd_index_ >= 0) {
    grad[static_cast<std::size_t>(sd_index_)] = g * (r * r / (p.sd * p.sd * p.sd) - 1.0 / p.sd);
  }
}

bool FiniteGaussianModel::has_perturbed_density(const PerturbationSpec& pert) const {
  return pert.kind() == KernelKind::kUniformBall || pert.kernel_name() == "gaussian";
}

double FiniteGaussianModel::perturbed_density(Theta theta, std::size_t state,
                                              std::span<const double> y,
                                              const PerturbationSpec& pert) const {
  if (pert.is_null()) {
    return density(theta, state, y);
  }
  if (!has_perturbed_density(pert)) {
    return HiddenMarkovModel::perturbed_density(theta, state, y, pert);
  }
  const auto p = resolve(theta);
  const double mu = p.mean_scale * config_.mean_coeffs[state];
  const double eps = pert.epsilon();
  if (pert.kind() == KernelKind::kUniformBall) {
    // In one dimension both norms give the interval [y - eps, y + eps].
    const double a = (y[0] - eps - mu) / p.sd;
    const double b = (y[0] + eps - mu) / p.sd;
    return detail::normal_cdf_diff(a, b) / (2.0 * eps);
  }
  const double v = p.sd * p.sd + eps * eps;
  const double r = y[0] - mu;
  return std::exp(-0.5 * r * r / v) / std::sqrt(2.0 * std::numbers::pi * v);
}

void FiniteGaussianModel::perturbed_density_gradient(Theta theta, std::size_t state,
                                                     std::span<const double> y,
                                                     const PerturbationSpec& pert,
                                                     std::span<double> grad) const {
  if (pert.is_null()) {
    density_gradient(theta, state, y, grad);
    return;
  }
  if (!has_perturbed_density(pert)) {
    HiddenMarkovModel::perturbed_density_gradient(theta, state, y, pert, grad);
    return;
  }
  const auto p = resolve(theta);
  const double c = config_.mean_coeffs[state];
  const double mu = p.mean_scale * c;
  const double eps = pert.epsilon();
  double d_mu = 0.0;
  double d_sd = 0.0;
  if (pert.kind() == KernelKind::kUniformBall) {
    const double a = (y[0] - eps - mu) / p.sd;
    const double b = (y[0] + eps - mu) / p.sd;
    const double pa = detail::normal_pdf(a);
    const double pb = detail::normal_pdf(b);
    d_mu = (pa - pb) / (p.sd * 2.0 * eps);
    d_sd = (a * pa - b * pb) / (p.sd * 2.0 * eps);
  } else {
    const double v = p.sd * p.sd + eps * eps;
    const double r = y[0] - mu;
    const double g = std::exp(-0.5 * r * r / v) / std::sqrt(2.0 * std::numbers::pi * v);
    d_mu = g * r / v;
    d_sd = g * (r * r / (v * v) - 1.0 / v) * p.sd;
  }
  std::fill(grad.begin(), grad.end(), 0.0);
  if (mean_index_ >= 0) {
    grad[static_cast<std::size_t>(mean_index_)] = d_mu * c;
  }
  if (sd_index_ >= 0) {
    grad[static_cast<std::size_t>(sd_index_)] = d_sd;
  }
}

// ---------------------------------------------------------------------------
// two_state_alpha_stable

namespace {

const Eigen::MatrixXd& alpha_stable_transition() {
  static const Eigen::MatrixXd q = [] {
    Eigen::MatrixXd m(2, 2);
    m << 19.0 / 20.0, 1.0 / 20.0, 1.0 / 5.0, 4.0 / 5.0;
    return m;
  }();
  return q;
}

}  // namespace

TwoStateAlphaStableModel::TwoStateAlphaStableModel(double alpha, std::optional<Box> box)
    : alpha_(alpha), box_(box ? *box : Box{{0.2, 5.0}, {-3.0, 3.0}}) {
  if (!(alpha > 0.0 && alpha <= 2.0)) {
    throw ConfigError("hyper.alpha", "must lie in (0, 2]");
  }
  if (box_.dim() != 2) {
    throw ConfigError("theta_box", "two_state_alpha_stable has two parameters (sigma, delta)");
  }
  if (box_[0].lo <= 0.0) {
    throw ConfigError("theta_box", "sigma bounds must be positive");
  }
}

void TwoStateAlphaStableModel::sample_initial(Theta, Rng& rng, std::span<double> x) const {
  // Stationary law of the chain: (0.8, 0.2).
  x[0] = rng.uniform01() < 0.8 ? 0.0 : 1.0;
}

void TwoStateAlphaStableModel::sample_transition(Theta, std::span<const double> x, Rng& rng,
                                                 std::span<double> next) const {
  const auto& q = alpha_stable_transition();
  const auto from = static_cast<Eigen::Index>(x[0]);
  next[0] = rng.uniform01() < q(from, 0) ? 0.0 : 1.0;
}

void TwoStateAlphaStableModel::sample_observation(Theta theta, std::span<const double> x,
                                                  Rng& rng, std::span<double> y) const {
  y[0] = alpha_stable(alpha_, 0.0, theta[0], level(static_cast<std::size_t>(x[0])) + theta[1],
                      rng);
}

std::optional<FiniteChain> TwoStateAlphaStableModel::finite_chain(Theta) const {
  FiniteChain chain;
  chain.transition = alpha_stable_transition();
  chain.initial = Eigen::Vector2d(0.8, 0.2);
  return chain;
}

std::vector<Eigen::MatrixXd> TwoStateAlphaStableModel::transition_gradient(Theta theta) const {
  return std::vector<Eigen::MatrixXd>(theta.size(), Eigen::MatrixXd::Zero(2, 2));
}

// ---------------------------------------------------------------------------
// iid_pm_theta

IidPmThetaModel::IidPmThetaModel(std::optional<Box> box) : box_(box ? *box : Box{{0.0, 3.0}}) {
  if (box_.dim() != 1) {
    throw ConfigError("theta_box", "iid_pm_theta has one parameter");
  }
}

void IidPmThetaModel::sample_initial(Theta, Rng& rng, std::span<double> x) const {
  x[0] = rng.uniform01() < 0.5 ? 0.0 : 1.0;
}

void IidPmThetaModel::sample_transition(Theta, std::span<const double>, Rng& rng,
                                        std::span<double> next) const {
  next[0] = rng.uniform01() < 0.5 ? 0.0 : 1.0;
}

void IidPmThetaModel::sample_observation(Theta theta, std::span<const double> x, Rng&,
                                         std::span<double> y) const {
  y[0] = x[0] == 0.0 ? -theta[0] : theta[0];
}

std::optional<FiniteChain> IidPmThetaModel::finite_chain(Theta) const {
  FiniteChain chain;
  chain.transition = Eigen::MatrixXd::Constant(2, 2, 0.5);
  chain.initial = Eigen::Vector2d(0.5, 0.5);
  return chain;
}

std::vector<Eigen::MatrixXd> IidPmThetaModel::transition_gradient(Theta theta) const {
  return std::vector<Eigen::MatrixXd>(theta.size(), Eigen::MatrixXd::Zero(2, 2));
}

// ---------------------------------------------------------------------------
// factory

namespace {

using nlohmann::json;

std::optional<Box> parse_box_field(const json& hyper, const char* key) {
  if (!hyper.contains(key)) {
    return std::nullopt;
  }
  std::vector<Interval> bounds;
  for (const auto& row : hyper.at(key)) {
    if (!row.is_array() || row.size() != 2) {
      throw ConfigError(key, "each entry must be a [lo, hi] pair");
    }
    bounds.push_back({row[0].get<double>(), row[1].get<double>()});
  }
  try {
    return Box(std::move(bounds));
  } catch (const DomainError& e) {
    throw ConfigError(key, e.what());
  }
}

Eigen::MatrixXd parse_matrix(const json& value, const std::string& key) {
  if (!value.is_array() || value.empty()) {
    throw ConfigError(key, "must be a non-empty array of rows");
  }
  const auto rows = static_cast<Eigen::Index>(value.size());
  const auto cols = static_cast<Eigen::Index>(value[0].size());
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const auto& row = value[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw ConfigError(key, "rows must have equal length");
    }
    for (Eigen::Index j = 0; j < cols; ++j) {
      m(i, j) = row[static_cast<std::size_t>(j)].get<double>();
    }
  }
  return m;
}

template <typename T>
T get_or(const json& hyper, const char* key, T fallback) {
  if (!hyper.contains(key)) {
    return fallback;
  }
  try {
    return hyper.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string("hyper.") + key, "has the wrong type");
  }
}

void reject_unknown_keys(const json& hyper, std::initializer_list<const char*> allowed) {
  for (const auto& item : hyper.items()) {
    const bool known = std::any_of(allowed.begin(), allowed.end(),
                                   [&](const char* a) { return item.key() == a; });
    if (!known) {
      throw ConfigError("hyper." + item.key(), "unknown hyper-parameter");
    }
  }
}

}  // namespace

ModelSpec builtin_model(std::string_view name, std::string_view hyper_json) {
  json hyper;
  try {
    hyper = hyper_json.empty() ? json::object() : json::parse(hyper_json);
  } catch (const json::parse_error& e) {
    throw ConfigError("hyper", std::string("invalid JSON: ") + e.what());
  }
  if (!hyper.is_object()) {
    throw ConfigError("hyper", "must be a JSON object");
  }
  try {
    if (name == "finite_gaussian") {
      reject_unknown_keys(hyper, {"states", "transition", "mean_coeffs", "mean_scale", "sd",
                                  "stay_prob", "initial", "free", "theta_box"});
      FiniteGaussianConfig config;
      config.states = get_or<std::size_t>(hyper, "states", 2);
      if (hyper.contains("transition")) {
        config.transition = parse_matrix(hyper.at("transition"), "hyper.transition");
        if (!hyper.contains("states")) {
          config.states = static_cast<std::size_t>(config.transition->rows());
        }
      }
      config.mean_coeffs = get_or<std::vector<double>>(hyper, "mean_coeffs", {});
      config.mean_scale = get_or<double>(hyper, "mean_scale", 1.0);
      config.sd = get_or<double>(hyper, "sd", 1.0);
      config.stay_prob = get_or<double>(hyper, "stay_prob", 0.7);
      if (hyper.contains("initial")) {
        const auto values = get_or<std::vector<double>>(hyper, "initial", {});
        config.initial = Eigen::Map<const Eigen::VectorXd>(values.data(),
                                                           static_cast<Eigen::Index>(values.size()));
      }
      config.free = get_or<std::vector<std::string>>(hyper, "free", {"mean_scale"});
      config.box = parse_box_field(hyper, "theta_box");
      return std::make_shared<FiniteGaussianModel>(std::move(config));
    }
    if (name == "two_state_alpha_stable") {
      reject_unknown_keys(hyper, {"alpha", "theta_box"});
      return std::make_shared<TwoStateAlphaStableModel>(get_or<double>(hyper, "alpha", 1.8),
                                                        parse_box_field(hyper, "theta_box"));
    }
    if (name == "iid_pm_theta") {
      reject_unknown_keys(hyper, {"theta_box"});
      return std::make_shared<IidPmThetaModel>(parse_box_field(hyper, "theta_box"));
    }
  } catch (const json::exception& e) {
    throw ConfigError("hyper", e.what());
  }
  throw ConfigError("model", "unknown model '" + std::string(name) + "'");
}

std::vector<std::string> builtin_model_names() {
  return {"two_state_alpha_stable", "finite_gaussian", "iid_pm_theta"};
}

}  // namespace abc_hmm
