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

#ifndef ABC_HMM_FISHER_HPP
#define ABC_HMM_FISHER_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "abc_hmm/model.hpp"
#include "abc_hmm/perturbation.hpp"

namespace abc_hmm {

struct FisherOptions {
  /// Scored steps per replicate, after the burn-in.
  std::size_t n = 5000;
  /// Leading steps simulated but not scored, so the filter starts near stationarity.
  std::size_t burn_in = 200;
  std::size_t replicates = 20;
  std::uint64_t seed = 0;
  /// Workers across replicates (0 = default_thread_count()).
  std::size_t threads = 0;
};

/// Per-observation Fisher information estimate.
struct FisherEstimate {
  Eigen::MatrixXd matrix;
  /// Elementwise standard errors from the replicate spread.
  Eigen::MatrixXd se_matrix;
  std::size_t n_used = 0;
  std::size_t replicates = 0;
  /// Absent for the unperturbed information I.
  std::optional<double> epsilon;
  std::string kernel;
};

/// Estimates I (no perturbation) or I^eps. Each replicate simulates the (perturbed) process
/// at theta_star and averages the outer products of the conditional score increments
/// grad log p(y_k | y_{1:k-1}) over the scored steps.
FisherEstimate estimate_fisher(const HiddenMarkovModel& model, Theta theta_star,
                               const std::optional<PerturbationSpec>& pert,
                               const FisherOptions& options);

struct InformationLossPoint {
  double epsilon = 0.0;
  /// Mean of I - I^eps over replicates, with elementwise standard errors.
  Eigen::MatrixXd loss;
  Eigen::MatrixXd loss_se;
  /// Frobenius norm of `loss` and its delta-method standard error.
  double loss_norm = 0.0;
  double loss_norm_se = 0.0;
  /// Smallest eigenvalue of `loss` and the standard error of v' D v along its eigenvector.
  double min_eigenvalue = 0.0;
  double min_eigenvalue_se = 0.0;
  /// Frobenius norm of the I^eps estimate.
  double perturbed_norm = 0.0;
  double perturbed_norm_se = 0.0;
};

struct InformationLossCurve {
  Eigen::MatrixXd information;
  Eigen::MatrixXd information_se;
  double information_norm = 0.0;
  std::vector<InformationLossPoint> points;
  /// Least-squares slope of log loss_norm against log epsilon over the four smallest epsilons.
  std::optional<double> small_eps_slope;
  /// False when the loss at the smallest epsilon is within two standard errors of zero.
  bool slope_reliable = false;
  /// Slope of log perturbed_norm over the three largest epsilons (seven or more epsilons).
  std::optional<double> large_eps_slope;
  std::size_t n_used = 0;
  std::size_t replicates = 0;
  std::string kernel;
};

/// I - I^eps on a list of ascending epsilons. Every epsilon reuses the same hidden path,
/// observations and unit noise Z of each replicate, and averages the perturbed information
/// over +Z and -Z, so the per-replicate differences are strongly correlated and the loss is
/// resolved at small epsilon. `kernel` supplies the noise law; its own epsilon is ignored.
InformationLossCurve information_loss_curve(const HiddenMarkovModel& model, Theta theta_star,
                                            const std::vector<double>& epsilons,
                                            const PerturbationSpec& kernel,
                                            const FisherOptions& options);

struct MissingInformationOptions {
  /// Observations on each side of Y_0 in the conditioning window.
  std::size_t horizon = 5;
  std::size_t windows = 400;
  /// Quadrature spacing over y_0 as a fraction of the smallest emission standard deviation.
  double quadrature_step = 0.04;
  std::uint64_t seed = 0;
  std::size_t threads = 0;
  /// Settings of the direct estimate of I - I^eps.
  FisherOptions direct;
};

struct MissingInformationReport {
  double epsilon = 0.0;
  std::size_t horizon = 0;
  std::size_t windows = 0;
  /// Dobrushin coefficient of the transition matrix and its horizon-th power.
  double window_rho = 0.0;
  double truncation_bound = 0.0;
  /// Monte Carlo mean over windows of J(Y_0 | C) - J(Y_0^eps | C), C = (Y_{-h:-1}, Y^eps_{1:h}).
  Eigen::MatrixXd missing;
  Eigen::MatrixXd missing_se;
  /// Direct estimate of I - I^eps from long trajectories.
  Eigen::MatrixXd direct;
  Eigen::MatrixXd direct_se;
  Eigen::MatrixXd information;
  /// Largest |missing - direct| in units of the combined standard error.
  double max_z = 0.0;
  double missing_norm = 0.0;
  double direct_norm = 0.0;
  double information_norm = 0.0;

  [[nodiscard]] bool agrees(double z = 3.0) const noexcept { return max_z <= z; }
};

/// Checks I - I^eps = E[J(Y_0 | C) - J(Y_0^eps | C)] on a finite Gaussian-emission model with a
/// theta-independent chain. Conditional informations are computed exactly on each window by
/// quadrature over y_0.
MissingInformationReport missing_information_check(const HiddenMarkovModel& model,
                                                   Theta theta_star,
                                                   const PerturbationSpec& pert,
                                                   const MissingInformationOptions& options);

/// Dobrushin ergodicity coefficient: half the largest L1 distance between transition rows.
double dobrushin_coefficient(const Eigen::MatrixXd& transition);

}  // namespace abc_hmm

#endif  // ABC_HMM_FISHER_HPP
