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

#include "abc_hmm/fisher.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "abc_hmm/builtin_models.hpp"
#include "abc_hmm/errors.hpp"
#include "abc_hmm/forward.hpp"
#include "abc_hmm/parallel.hpp"
#include "abc_hmm/simulate.hpp"

namespace abc_hmm {

namespace {

ParameterVector fixed_parameter(Theta theta) {
  std::vector<Interval> bounds;
  for (const double v : theta) {
    bounds.push_back({v, v});
  }
  return ParameterVector(std::vector<double>(theta.begin(), theta.end()), Box(bounds));
}

void check_fisher_inputs(const HiddenMarkovModel& model, Theta theta,
                         const FisherOptions& options) {
  require_finite_tractable(model, "Fisher information");
  if (theta.size() != model.param_dim()) {
    throw DomainError("Fisher information: theta dimension does not match the model");
  }
  if (options.n == 0 || options.replicates < 2) {
    throw ConfigError("replicates", "need n >= 1 and at least 2 replicates");
  }
}

/// Mean of outer products of the increment rows from `first` on.
Eigen::MatrixXd outer_mean(const Eigen::MatrixXd& increments, std::size_t first) {
  const auto rows = increments.rows() - static_cast<Eigen::Index>(first);
  const auto tail = increments.bottomRows(rows);
  return tail.transpose() * tail / static_cast<double>(rows);
}

struct MatrixStats {
  Eigen::MatrixXd mean;
  Eigen::MatrixXd se;
};

MatrixStats matrix_stats(const std::vector<Eigen::MatrixXd>& samples) {
  const double r = static_cast<double>(samples.size());
  MatrixStats stats;
  stats.mean = Eigen::MatrixXd::Zero(samples[0].rows(), samples[0].cols());
  for (const auto& s : samples) {
    stats.mean += s;
  }
  stats.mean /= r;
  Eigen::MatrixXd squares = Eigen::MatrixXd::Zero(stats.mean.rows(), stats.mean.cols());
  for (const auto& s : samples) {
    squares += (s - stats.mean).cwiseAbs2();
  }
  stats.se = (squares / (r - 1.0) / r).cwiseSqrt();
  return stats;
}

/// Standard error of the mean of the scalar projections f(sample).
template <typename Projection>
double projected_se(const std::vector<Eigen::MatrixXd>& samples, Projection&& f) {
  const double r = static_cast<double>(samples.size());
  double sum = 0.0;
  std::vector<double> values;
  values.reserve(samples.size());
  for (const auto& s : samples) {
    values.push_back(f(s));
    sum += values.back();
  }
  const double mean = sum / r;
  double squares = 0.0;
  for (const double v : values) {
    squares += (v - mean) * (v - mean);
  }
  return std::sqrt(squares / (r - 1.0) / r);
}

double frobenius_se(const std::vector<Eigen::MatrixXd>& samples, const Eigen::MatrixXd& mean) {
  const double norm = mean.norm();
  if (norm == 0.0) {
    return 0.0;
  }
  const Eigen::MatrixXd direction = mean / norm;
  return projected_se(samples, [&](const Eigen::MatrixXd& s) {
    return (direction.array() * s.array()).sum();
  });
}

std::optional<double> loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() < 2) {
    return std::nullopt;
  }
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) {
      return std::nullopt;
    }
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= static_cast<double>(x.size());
  my /= static_cast<double>(x.size());
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  if (sxx == 0.0) {
    return std::nullopt;
  }
  return sxy / sxx;
}

Trajectory shifted(const Trajectory& data, const std::vector<double>& noise, double scale) {
  std::vector<double> obs(data.observations().begin(), data.observations().end());
  for (std::size_t i = 0; i < obs.size(); ++i) {
    obs[i] += scale * noise[i];
  }
  return Trajectory(data.obs_dim(), std::move(obs));
}

}  // namespace

double dobrushin_coefficient(const Eigen::MatrixXd& transition) {
  double largest = 0.0;
  for (Eigen::Index i = 0; i < transition.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < transition.rows(); ++j) {
      largest = std::max(largest, 0.5 * (transition.row(i) - transition.row(j)).cwiseAbs().sum());
    }
  }
  return largest;
}

FisherEstimate estimate_fisher(const HiddenMarkovModel& model, Theta theta_star,
                               const std::optional<PerturbationSpec>& pert,
                               const FisherOptions& options) {
  check_fisher_inputs(model, theta_star, options);
  const bool perturbed = pert && !pert->is_null();
  const ParameterVector theta = fixed_parameter(theta_star);
  std::vector<Eigen::MatrixXd> samples(options.replicates);
  parallel_for(
      options.replicates,
      [&](std::size_t r) {
        Trajectory data = simulate(model, theta, options.burn_in + options.n,
                                   derive_seed(options.seed, StreamTag::kFisherData, r));
        if (perturbed) {
          data = noisify(data, *pert, derive_seed(options.seed, StreamTag::kFisherNoise, r));
        }
        const Eigen::MatrixXd increments = forward_score_increments(
            model, theta_star, data, perturbed ? pert : std::nullopt);
        samples[r] = outer_mean(increments, options.burn_in);
      },
      options.threads);
  const MatrixStats stats = matrix_stats(samples);
  FisherEstimate estimate;
  estimate.matrix = 0.5 * (stats.mean + stats.mean.transpose());
  estimate.se_matrix = stats.se;
  estimate.n_used = options.n;
  estimate.replicates = options.replicates;
  if (perturbed) {
    estimate.epsilon = pert->epsilon();
    estimate.kernel = pert->kernel_name();
  }
  return estimate;
}

InformationLossCurve information_loss_curve(const HiddenMarkovModel& model, Theta theta_star,
                                            const std::vector<double>& epsilons,
                                            const PerturbationSpec& kernel,
                                            const FisherOptions& options) {
  check_fisher_inputs(model, theta_star, options);
  if (epsilons.empty()) {
    throw ConfigError("epsilons", "need at least one epsilon");
  }
  for (std::size_t i = 0; i < epsilons.size(); ++i) {
    if (!(epsilons[i] > 0.0) || (i > 0 && !(epsilons[i] > epsilons[i - 1]))) {
      throw ConfigError("epsilons", "must be positive and strictly ascending");
    }
  }
  if (!kernel.has_sampler()) {
    throw ConfigError("kernel", "kernel '" + kernel.kernel_name() + "' has no sampler");
  }
  const ParameterVector theta = fixed_parameter(theta_star);
  const std::size_t reps = options.replicates;
  const std::size_t e_count = epsilons.size();
  const std::size_t m = model.obs_dim();
  std::vector<Eigen::MatrixXd> exact(reps);
  std::vector<std::vector<Eigen::MatrixXd>> loss(e_count, std::vector<Eigen::MatrixXd>(reps));
  std::vector<std::vector<Eigen::MatrixXd>> perturbed(e_count,
                                                      std::vector<Eigen::MatrixXd>(reps));
  parallel_for(
      reps,
      [&](std::size_t r) {
        const std::size_t total = options.burn_in + options.n;
        const Trajectory data =
            simulate(model, theta, total, derive_seed(options.seed, StreamTag::kFisherData, r));
        std::vector<double> noise(total * m);
        Rng rng(StreamKey{options.seed, StreamTag::kFisherNoise, r, 0});
        for (std::size_t k = 0; k < total; ++k) {
          kernel.sample_unit_noise(rng, std::span<double>(noise.data() + k * m, m));
        }
        exact[r] = outer_mean(forward_score_increments(model, theta_star, data), options.burn_in);
        for (std::size_t e = 0; e < e_count; ++e) {
          const PerturbationSpec pert = kernel.with_epsilon(epsilons[e]);
          const Eigen::MatrixXd plus = outer_mean(
              forward_score_increments(model, theta_star, shifted(data, noise, epsilons[e]),
                                       pert),
              options.burn_in);
          const Eigen::MatrixXd minus = outer_mean(
              forward_score_increments(model, theta_star, shifted(data, noise, -epsilons[e]),
                                       pert),
              options.burn_in);
          perturbed[e][r] = 0.5 * (plus + minus);
          loss[e][r] = exact[r] - perturbed[e][r];
        }
      },
      options.threads);

  InformationLossCurve curve;
  const MatrixStats info = matrix_stats(exact);
  curve.information = info.mean;
  curve.information_se = info.se;
  curve.information_norm = info.mean.norm();
  curve.n_used = options.n;
  curve.replicates = reps;
  curve.kernel = kernel.kernel_name();
  for (std::size_t e = 0; e < e_count; ++e) {
    InformationLossPoint point;
    point.epsilon = epsilons[e];
    const MatrixStats stats = matrix_stats(loss[e]);
    point.loss = 0.5 * (stats.mean + stats.mean.transpose());
    point.loss_se = stats.se;
    point.loss_norm = point.loss.norm();
    point.loss_norm_se = frobenius_se(loss[e], point.loss);
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(point.loss);
    point.min_eigenvalue = solver.eigenvalues()(0);
    const Eigen::VectorXd v = solver.eigenvectors().col(0);
    point.min_eigenvalue_se =
        projected_se(loss[e], [&](const Eigen::MatrixXd& s) { return v.dot(s * v); });
    const MatrixStats pstats = matrix_stats(perturbed[e]);
    point.perturbed_norm = pstats.mean.norm();
    point.perturbed_norm_se = frobenius_se(perturbed[e], pstats.mean);
    curve.points.push_back(std::move(point));
  }
  if (e_count >= 2) {
    std::vector<double> x;
    std::vector<double> y;
    for (std::size_t e = 0; e < std::min<std::size_t>(4, e_count); ++e) {
      x.push_back(curve.points[e].epsilon);
      y.push_back(curve.points[e].loss_norm);
    }
    curve.small_eps_slope = loglog_slope(x, y);
    curve.slope_reliable = curve.small_eps_slope.has_value() &&
                           curve.points[0].loss_norm > 2.0 * curve.points[0].loss_norm_se;
  }
  if (e_count >= 7) {
    std::vector<double> x;
    std::vector<double> y;
    for (std::size_t e = e_count - 3; e < e_count; ++e) {
      x.push_back(curve.points[e].epsilon);
      y.push_back(curve.points[e].perturbed_norm);
    }
    curve.large_eps_slope = loglog_slope(x, y);
  }
  return curve;
}

MissingInformationReport missing_information_check(const HiddenMarkovModel& model,
                                                   Theta theta_star,
                                                   const PerturbationSpec& pert,
                                                   const MissingInformationOptions& options) {
  const auto* gaussian = dynamic_cast<const FiniteGaussianModel*>(&model);
  if (gaussian == nullptr) {
    throw UnsupportedModel("missing_information_check: needs a finite_gaussian model");
  }
  if (pert.is_null()) {
    throw ConfigError("epsilon", "missing_information_check needs epsilon > 0");
  }
  if (options.horizon == 0 || options.windows < 2) {
    throw ConfigError("horizon", "need a positive horizon and at least 2 windows");
  }
  const std::size_t d = theta_star.size();
  const FiniteChain chain = *model.finite_chain(theta_star);
  for (const auto& dq : model.transition_gradient(theta_star)) {
    if (dq.cwiseAbs().maxCoeff() > 1e-12) {
      throw UnsupportedModel(
          "missing_information_check: the transition matrix must not depend on theta");
    }
  }
  const Eigen::VectorXd stationary = stationary_distribution(chain.transition);
  const auto k_states = static_cast<std::size_t>(chain.transition.rows());
  double mean_lo = std::numeric_limits<double>::infinity();
  double mean_hi = -mean_lo;
  for (std::size_t x = 0; x < k_states; ++x) {
    mean_lo = std::min(mean_lo, gaussian->mean(theta_star, x));
    mean_hi = std::max(mean_hi, gaussian->mean(theta_star, x));
  }
  const double sd = gaussian->sd(theta_star);
  const double y_lo = mean_lo - pert.epsilon() - 9.0 * sd;
  const double y_hi = mean_hi + pert.epsilon() + 9.0 * sd;
  const auto grid_points =
      static_cast<std::size_t>(std::ceil((y_hi - y_lo) / (options.quadrature_step * sd))) + 1;
  const double dy = (y_hi - y_lo) / static_cast<double>(grid_points - 1);

  const ForwardRecursion recursion(model, theta_star, pert, true);
  const std::size_t h = options.horizon;
  std::vector<Eigen::MatrixXd> samples(options.windows);
  parallel_for(
      options.windows,
      [&](std::size_t w) {
        Rng rng(StreamKey{options.seed, StreamTag::kWindow, w, 0});
        // Stationary window X_{-h..h}; past observations exact, future ones perturbed.
        std::vector<double> obs(2 * h + 1);
        double state = 0.0;
        {
          const double u = rng.uniform01();
          double acc = 0.0;
          std::size_t x = k_states - 1;
          for (std::size_t i = 0; i + 1 < k_states; ++i) {
            acc += stationary(static_cast<Eigen::Index>(i));
            if (u < acc) {
              x = i;
              break;
            }
          }
          state = static_cast<double>(x);
        }
        double noise = 0.0;
        for (std::size_t t = 0; t < 2 * h + 1; ++t) {
          if (t > 0) {
            double next = 0.0;
            model.sample_transition(theta_star, std::span<const double>(&state, 1), rng,
                                    std::span<double>(&next, 1));
            state = next;
          }
          model.sample_observation(theta_star, std::span<const double>(&state, 1), rng,
                                   std::span<double>(&obs[t], 1));
          if (t > h) {
            pert.sample_unit_noise(rng, std::span<double>(&noise, 1));
            obs[t] += pert.epsilon() * noise;
          }
        }
        ForwardState past = recursion.initial_state(stationary);
        for (std::size_t t = 0; t < h; ++t) {
          recursion.step(past, std::span<const double>(&obs[t], 1), Emission::kExact);
        }
        auto finish_future = [&](ForwardState s) {
          for (std::size_t t = h + 1; t < 2 * h + 1; ++t) {
            recursion.step(s, std::span<const double>(&obs[t], 1), Emission::kPerturbed);
          }
          return s;
        };
        ForwardState without = past;
        recursion.step(without, {}, Emission::kMissing);
        without = finish_future(std::move(without));

        Eigen::MatrixXd info[2];
        for (int mode = 0; mode < 2; ++mode) {
          const Emission emission = mode == 0 ? Emission::kExact : Emission::kPerturbed;
          Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(d),
                                                      static_cast<Eigen::Index>(d));
          double mass = 0.0;
          for (std::size_t i = 0; i < grid_points; ++i) {
            const double y0 = y_lo + dy * static_cast<double>(i);
            ForwardState with = past;
            if (recursion.step(with, std::span<const double>(&y0, 1), emission) ==
                -std::numeric_limits<double>::infinity()) {
              continue;
            }
            with = finish_future(std::move(with));
            const double weight = std::exp(with.log_scale - without.log_scale) *
                                  ((i == 0 || i + 1 == grid_points) ? 0.5 : 1.0);
            const Eigen::VectorXd s = with.score - without.score;
            acc += weight * s * s.transpose();
            mass += weight;
          }
          info[mode] = acc / mass;
        }
        samples[w] = info[0] - info[1];
      },
      options.threads);

  MissingInformationReport report;
  report.epsilon = pert.epsilon();
  report.horizon = h;
  report.windows = options.windows;
  report.window_rho = dobrushin_coefficient(chain.transition);
  report.truncation_bound = std::pow(report.window_rho, static_cast<double>(h));
  const MatrixStats stats = matrix_stats(samples);
  report.missing = 0.5 * (stats.mean + stats.mean.transpose());
  report.missing_se = stats.se;

  const InformationLossCurve direct =
      information_loss_curve(model, theta_star, {pert.epsilon()}, pert, options.direct);
  report.direct = direct.points[0].loss;
  report.direct_se = direct.points[0].loss_se;
  report.information = direct.information;
  report.missing_norm = report.missing.norm();
  report.direct_norm = report.direct.norm();
  report.information_norm = direct.information_norm;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i; j < d; ++j) {
      const auto a = static_cast<Eigen::Index>(i);
      const auto b = static_cast<Eigen::Index>(j);
      const double combined = std::hypot(report.missing_se(a, b), report.direct_se(a, b));
      const double gap = std::abs(report.missing(a, b) - report.direct(a, b));
      report.max_z = std::max(report.max_z, combined > 0.0
                                                ? gap / combined
                                                : (gap > 0.0 ? std::numeric_limits<double>::infinity()
                                                             : 0.0));
    }
  }
  return report;
}

}  // namespace abc_hmm
