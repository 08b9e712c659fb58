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

#ifndef ABC_HMM_PERTURBATION_HPP
#define ABC_HMM_PERTURBATION_HPP

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <string>

#include "abc_hmm/random_variates.hpp"
#include "abc_hmm/rng.hpp"

namespace abc_hmm {

/// A smoothing density phi on R^m used by smoothed ABC.
///
/// Kernels must be strictly positive, continuously differentiable and have a finite
/// second moment. These properties are declared by whoever builds the kernel.
struct SmoothKernel {
  std::string name;
  /// phi(z), z in R^m.
  std::function<double(std::span<const double>)> density;
  /// Optional log of `density`; used to keep far-tail weights from underflowing.
  std::function<double(std::span<const double>)> log_density;
  /// Draws Z ~ Phi into the span. Empty when no sampler is registered.
  std::function<void(Rng&, std::span<double>)> sampler;
  /// sup_z phi(z) for dimension m.
  std::function<double(std::size_t)> supremum;
  bool positive_everywhere = true;
  bool finite_second_moment = true;
};

/// Standard multivariate normal kernel (with sampler).
std::shared_ptr<const SmoothKernel> gaussian_kernel();

/// Looks up a registered kernel by name ("gaussian"). Throws ConfigError("kernel") otherwise.
std::shared_ptr<const SmoothKernel> kernel_by_name(const std::string& name);

enum class KernelKind { kUniformBall, kSmooth };

/// The epsilon-perturbation Y -> Y + epsilon Z defining the ABC approximation.
class PerturbationSpec {
 public:
  /// Indicator ABC: Z uniform on the unit ball of `norm`. epsilon = 0 denotes "no perturbation".
  static PerturbationSpec uniform_ball(double epsilon, BallNorm norm = BallNorm::kLinf);

  /// Smoothed ABC with kernel phi. Throws ConfigError if the kernel violates its declared
  /// positivity or second-moment requirements.
  static PerturbationSpec smooth(double epsilon, std::shared_ptr<const SmoothKernel> kernel);

  /// Same kernel and norm with a different radius.
  [[nodiscard]] PerturbationSpec with_epsilon(double epsilon) const {
    return PerturbationSpec(epsilon, kind_, norm_, kernel_);
  }

  [[nodiscard]] double epsilon() const noexcept { return epsilon_; }
  [[nodiscard]] KernelKind kind() const noexcept { return kind_; }
  [[nodiscard]] BallNorm norm() const noexcept { return norm_; }
  [[nodiscard]] const std::shared_ptr<const SmoothKernel>& kernel() const noexcept {
    return kernel_;
  }
  [[nodiscard]] bool is_null() const noexcept { return epsilon_ == 0.0; }
  [[nodiscard]] std::string kernel_name() const;
  [[nodiscard]] std::string norm_name() const;

  /// SMC weight of pseudo-observation y against observation y_hat:
  /// 1{y in B^eps_{y_hat}} or phi((y_hat - y) / eps).
  [[nodiscard]] double weight(std::span<const double> y_hat, std::span<const double> y) const;

  /// Upper bound of `weight` in dimension m.
  /// log of weight(); -inf outside the ball for the indicator kernel.
  [[nodiscard]] double log_weight(std::span<const double> y_hat, std::span<const double> y) const;

  [[nodiscard]] double max_weight(std::size_t dim) const;

  /// log of the theta-free constant c with E[weight] = c * (density of Y + eps Z at y_hat):
  /// log nu(B^eps) for balls, m log eps for smooth kernels.
  [[nodiscard]] double log_normalizer(std::size_t dim) const;

  /// Whether unit-scale noise Z can be drawn.
  [[nodiscard]] bool has_sampler() const noexcept;

  /// Draws unit-scale noise Z into `z`. Throws ConfigError("kernel") without a sampler.
  void sample_unit_noise(Rng& rng, std::span<double> z) const;

 private:
  PerturbationSpec(double epsilon, KernelKind kind, BallNorm norm,
                   std::shared_ptr<const SmoothKernel> kernel);

  double epsilon_;
  KernelKind kind_;
  BallNorm norm_;
  std::shared_ptr<const SmoothKernel> kernel_;
};

}  // namespace abc_hmm

#endif  // ABC_HMM_PERTURBATION_HPP
