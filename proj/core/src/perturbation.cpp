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

#include "abc_hmm/perturbation.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "abc_hmm/errors.hpp"

namespace abc_hmm {

std::shared_ptr<const SmoothKernel> gaussian_kernel() {
  static const auto kernel = [] {
    auto k = std::make_shared<SmoothKernel>();
    k->name = "gaussian";
    k->density = [](std::span<const double> z) {
      double squared = 0.0;
      for (double v : z) {
        squared += v * v;
      }
      const double m = static_cast<double>(z.size());
      return std::exp(-0.5 * squared - 0.5 * m * std::log(2.0 * std::numbers::pi));
    };
    k->log_density = [](std::span<const double> z) {
      double squared = 0.0;
      for (double v : z) {
        squared += v * v;
      }
      const double m = static_cast<double>(z.size());
      return -0.5 * squared - 0.5 * m * std::log(2.0 * std::numbers::pi);
    };
    k->sampler = [](Rng& rng, std::span<double> z) {
      for (double& v : z) {
        v = rng.normal();
      }
    };
    k->supremum = [](std::size_t m) {
      return std::pow(2.0 * std::numbers::pi, -0.5 * static_cast<double>(m));
    };
    return std::shared_ptr<const SmoothKernel>(std::move(k));
  }();
  return kernel;
}

std::shared_ptr<const SmoothKernel> kernel_by_name(const std::string& name) {
  if (name == "gaussian") {
    return gaussian_kernel();
  }
  throw ConfigError("kernel", "unknown smoothing kernel '" + name + "'");
}

PerturbationSpec::PerturbationSpec(double epsilon, KernelKind kind, BallNorm norm,
                                   std::shared_ptr<const SmoothKernel> kernel)
    : epsilon_(epsilon), kind_(kind), norm_(norm), kernel_(std::move(kernel)) {
  if (!(epsilon_ >= 0.0) || !std::isfinite(epsilon_)) {
    throw ConfigError("epsilon", "must be a finite non-negative number");
  }
}

PerturbationSpec PerturbationSpec::uniform_ball(double epsilon, BallNorm norm) {
  return PerturbationSpec(epsilon, KernelKind::kUniformBall, norm, nullptr);
}

PerturbationSpec PerturbationSpec::smooth(double epsilon,
                                          std::shared_ptr<const SmoothKernel> kernel) {
  if (!kernel || !kernel->density) {
    throw ConfigError("kernel", "smooth perturbation requires a kernel density");
  }
  if (!kernel->positive_everywhere) {
    throw ConfigError("kernel", "kernel '" + kernel->name + "' must be positive everywhere");
  }
  if (!kernel->finite_second_moment) {
    throw ConfigError("kernel", "kernel '" + kernel->name + "' must have a finite second moment");
  }
  return PerturbationSpec(epsilon, KernelKind::kSmooth, BallNorm::kLinf, std::move(kernel));
}

std::string PerturbationSpec::kernel_name() const {
  return kind_ == KernelKind::kUniformBall ? "uniform_ball" : kernel_->name;
}

std::string PerturbationSpec::norm_name() const {
  return norm_ == BallNorm::kLinf ? "linf" : "l2";
}

double PerturbationSpec::weight(std::span<const double> y_hat, std::span<const double> y) const {
  if (kind_ == KernelKind::kUniformBall) {
    if (norm_ == BallNorm::kLinf) {
      for (std::size_t i = 0; i < y.size(); ++i) {
        if (std::abs(y_hat[i] - y[i]) > epsilon_) {
          return 0.0;
        }
      }
      return 1.0;
    }
    double squared = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
      const double d = y_hat[i] - y[i];
      squared += d * d;
    }
    return squared <= epsilon_ * epsilon_ ? 1.0 : 0.0;
  }
  double scaled[16];
  std::vector<double> heap;
  std::span<double> z;
  if (y.size() <= 16) {
    z = std::span<double>(scaled, y.size());
  } else {
    heap.resize(y.size());
    z = heap;
  }
  for (std::size_t i = 0; i < y.size(); ++i) {
    z[i] = (y_hat[i] - y[i]) / epsilon_;
  }
  return kernel_->density(z);
}

double PerturbationSpec::log_weight(std::span<const double> y_hat,
                                    std::span<const double> y) const {
  if (kind_ == KernelKind::kUniformBall || !kernel_->log_density) {
    return std::log(weight(y_hat, y));
  }
  double scaled[16];
  std::vector<double> heap;
  std::span<double> z;
  if (y.size() <= 16) {
    z = std::span<double>(scaled, y.size());
  } else {
    heap.resize(y.size());
    z = heap;
  }
  for (std::size_t i = 0; i < y.size(); ++i) {
    z[i] = (y_hat[i] - y[i]) / epsilon_;
  }
  return kernel_->log_density(z);
}

double PerturbationSpec::max_weight(std::size_t dim) const {
  if (kind_ == KernelKind::kUniformBall) {
    return 1.0;
  }
  return kernel_->supremum ? kernel_->supremum(dim) : std::numeric_limits<double>::infinity();
}

double PerturbationSpec::log_normalizer(std::size_t dim) const {
  if (kind_ == KernelKind::kUniformBall) {
    return std::log(ball_volume(norm_, dim, epsilon_));
  }
  return static_cast<double>(dim) * std::log(epsilon_);
}

bool PerturbationSpec::has_sampler() const noexcept {
  return kind_ == KernelKind::kUniformBall || static_cast<bool>(kernel_->sampler);
}

void PerturbationSpec::sample_unit_noise(Rng& rng, std::span<double> z) const {
  if (kind_ == KernelKind::kUniformBall) {
    ball_uniform(norm_, rng, z);
    return;
  }
  if (!kernel_->sampler) {
    throw ConfigError("kernel", "kernel '" + kernel_->name + "' has no registered sampler");
  }
  kernel_->sampler(rng, z);
}

}  // namespace abc_hmm
