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

#include "abc_hmm/random_variates.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "abc_hmm/errors.hpp"

namespace abc_hmm {

void ball_uniform(BallNorm norm, Rng& rng, std::span<double> out) {
  if (out.empty()) {
    return;
  }
  if (norm == BallNorm::kLinf || out.size() == 1) {
    for (double& v : out) {
      v = rng.uniform(-1.0, 1.0);
    }
    return;
  }
  double squared = 0.0;
  do {
    squared = 0.0;
    for (double& v : out) {
      v = rng.normal();
      squared += v * v;
    }
  } while (squared == 0.0);
  const double radius =
      std::pow(rng.uniform01(), 1.0 / static_cast<double>(out.size())) / std::sqrt(squared);
  for (double& v : out) {
    v *= radius;
  }
}

double ball_volume(BallNorm norm, std::size_t dim, double epsilon) {
  const double m = static_cast<double>(dim);
  if (norm == BallNorm::kLinf || dim == 1) {
    return std::pow(2.0 * epsilon, m);
  }
  // pi^(m/2) / Gamma(m/2 + 1) * eps^m
  return std::exp(0.5 * m * std::log(std::numbers::pi) - std::lgamma(0.5 * m + 1.0) +
                  m * std::log(epsilon));
}

double alpha_stable(double alpha, double beta, double sigma, double delta, Rng& rng) {
  if (!(alpha > 0.0 && alpha <= 2.0)) {
    throw DomainError("alpha_stable: alpha must lie in (0, 2], got " + std::to_string(alpha));
  }
  if (!(std::abs(beta) <= 1.0)) {
    throw DomainError("alpha_stable: |beta| must be <= 1, got " + std::to_string(beta));
  }
  if (!(sigma > 0.0)) {
    throw DomainError("alpha_stable: sigma must be positive, got " + std::to_string(sigma));
  }
  constexpr double kHalfPi = std::numbers::pi / 2.0;
  const double v = std::numbers::pi * (rng.uniform_open() - 0.5);
  const double w = rng.exponential();

  if (alpha == 1.0) {
    const double shifted = kHalfPi + beta * v;
    const double x =
        (shifted * std::tan(v) - beta * std::log(kHalfPi * w * std::cos(v) / shifted)) /
        kHalfPi;
    return sigma * x + beta * sigma * std::log(sigma) / kHalfPi + delta;
  }

  const double tan_term = beta * std::tan(kHalfPi * alpha);
  const double b = std::atan(tan_term) / alpha;
  const double s = std::pow(1.0 + tan_term * tan_term, 1.0 / (2.0 * alpha));
  const double x = s * std::sin(alpha * (v + b)) / std::pow(std::cos(v), 1.0 / alpha) *
                   std::pow(std::cos(v - alpha * (v + b)) / w, (1.0 - alpha) / alpha);
  return sigma * x + delta;
}

}  // namespace abc_hmm
