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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "abc_hmm/errors.hpp"
#include "abc_hmm/random_variates.hpp"

namespace abc_hmm {
namespace {

// Gil-Pelaez inversion of the S(alpha, beta, sigma, delta; 1) characteristic function,
// alpha != 1: phi(t) = exp(-sigma^a |t|^a (1 - i beta sign(t) tan(pi a / 2)) + i delta t).
double stable_cdf_oracle(double x, double alpha, double beta, double sigma, double delta) {
  const double skew = beta * std::tan(std::numbers::pi * alpha / 2.0);
  auto integrand = [&](double t) {
    if (t == 0.0) {
      return delta - x;
    }
    const double scale = std::pow(sigma * t, alpha);
    const std::complex<double> phi =
        std::exp(std::complex<double>(-scale, scale * skew + delta * t));
    const std::complex<double> v = std::exp(std::complex<double>(0.0, -t * x)) * phi;
    return v.imag() / t;
  };
  const double upper = 60.0 / sigma;
  const double integral =
      boost::math::quadrature::gauss_kronrod<double, 61>::integrate(integrand, 0.0, upper, 15,
                                                                    1e-12);
  return 0.5 - integral / std::numbers::pi;
}

std::vector<double> draw(double alpha, double beta, double sigma, double delta, int n,
                         std::uint64_t seed) {
  Rng rng({seed, StreamTag::kUser, 0, 0});
  std::vector<double> out(static_cast<std::size_t>(n));
  for (auto& v : out) {
    v = alpha_stable(alpha, beta, sigma, delta, rng);
  }
  return out;
}

TEST(AlphaStable, AlphaTwoIsGaussianWithVarianceTwoSigmaSquared) {
  const double sigma = 0.7;
  const int n = 100000;
  const auto x = draw(2.0, 0.0, sigma, 0.3, n, 11);
  double mean = 0.0;
  for (const double v : x) {
    mean += v;
  }
  mean /= n;
  double var = 0.0;
  for (const double v : x) {
    var += (v - mean) * (v - mean);
  }
  var /= (n - 1);
  const double target = 2.0 * sigma * sigma;
  EXPECT_NEAR(mean, 0.3, 4.0 * std::sqrt(target / n));
  EXPECT_NEAR(var, target, 3.0 * target * std::sqrt(2.0 / (n - 1)));
}

TEST(AlphaStable, AlphaOneIsCauchy) {
  const double sigma = 1.5;
  const int n = 100000;
  const auto x = draw(1.0, 0.0, sigma, 0.0, n, 12);
  const double below = static_cast<double>(
      std::count_if(x.begin(), x.end(), [&](double v) { return v <= sigma; }));
  EXPECT_NEAR(below / n, 0.75, 3.0 * std::sqrt(0.75 * 0.25 / n));
}

TEST(AlphaStable, CdfMatchesCharacteristicFunctionInversion) {
  const double alpha = 1.8;
  for (const double beta : {0.0, 0.5}) {
    const int n = 40000;
    auto x = draw(alpha, beta, 1.0, 0.0, n, 13);
    std::sort(x.begin(), x.end());
    for (const double q : {-3.0, -1.0, 0.0, 1.0, 3.0}) {
      const double empirical =
          static_cast<double>(std::upper_bound(x.begin(), x.end(), q) - x.begin()) / n;
      EXPECT_NEAR(empirical, stable_cdf_oracle(q, alpha, beta, 1.0, 0.0), 0.01)
          << "beta " << beta << " at " << q;
    }
  }
}

TEST(AlphaStable, OracleReproducesTheGaussianCase) {
  // alpha = 2: N(0, 2 sigma^2).
  for (const double x : {-2.0, 0.0, 1.0}) {
    EXPECT_NEAR(stable_cdf_oracle(x, 2.0, 0.0, 1.0, 0.0),
                0.5 * std::erfc(-x / 2.0), 1e-8);
  }
}

TEST(AlphaStable, RejectsInvalidParameters) {
  Rng rng({1, StreamTag::kUser, 0, 0});
  EXPECT_THROW(alpha_stable(2.5, 0.0, 1.0, 0.0, rng), DomainError);
  EXPECT_THROW(alpha_stable(0.0, 0.0, 1.0, 0.0, rng), DomainError);
  EXPECT_THROW(alpha_stable(1.5, 1.5, 1.0, 0.0, rng), DomainError);
  EXPECT_THROW(alpha_stable(1.5, 0.0, 0.0, 0.0, rng), DomainError);
}

TEST(Ball, VolumesAndMembership) {
  EXPECT_DOUBLE_EQ(ball_volume(BallNorm::kLinf, 1, 0.5), 1.0);
  EXPECT_DOUBLE_EQ(ball_volume(BallNorm::kLinf, 3, 0.5), 1.0);
  EXPECT_NEAR(ball_volume(BallNorm::kL2, 2, 1.0), std::numbers::pi, 1e-12);
  EXPECT_NEAR(ball_volume(BallNorm::kL2, 3, 2.0), 4.0 / 3.0 * std::numbers::pi * 8.0, 1e-10);

  Rng rng({2, StreamTag::kUser, 0, 0});
  std::vector<double> z(3);
  double inside_half = 0.0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    ball_uniform(BallNorm::kL2, rng, z);
    const double r = std::sqrt(z[0] * z[0] + z[1] * z[1] + z[2] * z[2]);
    ASSERT_LE(r, 1.0);
    inside_half += r <= 0.5 ? 1.0 : 0.0;
    ball_uniform(BallNorm::kLinf, rng, z);
    for (const double v : z) {
      ASSERT_LE(std::abs(v), 1.0);
    }
  }
  EXPECT_NEAR(inside_half / n, 0.125, 4.0 * std::sqrt(0.125 * 0.875 / n));
}

}  // namespace
}  // namespace abc_hmm
