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

#include <cmath>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "abc_hmm/builtin_models.hpp"
#include "abc_hmm/errors.hpp"
#include "abc_hmm/perturbation.hpp"
#include "test_support.hpp"

namespace abc_hmm {
namespace {

using boost::math::quadrature::gauss_kronrod;

TEST(Perturbation, IndicatorWeightAndNormalizer) {
  const auto pert = PerturbationSpec::uniform_ball(0.5);
  const std::vector<double> y_hat{1.0};
  EXPECT_EQ(pert.weight(y_hat, std::vector<double>{1.4}), 1.0);
  EXPECT_EQ(pert.weight(y_hat, std::vector<double>{1.6}), 0.0);
  EXPECT_EQ(pert.log_weight(y_hat, std::vector<double>{1.6}), -INFINITY);
  EXPECT_EQ(pert.log_weight(y_hat, std::vector<double>{0.6}), 0.0);
  EXPECT_NEAR(pert.log_normalizer(1), std::log(1.0), 1e-15);
  EXPECT_EQ(pert.max_weight(1), 1.0);
  EXPECT_EQ(pert.kernel_name(), "uniform_ball");
}

TEST(Perturbation, L2BallUsesEuclideanDistance) {
  const auto pert = PerturbationSpec::uniform_ball(1.0, BallNorm::kL2);
  const std::vector<double> y_hat{0.0, 0.0};
  EXPECT_EQ(pert.weight(y_hat, std::vector<double>{0.8, 0.5}), 1.0);
  EXPECT_EQ(pert.weight(y_hat, std::vector<double>{0.8, 0.7}), 0.0);
  const auto linf = PerturbationSpec::uniform_ball(1.0);
  EXPECT_EQ(linf.weight(y_hat, std::vector<double>{0.8, 0.7}), 1.0);
}

TEST(Perturbation, GaussianKernelWeight) {
  const auto pert = PerturbationSpec::smooth(0.5, gaussian_kernel());
  const std::vector<double> y_hat{1.0};
  const double w = pert.weight(y_hat, std::vector<double>{0.5});
  EXPECT_NEAR(w, testing::normal_pdf(1.0, 0.0, 1.0), 1e-14);
  EXPECT_NEAR(pert.log_weight(y_hat, std::vector<double>{0.5}), std::log(w), 1e-12);
  EXPECT_NEAR(pert.log_normalizer(2), 2.0 * std::log(0.5), 1e-14);
  EXPECT_NEAR(pert.max_weight(1), testing::normal_pdf(0.0, 0.0, 1.0), 1e-14);
  // Far tails stay finite on the log scale.
  EXPECT_NEAR(pert.log_weight(y_hat, std::vector<double>{-200.0}),
              -0.5 * std::pow(402.0, 2) - 0.5 * std::log(2.0 * std::numbers::pi), 1e-6);
}

TEST(Perturbation, KernelValidation) {
  EXPECT_THROW(kernel_by_name("triangle"), ConfigError);
  auto bad = std::make_shared<SmoothKernel>(*gaussian_kernel());
  bad->positive_everywhere = false;
  EXPECT_THROW(PerturbationSpec::smooth(1.0, bad), ConfigError);
  auto heavy = std::make_shared<SmoothKernel>(*gaussian_kernel());
  heavy->finite_second_moment = false;
  EXPECT_THROW(PerturbationSpec::smooth(1.0, heavy), ConfigError);
}

TEST(Perturbation, WithEpsilonKeepsKernel) {
  const auto pert = PerturbationSpec::smooth(0.5, gaussian_kernel()).with_epsilon(2.0);
  EXPECT_EQ(pert.epsilon(), 2.0);
  EXPECT_EQ(pert.kind(), KernelKind::kSmooth);
  EXPECT_TRUE(PerturbationSpec::uniform_ball(0.0).is_null());
}

TEST(Perturbation, UnitNoiseSamplesTheKernel) {
  const auto pert = PerturbationSpec::uniform_ball(3.0);
  Rng rng({1, StreamTag::kUser, 0, 0});
  std::vector<double> z(1);
  double sq = 0.0;
  const int n = 50000;
  for (int i = 0; i < n; ++i) {
    pert.sample_unit_noise(rng, z);
    ASSERT_LE(std::abs(z[0]), 1.0);
    sq += z[0] * z[0];
  }
  EXPECT_NEAR(sq / n, 1.0 / 3.0, 0.01);
}

class PerturbedDensity : public ::testing::TestWithParam<bool> {};

TEST_P(PerturbedDensity, IntegratesToOneAndMatchesConvolution) {
  const bool smooth = GetParam();
  const auto loaded = testing::gaussian2();
  const auto& model = *loaded.model;
  const std::vector<double> theta{1.2, 0.8};
  const double eps = 0.6;
  const auto pert = smooth ? PerturbationSpec::smooth(eps, gaussian_kernel())
                           : PerturbationSpec::uniform_ball(eps);
  for (std::size_t state = 0; state < 2; ++state) {
    auto g_eps = [&](double y) {
      return model.perturbed_density(theta, state, std::vector<double>{y}, pert);
    };
    const double mass = gauss_kronrod<double, 61>::integrate(g_eps, -15.0, 15.0, 12, 1e-13);
    EXPECT_NEAR(mass, 1.0, 1e-9);

    const double mean = (state == 0 ? -1.0 : 1.0) * theta[0];
    for (const double y : {-2.0, -0.3, 0.0, 1.1, 2.5}) {
      // g^eps(y) = E g(y - eps Z), computed by quadrature over the noise law.
      double conv = 0.0;
      if (smooth) {
        conv = gauss_kronrod<double, 61>::integrate(
            [&](double z) {
              return testing::normal_pdf(y - eps * z, mean, theta[1]) *
                     testing::normal_pdf(z, 0.0, 1.0);
            },
            -12.0, 12.0, 12, 1e-13);
      } else {
        conv = gauss_kronrod<double, 61>::integrate(
                   [&](double z) { return testing::normal_pdf(y - eps * z, mean, theta[1]); },
                   -1.0, 1.0, 12, 1e-13) /
               2.0;
      }
      EXPECT_NEAR(g_eps(y), conv, 1e-10) << "state " << state << " y " << y;
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Kernels, PerturbedDensity, ::testing::Values(false, true));

}  // namespace
}  // namespace abc_hmm
