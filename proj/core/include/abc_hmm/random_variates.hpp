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

#ifndef ABC_HMM_RANDOM_VARIATES_HPP
#define ABC_HMM_RANDOM_VARIATES_HPP

#include <cstddef>
#include <span>

#include "abc_hmm/rng.hpp"

namespace abc_hmm {

/// Norm defining the ABC acceptance ball.
enum class BallNorm { kLinf, kL2 };

/// Fills `out` with a point uniform on the unit ball of `norm` (dimension out.size()).
///
/// L-infinity: independent U(-1, 1) coordinates. L2: Gaussian direction scaled by U^(1/m).
void ball_uniform(BallNorm norm, Rng& rng, std::span<double> out);

/// Lebesgue volume of the radius-`epsilon` ball in dimension `dim`.
double ball_volume(BallNorm norm, std::size_t dim, double epsilon);

/// One draw from S(alpha, beta, sigma, delta; 1) by the Chambers-Mallows-Stuck transform.
///
/// Parameterisation 1 (Samorodnitsky-Taqqu): alpha = 2 gives N(delta, 2 sigma^2) and
/// alpha = 1, beta = 0 gives a Cauchy with scale sigma. At alpha = 1 the log-form branch
/// is used, including the sigma log(sigma) shift for beta != 0, so the law is continuous
/// in (alpha, beta) away from alpha = 1 in the usual sense of that parameterisation.
///
/// Throws DomainError unless alpha in (0, 2], |beta| <= 1, sigma > 0.
double alpha_stable(double alpha, double beta, double sigma, double delta, Rng& rng);

}  // namespace abc_hmm

#endif  // ABC_HMM_RANDOM_VARIATES_HPP
