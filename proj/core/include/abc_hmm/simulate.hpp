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

#ifndef ABC_HMM_SIMULATE_HPP
#define ABC_HMM_SIMULATE_HPP

#include <cstddef>
#include <cstdint>

#include "abc_hmm/model.hpp"
#include "abc_hmm/parameter.hpp"
#include "abc_hmm/perturbation.hpp"
#include "abc_hmm/trajectory.hpp"

namespace abc_hmm {

/// Exact draw of (X_1..X_n, Y_1..Y_n): X_0 ~ pi_0, X_k ~ q_theta(X_{k-1}, .), Y_k ~ g_theta(. | X_k).
/// A pure function of its arguments.
Trajectory simulate(const HiddenMarkovModel& model, const ParameterVector& theta, std::size_t n,
                    std::uint64_t seed);

/// Y_hat_k + eps Z_hat_k with Z_hat_k i.i.d. from the perturbation kernel.
///
/// epsilon = 0 returns the observations unchanged (still marked as noisified).
/// Throws UsageError if `trajectory` is already noisified.
Trajectory noisify(const Trajectory& trajectory, const PerturbationSpec& pert, std::uint64_t seed);

}  // namespace abc_hmm

#endif  // ABC_HMM_SIMULATE_HPP
