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

#ifndef ABC_HMM_IID_ABC_HPP
#define ABC_HMM_IID_ABC_HPP

#include <optional>

#include "abc_hmm/perturbation.hpp"
#include "abc_hmm/summary.hpp"
#include "abc_hmm/trajectory.hpp"

namespace abc_hmm {

/// Exact ABC likelihood of the i.i.d. +/- theta model: the product over k of
/// 1/2 w(S(theta); y_k) + 1/2 w(S(-theta); y_k), where w is the perturbation weight around y_k
/// (the ball indicator for uniform perturbations) and S an optional per-observation summary.
double iid_abc_likelihood(double theta, const Trajectory& data, const PerturbationSpec& pert,
                          const std::optional<SummaryStatistic>& summary = std::nullopt);

/// Log of iid_abc_likelihood, accumulated term by term.
double iid_abc_log_likelihood(double theta, const Trajectory& data, const PerturbationSpec& pert,
                              const std::optional<SummaryStatistic>& summary = std::nullopt);

}  // namespace abc_hmm

#endif  // ABC_HMM_IID_ABC_HPP
