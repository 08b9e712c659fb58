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

#ifndef ABC_HMM_SUMMARY_HPP
#define ABC_HMM_SUMMARY_HPP

#include <cstddef>
#include <functional>
#include <span>
#include <string>

#include "abc_hmm/model.hpp"
#include "abc_hmm/trajectory.hpp"

namespace abc_hmm {

/// A per-observation summary S: R^m -> R^m', applied independently at each time.
struct SummaryStatistic {
  std::string name;
  /// Output dimension for input dimension m.
  std::function<std::size_t(std::size_t)> output_dim;
  std::function<void(std::span<const double>, std::span<double>)> map;
};

SummaryStatistic identity_summary();
/// Componentwise absolute value.
SummaryStatistic absolute_summary();
/// Keeps coordinate `coordinate` only.
SummaryStatistic projection_summary(std::size_t coordinate);

/// Returns S(Y_1), ..., S(Y_n); hidden states and the rest of the metadata are kept and
/// meta.summary records S.
Trajectory apply_summary(const Trajectory& trajectory, const SummaryStatistic& summary);

/// The model whose observations are S(Y_k). Sampling only; no density.
ModelSpec summarize_model(const ModelSpec& model, const SummaryStatistic& summary);

}  // namespace abc_hmm

#endif  // ABC_HMM_SUMMARY_HPP
