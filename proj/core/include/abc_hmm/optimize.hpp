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

#ifndef ABC_HMM_OPTIMIZE_HPP
#define ABC_HMM_OPTIMIZE_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "abc_hmm/parameter.hpp"

namespace abc_hmm {

/// Objective value at one candidate with a Monte Carlo standard-error proxy (0 if exact).
struct ObjectiveValue {
  double value = 0.0;
  double se = 0.0;
};

using Objective = std::function<ObjectiveValue(std::span<const double>)>;

struct TraceEntry {
  std::vector<double> theta;
  double value = 0.0;
  double se = 0.0;
};

enum class OptimizerKind { kGrid, kGridThenGolden, kNelderMead };

struct OptimizerSpec {
  OptimizerKind kind = OptimizerKind::kGridThenGolden;
  /// Grid spacing; when 0, each coordinate gets `grid_points` equally spaced points.
  double grid_step = 0.0;
  std::size_t grid_points = 21;
  /// Golden-section bracket width and Nelder-Mead simplex size at which to stop.
  double tolerance = 1e-6;
  /// Cyclic golden-section passes over the coordinates; stops early once a pass moves no
  /// coordinate by more than `tolerance`.
  std::size_t sweeps = 2;
  std::size_t restarts = 5;
  std::size_t max_evaluations = 5000;
  std::uint64_t seed = 0;
  /// Workers for grid evaluation; the objective must then be thread-safe.
  std::size_t threads = 1;

  [[nodiscard]] std::string to_string() const;
};

/// grid_then_golden for d <= 2, nelder_mead with 5 restarts otherwise.
OptimizerSpec default_optimizer(std::size_t dim);

/// Parses "grid", "grid:<step>", "grid_then_golden", "grid_then_golden:<sweeps>",
/// "nelder_mead" and "nelder_mead:<restarts>".
OptimizerSpec parse_optimizer(const std::string& text, std::size_t dim);

struct OptimizeResult {
  std::vector<double> theta_hat;
  double value = 0.0;
  double se = 0.0;
  std::vector<TraceEntry> trace;
  std::size_t failures = 0;
};

/// Maximises `objective` over `box`. theta_hat is the first trace entry attaining the largest
/// recorded value. Throws EstimationFailed when every evaluation is -inf.
OptimizeResult maximize(const Objective& objective, const Box& box, const OptimizerSpec& spec);

}  // namespace abc_hmm

#endif  // ABC_HMM_OPTIMIZE_HPP
