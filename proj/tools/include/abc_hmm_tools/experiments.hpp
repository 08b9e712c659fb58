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

#ifndef ABC_HMM_TOOLS_EXPERIMENTS_HPP
#define ABC_HMM_TOOLS_EXPERIMENTS_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "abc_hmm/perturbation.hpp"

namespace abc_hmm::tools {

/// Settings of one experiment run. Every field has a preset default except the seed.
struct ExperimentConfig {
  /// bias_curve, info_loss_curve, consistency, example_3_2 or custom.
  std::string experiment = "custom";
  /// Model config document: {"model": ..., "hyper": {...}, "theta_box": [[lo, hi], ...]}.
  std::string model_json = R"({"model":"finite_gaussian"})";
  std::vector<double> theta_star;
  std::vector<double> epsilons;
  /// Data lengths; a single entry for every preset except consistency.
  std::vector<std::size_t> ns;
  std::size_t particles = 1000;
  std::size_t replicates = 20;
  std::optional<std::uint64_t> seed;
  /// Estimation method for bias_curve, consistency and custom.
  std::string method = "abc";
  /// auto, smc or oracle.
  std::string objective = "oracle";
  std::string optimizer = "grid_then_golden";
  double optimizer_tolerance = 1e-6;
  std::size_t grid_points = 21;
  /// uniform_ball or the name of a smoothing kernel.
  std::string kernel = "uniform_ball";
  std::string resampling = "multinomial";
  /// Fisher settings for info_loss_curve.
  std::size_t burn_in = 200;
  /// Radius used for the large-epsilon collapse ratio in info_loss_curve.
  double collapse_epsilon = 100.0;
  std::filesystem::path output_dir = "results";
  bool gnuplot = false;
  /// Worker threads across replicates (0 = default_thread_count()). Outputs do not depend on it.
  std::size_t threads = 0;
};

/// "uniform_ball" (or "linf"), "l2", or a smooth kernel name such as "gaussian".
PerturbationSpec perturbation_for_kernel(const std::string& kernel, double epsilon);

/// Preset defaults; throws ConfigError("preset") for an unknown name.
ExperimentConfig preset_config(const std::string& name);

/// Names accepted by preset_config.
std::vector<std::string> preset_names();

/// Applies the keys of a JSON config document on top of `base`. Unknown keys are errors.
ExperimentConfig apply_config_json(ExperimentConfig base, const std::string& json_text);

/// Canonical JSON form of a config; stable key order, suitable for hashing and re-running.
std::string config_to_json(const ExperimentConfig& config);

/// Validates cross-field constraints (seed present, epsilons ascending, ...).
void validate_config(const ExperimentConfig& config);

/// Per-epsilon aggregate of a bias run for one parameter coordinate.
struct BiasCell {
  double mean_abs_bias = 0.0;
  double se = 0.0;
  /// Mean |theta_hat^eps - theta_hat_MLE| on the same data, and its SE.
  double mean_paired_bias = 0.0;
  double paired_se = 0.0;
  /// Mean signed theta_hat^eps - theta_hat_MLE.
  double mean_signed_paired = 0.0;
};

struct BiasRow {
  double epsilon = 0.0;
  std::vector<BiasCell> cells;
  std::size_t failures = 0;
};

struct BiasCurveResult {
  std::vector<std::string> parameter_names;
  std::vector<BiasRow> rows;
  /// Exact-MLE control: mean |theta_hat_MLE - theta*| and SE per coordinate.
  std::vector<double> mle_abs_error;
  std::vector<double> mle_se;
  /// Log-log slopes over the four smallest epsilons, per coordinate.
  std::vector<std::optional<double>> slope;
  std::vector<std::optional<double>> paired_slope;
  bool paired = false;
};

/// For each replicate simulates data at theta*, runs the configured estimator at every
/// epsilon, and (for tractable models) the exact MLE on the same data.
BiasCurveResult run_bias_curve(const ExperimentConfig& config);

struct ConsistencyRow {
  std::size_t n = 0;
  /// Per coordinate median and mean of |theta_hat - theta*| over replicates.
  std::vector<double> median_abs_error;
  std::vector<double> mean_abs_error;
  std::vector<double> se;
  std::size_t failures = 0;
};

struct ConsistencyResult {
  std::vector<std::string> parameter_names;
  double epsilon = 0.0;
  std::vector<ConsistencyRow> rows;
};

/// Noisy-ABC style estimation at one epsilon across increasing data lengths.
ConsistencyResult run_consistency(const ExperimentConfig& config);

struct Example32Row {
  double epsilon = 0.0;
  double likelihood_at_zero = 0.0;
  double likelihood_at_theta_star = 0.0;
  double theta_hat_abc = 0.0;
  double theta_hat_noisy = 0.0;
};

/// The i.i.d. +/- theta example: exact ABC likelihoods and estimates on one data set.
std::vector<Example32Row> run_example_3_2(const ExperimentConfig& config);

/// Output files of one run, relative to its directory.
struct RunOutputs {
  std::filesystem::path directory;
  std::vector<std::filesystem::path> files;
};

/// Runs the configured experiment into a fresh versioned subdirectory
/// output_dir/<experiment>/run-NNN, writing CSV tables, sidecar JSON, a config copy,
/// a manifest with content hashes, and optionally a gnuplot script.
RunOutputs run_experiment(const ExperimentConfig& config);

/// First output_dir/<experiment>/run-NNN that does not exist yet.
std::filesystem::path next_run_directory(const std::filesystem::path& output_dir,
                                         const std::string& experiment);

}  // namespace abc_hmm::tools

#endif  // ABC_HMM_TOOLS_EXPERIMENTS_HPP
