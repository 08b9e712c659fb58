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

#include "abc_hmm_tools/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "abc_hmm/csv.hpp"
#include "abc_hmm/errors.hpp"
#include "abc_hmm/estimate.hpp"
#include "abc_hmm/fisher.hpp"
#include "abc_hmm/iid_abc.hpp"
#include "abc_hmm/model_config.hpp"
#include "abc_hmm/parallel.hpp"
#include "abc_hmm/report.hpp"
#include "abc_hmm/simulate.hpp"
#include "abc_hmm_tools/content_hash.hpp"

namespace abc_hmm::tools {

namespace {

using Json = nlohmann::ordered_json;

constexpr const char* kGaussianTwoParameter =
    R"({"model":"finite_gaussian","hyper":{"states":2,"stay_prob":0.7,"free":["mean_scale","sd"]}})";
constexpr const char* kGaussianMeanOnly =
    R"({"model":"finite_gaussian","hyper":{"states":2,"stay_prob":0.7,"free":["mean_scale"]}})";

EstimateOptions estimate_options(const ExperimentConfig& config, const Box& box,
                                 std::size_t dim, std::uint64_t seed) {
  EstimateOptions options;
  options.box = box;
  options.particles = config.particles;
  options.resampling = parse_resampling_policy(config.resampling);
  options.optimizer = parse_optimizer(config.optimizer, dim);
  options.optimizer.tolerance = config.optimizer_tolerance;
  options.optimizer.grid_points = config.grid_points;
  options.optimizer.seed = seed;
  options.objective = parse_objective_kind(config.objective);
  options.seed = seed;
  return options;
}

struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
};

MeanSe mean_se(const std::vector<double>& values) {
  MeanSe out;
  if (values.empty()) {
    out.mean = std::numeric_limits<double>::quiet_NaN();
    out.se = out.mean;
    return out;
  }
  for (const double v : values) {
    out.mean += v;
  }
  out.mean /= static_cast<double>(values.size());
  if (values.size() > 1) {
    double squares = 0.0;
    for (const double v : values) {
      squares += (v - out.mean) * (v - out.mean);
    }
    out.se = std::sqrt(squares / static_cast<double>(values.size() - 1) /
                       static_cast<double>(values.size()));
  }
  return out;
}

double median(std::vector<double> values) {
  if (values.empty()) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  return values.size() % 2 == 1 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

std::optional<double> loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() < 2) {
    return std::nullopt;
  }
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) {
      return std::nullopt;
    }
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= static_cast<double>(x.size());
  my /= static_cast<double>(x.size());
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (std::log(x[i]) - mx) * (std::log(y[i]) - my);
    sxx += (std::log(x[i]) - mx) * (std::log(x[i]) - mx);
  }
  return sxx > 0.0 ? std::optional<double>(sxy / sxx) : std::nullopt;
}

Json number(double v) { return std::isfinite(v) ? Json(v) : Json(format_double(v)); }

Json optional_number(const std::optional<double>& v) { return v ? number(*v) : Json(nullptr); }

bool is_tractable(const HiddenMarkovModel& model) {
  return model.state_space().kind == StateKind::kFinite && model.has_density();
}

template <typename T>
std::vector<T> json_list(const Json& value, const std::string& key) {
  if (!value.is_array()) {
    throw ConfigError(key, "must be an array");
  }
  try {
    return value.get<std::vector<T>>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError(key, "has entries of the wrong type");
  }
}

}  // namespace

PerturbationSpec perturbation_for_kernel(const std::string& kernel, double epsilon) {
  if (kernel == "uniform_ball" || kernel == "linf") {
    return PerturbationSpec::uniform_ball(epsilon, BallNorm::kLinf);
  }
  if (kernel == "l2") {
    return PerturbationSpec::uniform_ball(epsilon, BallNorm::kL2);
  }
  return PerturbationSpec::smooth(epsilon, kernel_by_name(kernel));
}

std::vector<std::string> preset_names() {
  return {"bias_curve", "info_loss_curve", "consistency", "example_3_2", "custom"};
}

ExperimentConfig preset_config(const std::string& name) {
  ExperimentConfig config;
  config.experiment = name;
  if (name == "bias_curve" || name == "custom") {
    config.model_json = kGaussianTwoParameter;
    config.theta_star = {1.0, 1.0};
    config.epsilons = {0.05, 0.1, 0.2, 0.4, 0.8};
    config.ns = {2000};
    config.replicates = 20;
    config.method = "abc";
    config.objective = "oracle";
    config.optimizer = "grid_then_golden:60";
    config.optimizer_tolerance = 1e-9;
    config.grid_points = 11;
  } else if (name == "info_loss_curve") {
    config.model_json = kGaussianTwoParameter;
    config.theta_star = {1.0, 1.0};
    config.epsilons = {0.05, 0.1, 0.2, 0.4, 0.8, 1.6, 3.2, 6.4, 12.8};
    config.ns = {5000};
    config.replicates = 20;
    config.burn_in = 200;
    config.kernel = "uniform_ball";
  } else if (name == "consistency") {
    config.model_json = kGaussianMeanOnly;
    config.theta_star = {1.0};
    config.epsilons = {0.5};
    config.ns = {500, 2000, 8000};
    config.replicates = 20;
    config.method = "noisy_abc";
    config.objective = "oracle";
    config.optimizer = "grid_then_golden:20";
    config.optimizer_tolerance = 1e-7;
    config.grid_points = 31;
  } else if (name == "example_3_2") {
    config.model_json = R"({"model":"iid_pm_theta"})";
    config.theta_star = {1.0};
    config.epsilons = {0.1, 1.5};
    config.ns = {100};
    config.replicates = 1;
    config.method = "abc";
    config.objective = "oracle";
    config.optimizer = "grid:0.01";
  } else {
    throw ConfigError("preset", "unknown preset '" + name + "'");
  }
  return config;
}

ExperimentConfig apply_config_json(ExperimentConfig base, const std::string& json_text) {
  Json doc;
  try {
    doc = Json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("config", std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) {
    throw ConfigError("config", "must be a JSON object");
  }
  if (doc.contains("experiment")) {
    const auto name = doc.at("experiment").get<std::string>();
    if (name != base.experiment) {
      const ExperimentConfig preset = preset_config(name);
      base = preset;
    }
  }
  for (const auto& item : doc.items()) {
    const std::string& key = item.key();
    const Json& value = item.value();
    try {
      if (key == "experiment") {
        continue;
      } else if (key == "model") {
        if (!value.is_object()) {
          throw ConfigError(key, "must be a model config object");
        }
        base.model_json = value.dump();
      } else if (key == "theta_star") {
        base.theta_star = json_list<double>(value, key);
      } else if (key == "epsilons") {
        base.epsilons = json_list<double>(value, key);
      } else if (key == "ns") {
        base.ns = json_list<std::size_t>(value, key);
      } else if (key == "n") {
        base.ns = {value.get<std::size_t>()};
      } else if (key == "particles") {
        base.particles = value.get<std::size_t>();
      } else if (key == "replicates") {
        base.replicates = value.get<std::size_t>();
      } else if (key == "seed") {
        base.seed = value.get<std::uint64_t>();
      } else if (key == "method") {
        base.method = value.get<std::string>();
      } else if (key == "objective") {
        base.objective = value.get<std::string>();
      } else if (key == "optimizer") {
        base.optimizer = value.get<std::string>();
      } else if (key == "optimizer_tolerance") {
        base.optimizer_tolerance = value.get<double>();
      } else if (key == "grid_points") {
        base.grid_points = value.get<std::size_t>();
      } else if (key == "kernel") {
        base.kernel = value.get<std::string>();
      } else if (key == "resampling") {
        base.resampling = value.get<std::string>();
      } else if (key == "burn_in") {
        base.burn_in = value.get<std::size_t>();
      } else if (key == "collapse_epsilon") {
        base.collapse_epsilon = value.get<double>();
      } else if (key == "output_dir") {
        base.output_dir = value.get<std::string>();
      } else if (key == "gnuplot") {
        base.gnuplot = value.get<bool>();
      } else if (key == "threads") {
        base.threads = value.get<std::size_t>();
      } else {
        throw ConfigError(key, "unknown experiment config key");
      }
    } catch (const nlohmann::json::exception&) {
      throw ConfigError(key, "has the wrong type");
    }
  }
  return base;
}

std::string config_to_json(const ExperimentConfig& config) {
  Json doc;
  doc["experiment"] = config.experiment;
  doc["model"] = Json::parse(config.model_json);
  doc["theta_star"] = config.theta_star;
  doc["epsilons"] = config.epsilons;
  doc["ns"] = config.ns;
  doc["particles"] = config.particles;
  doc["replicates"] = config.replicates;
  doc["seed"] = config.seed ? Json(*config.seed) : Json(nullptr);
  doc["method"] = config.method;
  doc["objective"] = config.objective;
  doc["optimizer"] = config.optimizer;
  doc["optimizer_tolerance"] = config.optimizer_tolerance;
  doc["grid_points"] = config.grid_points;
  doc["kernel"] = config.kernel;
  doc["resampling"] = config.resampling;
  doc["burn_in"] = config.burn_in;
  doc["collapse_epsilon"] = config.collapse_epsilon;
  doc["output_dir"] = config.output_dir.string();
  doc["gnuplot"] = config.gnuplot;
  return doc.dump(2) + "\n";
}

void validate_config(const ExperimentConfig& config) {
  if (!config.seed) {
    throw ConfigError("seed", "an explicit seed is required");
  }
  const auto names = preset_names();
  if (std::find(names.begin(), names.end(), config.experiment) == names.end()) {
    throw ConfigError("preset", "unknown preset '" + config.experiment + "'");
  }
  if (config.epsilons.empty()) {
    throw ConfigError("epsilons", "need at least one epsilon");
  }
  for (std::size_t i = 0; i < config.epsilons.size(); ++i) {
    if (!(config.epsilons[i] > 0.0) ||
        (i > 0 && !(config.epsilons[i] > config.epsilons[i - 1]))) {
      throw ConfigError("epsilons", "must be positive and strictly ascending");
    }
  }
  if (config.ns.empty() || std::find(config.ns.begin(), config.ns.end(), 0) != config.ns.end()) {
    throw ConfigError("n", "data lengths must be positive");
  }
  if (config.replicates == 0) {
    throw ConfigError("replicates", "must be positive");
  }
  const LoadedModel loaded = parse_model_config(config.model_json);
  if (config.theta_star.size() != loaded.model->param_dim()) {
    throw ConfigError("theta_star", "expected " + std::to_string(loaded.model->param_dim()) +
                                        " values for model '" + loaded.name + "'");
  }
  ParameterVector(config.theta_star, loaded.box);
  parse_method(config.method);
  parse_objective_kind(config.objective);
  parse_optimizer(config.optimizer, loaded.model->param_dim());
  parse_resampling_policy(config.resampling);
  perturbation_for_kernel(config.kernel, 1.0);
}

BiasCurveResult run_bias_curve(const ExperimentConfig& config) {
  validate_config(config);
  const LoadedModel loaded = parse_model_config(config.model_json);
  const ModelSpec& model = loaded.model;
  const std::size_t d = model->param_dim();
  const ParameterVector theta_star(config.theta_star, loaded.box);
  const EstimationMethod method = parse_method(config.method);
  const bool paired = is_tractable(*model);
  const std::size_t reps = config.replicates;
  const std::size_t e_count = config.epsilons.size();
  const std::uint64_t seed = *config.seed;

  // estimates[e][r] is empty when estimation failed.
  std::vector<std::vector<std::vector<double>>> estimates(
      e_count, std::vector<std::vector<double>>(reps));
  std::vector<std::vector<double>> mle(reps);
  parallel_for(
      reps,
      [&](std::size_t r) {
        const Trajectory data = simulate(*model, theta_star, config.ns[0],
                                         derive_seed(seed, StreamTag::kReplicate, r));
        const EstimateOptions options =
            estimate_options(config, loaded.box, d, derive_seed(seed, StreamTag::kUser, r));
        if (paired) {
          const EstimateResult control = exact_mle(model, data, options);
          mle[r].assign(control.theta_hat.values().begin(), control.theta_hat.values().end());
        }
        for (std::size_t e = 0; e < e_count; ++e) {
          try {
            const auto result = run_estimator(
                method, model, data, perturbation_for_kernel(config.kernel, config.epsilons[e]),
                options);
            estimates[e][r].assign(result.theta_hat.values().begin(),
                                   result.theta_hat.values().end());
          } catch (const EstimationFailed&) {
            estimates[e][r].clear();
          }
        }
      },
      config.threads);

  BiasCurveResult result;
  result.parameter_names = model->parameter_names();
  result.paired = paired;
  for (std::size_t j = 0; j < d; ++j) {
    if (paired) {
      std::vector<double> errors;
      for (std::size_t r = 0; r < reps; ++r) {
        errors.push_back(std::abs(mle[r][j] - config.theta_star[j]));
      }
      const MeanSe s = mean_se(errors);
      result.mle_abs_error.push_back(s.mean);
      result.mle_se.push_back(s.se);
    }
  }
  for (std::size_t e = 0; e < e_count; ++e) {
    BiasRow row;
    row.epsilon = config.epsilons[e];
    for (std::size_t r = 0; r < reps; ++r) {
      if (estimates[e][r].empty()) {
        ++row.failures;
      }
    }
    for (std::size_t j = 0; j < d; ++j) {
      std::vector<double> abs_bias;
      std::vector<double> paired_abs;
      std::vector<double> paired_signed;
      for (std::size_t r = 0; r < reps; ++r) {
        if (estimates[e][r].empty()) {
          continue;
        }
        abs_bias.push_back(std::abs(estimates[e][r][j] - config.theta_star[j]));
        if (paired) {
          paired_abs.push_back(std::abs(estimates[e][r][j] - mle[r][j]));
          paired_signed.push_back(estimates[e][r][j] - mle[r][j]);
        }
      }
      BiasCell cell;
      const MeanSe a = mean_se(abs_bias);
      cell.mean_abs_bias = a.mean;
      cell.se = a.se;
      if (paired) {
        const MeanSe p = mean_se(paired_abs);
        cell.mean_paired_bias = p.mean;
        cell.paired_se = p.se;
        cell.mean_signed_paired = mean_se(paired_signed).mean;
      }
      row.cells.push_back(cell);
    }
    result.rows.push_back(std::move(row));
  }
  const std::size_t fit = std::min<std::size_t>(4, e_count);
  for (std::size_t j = 0; j < d; ++j) {
    std::vector<double> x;
    std::vector<double> y;
    std::vector<double> yp;
    for (std::size_t e = 0; e < fit; ++e) {
      x.push_back(result.rows[e].epsilon);
      y.push_back(result.rows[e].cells[j].mean_abs_bias);
      yp.push_back(result.rows[e].cells[j].mean_paired_bias);
    }
    result.slope.push_back(loglog_slope(x, y));
    result.paired_slope.push_back(paired ? loglog_slope(x, yp) : std::nullopt);
  }
  return result;
}

ConsistencyResult run_consistency(const ExperimentConfig& config) {
  validate_config(config);
  const LoadedModel loaded = parse_model_config(config.model_json);
  const ModelSpec& model = loaded.model;
  const std::size_t d = model->param_dim();
  const ParameterVector theta_star(config.theta_star, loaded.box);
  const EstimationMethod method = parse_method(config.method);
  const std::size_t reps = config.replicates;
  const std::uint64_t seed = *config.seed;
  const double epsilon = config.epsilons[0];

  ConsistencyResult result;
  result.parameter_names = model->parameter_names();
  result.epsilon = epsilon;
  for (const std::size_t n : config.ns) {
    std::vector<std::vector<double>> estimates(reps);
    parallel_for(
        reps,
        [&](std::size_t r) {
          const Trajectory data =
              simulate(*model, theta_star, n, derive_seed(seed, StreamTag::kReplicate, r));
          const EstimateOptions options =
              estimate_options(config, loaded.box, d, derive_seed(seed, StreamTag::kUser, r));
          try {
            const auto est = run_estimator(method, model, data,
                                           perturbation_for_kernel(config.kernel, epsilon), options);
            estimates[r].assign(est.theta_hat.values().begin(), est.theta_hat.values().end());
          } catch (const EstimationFailed&) {
            estimates[r].clear();
          }
        },
        config.threads);
    ConsistencyRow row;
    row.n = n;
    for (std::size_t j = 0; j < d; ++j) {
      std::vector<double> errors;
      for (const auto& est : estimates) {
        if (!est.empty()) {
          errors.push_back(std::abs(est[j] - config.theta_star[j]));
        }
      }
      row.median_abs_error.push_back(median(errors));
      const MeanSe s = mean_se(errors);
      row.mean_abs_error.push_back(s.mean);
      row.se.push_back(s.se);
    }
    for (const auto& est : estimates) {
      row.failures += est.empty() ? 1 : 0;
    }
    result.rows.push_back(std::move(row));
  }
  return result;
}

std::vector<Example32Row> run_example_3_2(const ExperimentConfig& config) {
  validate_config(config);
  const LoadedModel loaded = parse_model_config(config.model_json);
  if (loaded.name != "iid_pm_theta") {
    throw ConfigError("model", "example_3_2 needs the iid_pm_theta model");
  }
  const std::uint64_t seed = *config.seed;
  const ParameterVector theta_star(config.theta_star, loaded.box);
  const Trajectory data = simulate(*loaded.model, theta_star, config.ns[0],
                                   derive_seed(seed, StreamTag::kReplicate, 0));
  const EstimateOptions options =
      estimate_options(config, loaded.box, 1, derive_seed(seed, StreamTag::kUser, 0));
  std::vector<Example32Row> rows;
  for (const double epsilon : config.epsilons) {
    const PerturbationSpec pert = perturbation_for_kernel(config.kernel, epsilon);
    Example32Row row;
    row.epsilon = epsilon;
    row.likelihood_at_zero = iid_abc_likelihood(0.0, data, pert);
    row.likelihood_at_theta_star = iid_abc_likelihood(config.theta_star[0], data, pert);
    row.theta_hat_abc = abc_mle(loaded.model, data, pert, options).theta_hat[0];
    row.theta_hat_noisy = noisy_abc_mle(loaded.model, data, pert, options).theta_hat[0];
    rows.push_back(row);
  }
  return rows;
}

std::filesystem::path next_run_directory(const std::filesystem::path& output_dir,
                                         const std::string& experiment) {
  const std::filesystem::path base = output_dir / experiment;
  for (int i = 1; i < 100000; ++i) {
    char name[32];
    std::snprintf(name, sizeof(name), "run-%03d", i);
    if (!std::filesystem::exists(base / name)) {
      return base / name;
    }
  }
  throw ConfigError("output_dir", "no free run directory under '" + base.string() + "'");
}

namespace {

class RunWriter {
 public:
  explicit RunWriter(std::filesystem::path directory) : directory_(std::move(directory)) {
    std::filesystem::create_directories(directory_);
  }

  void write(const std::string& name, const std::string& content) {
    std::ofstream out(directory_ / name, std::ios::binary);
    if (!out) {
      throw ConfigError("output_dir", "cannot write '" + (directory_ / name).string() + "'");
    }
    out << content;
    files_.emplace_back(name);
    hashes_.push_back(git_blob_hash(content));
  }

  [[nodiscard]] const std::filesystem::path& directory() const { return directory_; }
  [[nodiscard]] const std::vector<std::filesystem::path>& files() const { return files_; }
  [[nodiscard]] const std::vector<std::string>& hashes() const { return hashes_; }

 private:
  std::filesystem::path directory_;
  std::vector<std::filesystem::path> files_;
  std::vector<std::string> hashes_;
};

std::string csv_text(const std::vector<std::vector<std::string>>& rows) {
  std::ostringstream out;
  for (const auto& row : rows) {
    write_csv_row(out, row);
  }
  return out.str();
}

void write_bias_tables(const ExperimentConfig& config, const BiasCurveResult& result,
                       RunWriter& writer, const std::string& stem) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> header{"epsilon"};
  for (const auto& name : result.parameter_names) {
    header.push_back("mean_abs_bias_" + name);
    header.push_back("se_" + name);
    if (result.paired) {
      header.push_back("mean_paired_bias_" + name);
      header.push_back("paired_se_" + name);
      header.push_back("signed_paired_bias_" + name);
    }
  }
  header.emplace_back("failures");
  rows.push_back(header);
  for (const auto& row : result.rows) {
    std::vector<std::string> line{format_double(row.epsilon)};
    for (const auto& cell : row.cells) {
      line.push_back(format_double(cell.mean_abs_bias));
      line.push_back(format_double(cell.se));
      if (result.paired) {
        line.push_back(format_double(cell.mean_paired_bias));
        line.push_back(format_double(cell.paired_se));
        line.push_back(format_double(cell.mean_signed_paired));
      }
    }
    line.push_back(std::to_string(row.failures));
    rows.push_back(std::move(line));
  }
  writer.write(stem + ".csv", csv_text(rows));

  Json doc;
  doc["csv_schema_version"] = kResultCsvSchemaVersion;
  doc["experiment"] = config.experiment;
  doc["method"] = config.method;
  doc["objective"] = config.objective;
  doc["parameter_names"] = result.parameter_names;
  doc["theta_star"] = config.theta_star;
  doc["slope_fit_points"] = std::min<std::size_t>(4, result.rows.size());
  Json slopes = Json::object();
  Json paired_slopes = Json::object();
  for (std::size_t j = 0; j < result.parameter_names.size(); ++j) {
    slopes[result.parameter_names[j]] = optional_number(result.slope[j]);
    paired_slopes[result.parameter_names[j]] = optional_number(result.paired_slope[j]);
  }
  doc["abs_bias_slope"] = slopes;
  doc["paired_bias_slope"] = result.paired ? paired_slopes : Json(nullptr);
  if (result.paired) {
    Json control = Json::object();
    for (std::size_t j = 0; j < result.parameter_names.size(); ++j) {
      control[result.parameter_names[j]] = {{"mean_abs_error", number(result.mle_abs_error[j])},
                                            {"se", number(result.mle_se[j])}};
    }
    doc["exact_mle_control"] = control;
  }
  writer.write(stem + ".json", doc.dump(2) + "\n");
}

std::string gnuplot_script(const ExperimentConfig& config, const std::string& csv,
                           const std::string& xlabel, const std::string& ylabel,
                           const std::string& columns) {
  std::ostringstream gp;
  gp << "# Plots " << csv << " from the " << config.experiment << " run.\n"
     << "set datafile separator ','\n"
     << "set key autotitle columnhead\n"
     << "set logscale xy\n"
     << "set xlabel '" << xlabel << "'\n"
     << "set ylabel '" << ylabel << "'\n"
     << "set terminal pngcairo size 800,600\n"
     << "set output '" << config.experiment << ".png'\n"
     << "plot " << columns << "\n";
  return gp.str();
}

}  // namespace

RunOutputs run_experiment(const ExperimentConfig& config) {
  validate_config(config);
  RunWriter writer(next_run_directory(config.output_dir, config.experiment));
  const std::string config_text = config_to_json(config);
  writer.write("config.json", config_text);
  const std::string& name = config.experiment;

  if (name == "bias_curve" || name == "custom") {
    const BiasCurveResult result = run_bias_curve(config);
    write_bias_tables(config, result, writer, name);
    if (config.gnuplot) {
      std::string columns;
      for (std::size_t j = 0; j < result.parameter_names.size(); ++j) {
        const std::size_t col = 2 + j * (result.paired ? 5 : 2) + (result.paired ? 2 : 0);
        columns += (j > 0 ? ", " : "") + std::string("'") + name + ".csv' using 1:" +
                   std::to_string(col) + " with linespoints";
      }
      writer.write("plot.gp", gnuplot_script(config, name + ".csv", "epsilon",
                                             result.paired ? "paired bias" : "bias", columns));
    }
  } else if (name == "info_loss_curve") {
    const LoadedModel loaded = parse_model_config(config.model_json);
    FisherOptions options;
    options.n = config.ns[0];
    options.burn_in = config.burn_in;
    options.replicates = config.replicates;
    options.seed = *config.seed;
    options.threads = config.threads;
    const PerturbationSpec kernel = perturbation_for_kernel(config.kernel, 1.0);
    const InformationLossCurve curve = information_loss_curve(
        *loaded.model, config.theta_star, config.epsilons, kernel, options);
    std::ostringstream csv;
    write_loss_curve_csv(curve, csv);
    writer.write("info_loss_curve.csv", csv.str());
    const FisherEstimate collapsed =
        estimate_fisher(*loaded.model, config.theta_star,
                        kernel.with_epsilon(config.collapse_epsilon), options);
    Json doc = Json::parse(to_json(curve));
    doc["collapse_epsilon"] = number(config.collapse_epsilon);
    doc["collapsed_information_norm"] = number(collapsed.matrix.norm());
    doc["collapse_ratio"] = number(collapsed.matrix.norm() / curve.information_norm);
    writer.write("info_loss_curve.json", doc.dump(2) + "\n");
    if (config.gnuplot) {
      writer.write("plot.gp", gnuplot_script(config, "info_loss_curve.csv", "epsilon",
                                             "information norm",
                                             "'info_loss_curve.csv' using 1:2 with linespoints, "
                                             "'info_loss_curve.csv' using 1:6 with linespoints"));
    }
  } else if (name == "consistency") {
    const ConsistencyResult result = run_consistency(config);
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> header{"n"};
    for (const auto& p : result.parameter_names) {
      header.push_back("median_abs_error_" + p);
      header.push_back("mean_abs_error_" + p);
      header.push_back("se_" + p);
    }
    header.emplace_back("failures");
    rows.push_back(header);
    for (const auto& row : result.rows) {
      std::vector<std::string> line{std::to_string(row.n)};
      for (std::size_t j = 0; j < result.parameter_names.size(); ++j) {
        line.push_back(format_double(row.median_abs_error[j]));
        line.push_back(format_double(row.mean_abs_error[j]));
        line.push_back(format_double(row.se[j]));
      }
      line.push_back(std::to_string(row.failures));
      rows.push_back(std::move(line));
    }
    writer.write("consistency.csv", csv_text(rows));
    if (config.gnuplot) {
      writer.write("plot.gp", gnuplot_script(config, "consistency.csv", "n",
                                             "median |theta_hat - theta*|",
                                             "'consistency.csv' using 1:2 with linespoints"));
    }
  } else if (name == "example_3_2") {
    const auto result = run_example_3_2(config);
    std::vector<std::vector<std::string>> rows{{"epsilon", "likelihood_at_zero",
                                                "likelihood_at_theta_star", "theta_hat_abc",
                                                "theta_hat_noisy"}};
    for (const auto& row : result) {
      rows.push_back({format_double(row.epsilon), format_double(row.likelihood_at_zero),
                      format_double(row.likelihood_at_theta_star),
                      format_double(row.theta_hat_abc), format_double(row.theta_hat_noisy)});
    }
    writer.write("example_3_2.csv", csv_text(rows));
  }

  Json manifest;
  manifest["schema_version"] = 1;
  manifest["tool"] = "abc-hmm";
  manifest["experiment"] = name;
  manifest["config_file"] = "config.json";
  manifest["inputs"] = Json::array(
      {{{"name", "config.json"}, {"git_hash", git_blob_hash(config_text)}},
       {{"name", "model"}, {"git_hash", git_blob_hash(Json::parse(config.model_json).dump())}}});
  Json outputs = Json::array();
  for (std::size_t i = 0; i < writer.files().size(); ++i) {
    outputs.push_back({{"path", writer.files()[i].string()}, {"git_hash", writer.hashes()[i]}});
  }
  manifest["outputs"] = outputs;
  manifest["rerun"] = "abc-hmm experiment --config config.json";
  writer.write("manifest.json", manifest.dump(2) + "\n");

  RunOutputs out;
  out.directory = writer.directory();
  out.files = writer.files();
  return out;
}

}  // namespace abc_hmm::tools
