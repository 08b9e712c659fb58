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

#include "abc_hmm_tools/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "abc_hmm/errors.hpp"
#include "abc_hmm/estimate.hpp"
#include "abc_hmm/fisher.hpp"
#include "abc_hmm/model_config.hpp"
#include "abc_hmm/report.hpp"
#include "abc_hmm/simulate.hpp"
#include "abc_hmm/smc_abc.hpp"
#include "abc_hmm/trajectory_io.hpp"
#include "abc_hmm_tools/experiments.hpp"

namespace abc_hmm::tools {

namespace {

struct ModelArgs {
  std::string name;
  std::string hyper;
  std::string config_file;

  void add(CLI::App& app) {
    app.add_option("--model", name, "Built-in model name");
    app.add_option("--hyper", hyper, "Model hyper-parameters as a JSON object");
    app.add_option("--model-config", config_file, "Model config JSON file")
        ->check(CLI::ExistingFile);
  }

  [[nodiscard]] LoadedModel load() const {
    if (!config_file.empty()) {
      if (!name.empty() || !hyper.empty()) {
        throw ConfigError("model", "--model-config cannot be combined with --model or --hyper");
      }
      return load_model_config(config_file);
    }
    if (name.empty()) {
      throw ConfigError("model", "either --model or --model-config is required");
    }
    nlohmann::json doc{{"model", name}};
    if (!hyper.empty()) {
      try {
        doc["hyper"] = nlohmann::json::parse(hyper);
      } catch (const nlohmann::json::parse_error&) {
        throw ConfigError("hyper", "not valid JSON");
      }
    }
    return parse_model_config(doc.dump());
  }
};

// Observed data either loaded from disk or simulated at theta_star.
struct DataArgs {
  std::string path;
  std::vector<double> theta_star;
  std::size_t n = 0;

  void add(CLI::App& app) {
    app.add_option("--data", path, "Trajectory stem or CSV written by `simulate`");
    app.add_option("--theta-star", theta_star, "Simulate data at this parameter")
        ->delimiter(',');
    app.add_option("--n", n, "Length of simulated data");
  }

  [[nodiscard]] Trajectory get(const LoadedModel& model, std::uint64_t seed) const {
    if (!path.empty()) {
      if (!theta_star.empty()) {
        throw ConfigError("data", "--data cannot be combined with --theta-star");
      }
      return load_trajectory(path);
    }
    if (theta_star.empty()) {
      throw ConfigError("data", "either --data or --theta-star with --n is required");
    }
    if (n == 0) {
      throw ConfigError("n", "--n must be positive when simulating data");
    }
    return simulate(*model.model, ParameterVector(theta_star, model.box), n,
                    derive_seed(seed, StreamTag::kReplicate, 0));
  }
};

void write_text(const std::string& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary);
  if (!file) {
    throw ConfigError("output", "cannot write '" + path + "'");
  }
  file << text;
}

std::optional<PerturbationSpec> optional_perturbation(const std::string& kernel,
                                                      std::optional<double> epsilon) {
  if (!epsilon || *epsilon == 0.0) {
    return std::nullopt;
  }
  return perturbation_for_kernel(kernel, *epsilon);
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"ABC maximum-likelihood estimation for hidden Markov models", "abc-hmm"};
  app.require_subcommand(1);

  // simulate
  auto* simulate_cmd = app.add_subcommand("simulate", "Simulate a trajectory and save CSV + meta");
  ModelArgs sim_model;
  sim_model.add(*simulate_cmd);
  std::vector<double> sim_theta;
  std::size_t sim_n = 0;
  std::uint64_t sim_seed = 0;
  std::string sim_output;
  std::optional<double> sim_noise;
  std::string sim_kernel = "uniform_ball";
  simulate_cmd->add_option("--theta", sim_theta, "Parameter")->required()->delimiter(',');
  simulate_cmd->add_option("--n", sim_n, "Number of observations")->required();
  simulate_cmd->add_option("--seed", sim_seed, "Random seed")->required();
  simulate_cmd->add_option("--output", sim_output, "Output stem")->required();
  simulate_cmd->add_option("--noise-epsilon", sim_noise, "Also noisify the observations");
  simulate_cmd->add_option("--kernel", sim_kernel, "Noise kernel");

  // likelihood
  auto* lik_cmd = app.add_subcommand("likelihood", "SMC estimate of the ABC likelihood");
  ModelArgs lik_model;
  lik_model.add(*lik_cmd);
  DataArgs lik_data;
  lik_data.add(*lik_cmd);
  std::vector<double> lik_theta;
  double lik_epsilon = 0.0;
  std::string lik_kernel = "uniform_ball";
  std::size_t lik_particles = 1000;
  std::string lik_resampling = "multinomial";
  std::uint64_t lik_seed = 0;
  std::size_t lik_threads = 1;
  lik_cmd->add_option("--theta", lik_theta, "Evaluate at this parameter (default: theta-star)")
      ->delimiter(',');
  lik_cmd->add_option("--epsilon", lik_epsilon, "Tolerance")->required();
  lik_cmd->add_option("--kernel", lik_kernel, "uniform_ball, l2 or a smooth kernel name");
  lik_cmd->add_option("--particles", lik_particles, "Number of particles");
  lik_cmd->add_option("--resampling", lik_resampling, "multinomial, systematic[:ess], none");
  lik_cmd->add_option("--seed", lik_seed, "Random seed")->required();
  lik_cmd->add_option("--threads", lik_threads, "Worker threads");

  // estimate
  auto* est_cmd = app.add_subcommand("estimate", "Maximize an ABC likelihood over theta");
  ModelArgs est_model;
  est_model.add(*est_cmd);
  DataArgs est_data;
  est_data.add(*est_cmd);
  std::string est_method = "abc";
  double est_epsilon = 0.0;
  std::string est_kernel = "uniform_ball";
  std::size_t est_particles = 1000;
  std::string est_resampling = "multinomial";
  std::string est_optimizer;
  std::string est_objective = "auto";
  std::optional<double> est_tolerance;
  std::optional<std::size_t> est_grid_points;
  std::uint64_t est_seed = 0;
  std::optional<std::uint64_t> est_noise_seed;
  std::size_t est_threads = 1;
  std::string est_output;
  est_cmd->add_option("--method", est_method,
                      "abc, noisy_abc, smoothed_abc, smoothed_noisy_abc, exact_mle");
  est_cmd->add_option("--epsilon", est_epsilon, "Tolerance");
  est_cmd->add_option("--kernel", est_kernel, "uniform_ball, l2 or a smooth kernel name");
  est_cmd->add_option("--particles", est_particles, "Particles per SMC evaluation");
  est_cmd->add_option("--resampling", est_resampling, "multinomial, systematic[:ess], none");
  est_cmd->add_option("--optimizer", est_optimizer,
                      "grid[:step], grid_then_golden[:sweeps], nelder_mead[:restarts]");
  est_cmd->add_option("--objective", est_objective, "auto, smc or oracle");
  est_cmd->add_option("--tolerance", est_tolerance, "Optimizer tolerance");
  est_cmd->add_option("--grid-points", est_grid_points, "Grid points per coordinate");
  est_cmd->add_option("--seed", est_seed, "Random seed")->required();
  est_cmd->add_option("--noise-seed", est_noise_seed, "Seed of the noisy-ABC perturbation");
  est_cmd->add_option("--threads", est_threads, "Workers per SMC evaluation");
  est_cmd->add_option("--output", est_output, "Write <output>.json and <output>.trace.csv");

  // fisher
  auto* fisher_cmd = app.add_subcommand("fisher", "Fisher information and information loss");
  ModelArgs fisher_model;
  fisher_model.add(*fisher_cmd);
  std::vector<double> fisher_theta;
  std::vector<double> fisher_epsilons;
  std::string fisher_kernel = "uniform_ball";
  FisherOptions fisher_options;
  std::uint64_t fisher_seed = 0;
  std::string fisher_output;
  fisher_cmd->add_option("--theta", fisher_theta, "Parameter")->required()->delimiter(',');
  fisher_cmd->add_option("--epsilon", fisher_epsilons,
                         "One value: I^eps; several ascending values: loss curve")
      ->delimiter(',');
  fisher_cmd->add_option("--kernel", fisher_kernel, "uniform_ball, l2 or a smooth kernel name");
  fisher_cmd->add_option("--n", fisher_options.n, "Scored steps per replicate");
  fisher_cmd->add_option("--burn-in", fisher_options.burn_in, "Unscored leading steps");
  fisher_cmd->add_option("--replicates", fisher_options.replicates, "Independent replicates");
  fisher_cmd->add_option("--threads", fisher_options.threads, "Worker threads (0 = default)");
  fisher_cmd->add_option("--seed", fisher_seed, "Random seed")->required();
  fisher_cmd->add_option("--output", fisher_output, "CSV output path");

  // experiment
  auto* exp_cmd = app.add_subcommand("experiment", "Run an experiment preset");
  std::string exp_preset;
  std::string exp_config;
  std::optional<std::uint64_t> exp_seed;
  std::optional<std::string> exp_output_dir;
  std::optional<std::size_t> exp_threads;
  std::optional<std::size_t> exp_replicates;
  std::vector<std::size_t> exp_ns;
  std::vector<double> exp_epsilons;
  std::optional<std::size_t> exp_particles;
  bool exp_gnuplot = false;
  exp_cmd->add_option("--preset", exp_preset, "bias_curve, info_loss_curve, consistency, "
                                              "example_3_2 or custom");
  exp_cmd->add_option("--config", exp_config, "Experiment config JSON (flags win)")
      ->check(CLI::ExistingFile);
  exp_cmd->add_option("--seed", exp_seed, "Random seed");
  exp_cmd->add_option("--output-dir", exp_output_dir, "Root of the versioned run directories");
  exp_cmd->add_option("--threads", exp_threads, "Worker threads (outputs do not depend on it)");
  exp_cmd->add_option("--replicates", exp_replicates, "Replicates");
  exp_cmd->add_option("--n", exp_ns, "Data length(s)")->delimiter(',');
  exp_cmd->add_option("--epsilons", exp_epsilons, "Tolerances")->delimiter(',');
  exp_cmd->add_option("--particles", exp_particles, "Particles per SMC evaluation");
  exp_cmd->add_flag("--gnuplot", exp_gnuplot, "Also write plot.gp");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*simulate_cmd) {
      const LoadedModel model = sim_model.load();
      Trajectory data = simulate(*model.model, ParameterVector(sim_theta, model.box), sim_n,
                                 sim_seed);
      if (sim_noise) {
        data = noisify(data, perturbation_for_kernel(sim_kernel, *sim_noise),
                       derive_seed(sim_seed, StreamTag::kNoise, 0));
      }
      save_trajectory(data, sim_output);
      out << sim_output << ".csv\n" << sim_output << ".meta.json\n";
    } else if (*lik_cmd) {
      const LoadedModel model = lik_model.load();
      const Trajectory data = lik_data.get(model, lik_seed);
      std::vector<double> theta = lik_theta.empty() ? lik_data.theta_star : lik_theta;
      if (theta.empty()) {
        throw ConfigError("theta", "--theta is required with --data");
      }
      SmcOptions options;
      options.particles = lik_particles;
      options.resampling = parse_resampling_policy(lik_resampling);
      options.seed = lik_seed;
      options.threads = lik_threads;
      const LikelihoodEstimate estimate =
          smc_abc_likelihood(*model.model, ParameterVector(theta, model.box), data,
                             perturbation_for_kernel(lik_kernel, lik_epsilon), options);
      out << to_json(estimate) << "\n";
    } else if (*est_cmd) {
      const LoadedModel model = est_model.load();
      const Trajectory data = est_data.get(model, est_seed);
      const EstimationMethod method = parse_method(est_method);
      EstimateOptions options;
      options.box = model.box;
      options.particles = est_particles;
      options.resampling = parse_resampling_policy(est_resampling);
      options.optimizer = est_optimizer.empty()
                              ? default_optimizer(model.model->param_dim())
                              : parse_optimizer(est_optimizer, model.model->param_dim());
      if (est_tolerance) {
        options.optimizer.tolerance = *est_tolerance;
      }
      if (est_grid_points) {
        options.optimizer.grid_points = *est_grid_points;
      }
      options.optimizer.seed = est_seed;
      options.objective = parse_objective_kind(est_objective);
      options.seed = est_seed;
      options.noise_seed = est_noise_seed;
      options.smc_threads = est_threads;
      if (method != EstimationMethod::kExactMle && !(est_epsilon > 0.0)) {
        throw ConfigError("epsilon", "--epsilon must be positive for method " + est_method);
      }
      const PerturbationSpec pert = perturbation_for_kernel(
          est_kernel, method == EstimationMethod::kExactMle ? 1.0 : est_epsilon);
      const EstimateResult result = run_estimator(method, model.model, data, pert, options);
      const std::string json = to_json(result);
      out << json << "\n";
      if (!est_output.empty()) {
        write_text(est_output + ".json", json + "\n");
        std::ostringstream trace;
        write_trace_csv(result, trace);
        write_text(est_output + ".trace.csv", trace.str());
      }
    } else if (*fisher_cmd) {
      const LoadedModel model = fisher_model.load();
      ParameterVector(fisher_theta, model.box);
      fisher_options.seed = fisher_seed;
      std::ostringstream csv;
      if (fisher_epsilons.size() > 1) {
        const InformationLossCurve curve = information_loss_curve(
            *model.model, fisher_theta, fisher_epsilons,
            perturbation_for_kernel(fisher_kernel, 1.0), fisher_options);
        out << to_json(curve) << "\n";
        write_loss_curve_csv(curve, csv);
      } else {
        const std::optional<double> epsilon =
            fisher_epsilons.empty() ? std::nullopt : std::optional<double>(fisher_epsilons[0]);
        const FisherEstimate estimate =
            estimate_fisher(*model.model, fisher_theta,
                            optional_perturbation(fisher_kernel, epsilon), fisher_options);
        out << to_json(estimate) << "\n";
        write_fisher_csv(estimate, csv);
      }
      if (!fisher_output.empty()) {
        write_text(fisher_output, csv.str());
      }
    } else if (*exp_cmd) {
      if (exp_preset.empty() && exp_config.empty()) {
        throw ConfigError("preset", "either --preset or --config is required");
      }
      ExperimentConfig config = preset_config(exp_preset.empty() ? "custom" : exp_preset);
      if (!exp_config.empty()) {
        std::ifstream file(exp_config, std::ios::binary);
        std::stringstream text;
        text << file.rdbuf();
        config = apply_config_json(config, text.str());
        if (!exp_preset.empty() && config.experiment != exp_preset) {
          throw ConfigError("preset", "--preset '" + exp_preset + "' disagrees with the config '" +
                                          config.experiment + "'");
        }
      }
      if (exp_seed) {
        config.seed = exp_seed;
      }
      if (exp_output_dir) {
        config.output_dir = *exp_output_dir;
      }
      if (exp_threads) {
        config.threads = *exp_threads;
      }
      if (exp_replicates) {
        config.replicates = *exp_replicates;
      }
      if (!exp_ns.empty()) {
        config.ns = exp_ns;
      }
      if (!exp_epsilons.empty()) {
        config.epsilons = exp_epsilons;
      }
      if (exp_particles) {
        config.particles = *exp_particles;
      }
      if (exp_gnuplot) {
        config.gnuplot = true;
      }
      const RunOutputs outputs = run_experiment(config);
      out << outputs.directory.string() << "\n";
      for (const auto& file : outputs.files) {
        out << "  " << file.string() << "\n";
      }
    }
  } catch (const ConfigError& e) {
    err << "abc-hmm: configuration error in '" << e.key() << "': " << e.what() << "\n";
    return 2;
  } catch (const UsageError& e) {
    err << "abc-hmm: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    err << "abc-hmm: invalid value: " << e.what() << "\n";
    return 2;
  } catch (const UnsupportedModel& e) {
    err << "abc-hmm: unsupported model: " << e.what() << "\n";
    return 2;
  } catch (const EstimationFailed& e) {
    err << "abc-hmm: estimation failed: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "abc-hmm: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace abc_hmm::tools
