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

// Runs the nine acceptance criteria and prints one PASS/FAIL line per criterion.
// Usage: abc_hmm_acceptance [criterion numbers...]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "abc_hmm/estimate.hpp"
#include "abc_hmm/fisher.hpp"
#include "abc_hmm/forward.hpp"
#include "abc_hmm/iid_abc.hpp"
#include "abc_hmm/model_config.hpp"
#include "abc_hmm/random_variates.hpp"
#include "abc_hmm/simulate.hpp"
#include "abc_hmm/smc_abc.hpp"
#include "abc_hmm_tools/experiments.hpp"

namespace {

using namespace abc_hmm;
namespace fs = std::filesystem;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* format, double a = 0, double b = 0, double c = 0, double d = 0) {
  char buffer[256];
  std::snprintf(buffer, sizeof(buffer), format, a, b, c, d);
  return buffer;
}

LoadedModel gaussian(double stay, const char* free = R"(["mean_scale","sd"])") {
  return parse_model_config(std::string(R"({"model":"finite_gaussian","hyper":{"states":2,"stay_prob":)") +
                            std::to_string(stay) + R"(,"free":)" + free + "}}");
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// 1. SMC mean matches the perturbed forward likelihood.
Outcome oracle_equivalence() {
  const auto start = std::chrono::steady_clock::now();
  const auto loaded = gaussian(0.7);
  const ParameterVector theta({1.0, 1.0}, loaded.box);
  const Trajectory data = simulate(*loaded.model, theta, 50, 2026);
  const auto pert = PerturbationSpec::uniform_ball(0.5);
  const double exact = forward_loglik(*loaded.model, theta.values(), data, pert);
  const int reps = 100;
  double sum = 0.0;
  double sq = 0.0;
  for (int r = 0; r < reps; ++r) {
    SmcOptions options;
    options.particles = 10000;
    options.seed = derive_seed(1, StreamTag::kReplicate, static_cast<std::uint64_t>(r));
    options.threads = 1;
    const double ratio =
        std::exp(smc_abc_likelihood(*loaded.model, theta, data, pert, options).log_density() -
                 exact);
    sum += ratio;
    sq += ratio * ratio;
  }
  const double mean = sum / reps;
  const double se = std::sqrt((sq / reps - mean * mean) / (reps - 1));
  const double elapsed = seconds_since(start);
  const double z = std::abs(mean - 1.0) / se;
  return {z <= 3.0 && elapsed < 120.0,
          fmt("mean SMC/exact ratio %.4f, SE %.4f, |z| %.2f, %.1f s single-threaded", mean, se,
              z, elapsed)};
}

// 2. The i.i.d. +/- theta pathology, exactly.
Outcome pathology() {
  const auto start = std::chrono::steady_clock::now();
  const auto loaded = parse_model_config(R"({"model":"iid_pm_theta","theta_box":[[0,3]]})");
  const std::size_t n = 100;
  const Trajectory data = simulate(*loaded.model, ParameterVector({1.0}, loaded.box), n, 7);
  bool all_unit = true;
  for (const double y : data.observations()) {
    all_unit = all_unit && std::abs(y) == 1.0;
  }
  const auto pert = PerturbationSpec::uniform_ball(1.5);
  const double at_zero = iid_abc_likelihood(0.0, data, pert);
  const double at_one = iid_abc_likelihood(1.0, data, pert);
  EstimateOptions options;
  options.optimizer = parse_optimizer("grid:0.01", 1);
  const auto result = abc_mle(loaded.model, data, pert, options);
  const double elapsed = seconds_since(start);
  const bool pass = all_unit && at_zero == 1.0 && at_one == std::ldexp(1.0, -static_cast<int>(n)) &&
                    result.theta_hat[0] == 0.0 && elapsed < 1.0;
  return {pass, fmt("L(0) = %.17g, L(1) = %.6g", at_zero, at_one) +
                    (at_one == std::ldexp(1.0, -100) ? " = 0.5^100 exactly" : " != 0.5^100") +
                    fmt(", theta_hat = %g", result.theta_hat[0]) +
                    fmt(", %.3f s", elapsed)};
}

// 3. Noisy ABC consistency.
Outcome consistency() {
  const auto start = std::chrono::steady_clock::now();
  tools::ExperimentConfig config = tools::preset_config("consistency");
  config.seed = 7;
  const auto result = tools::run_consistency(config);
  bool decreasing = true;
  std::string medians;
  for (std::size_t i = 0; i < result.rows.size(); ++i) {
    medians += (i ? ", " : "") + std::to_string(result.rows[i].n) + ": " +
               fmt("%.4f", result.rows[i].median_abs_error[0]);
    if (i > 0) {
      decreasing = decreasing &&
                   result.rows[i].median_abs_error[0] < result.rows[i - 1].median_abs_error[0];
    }
  }
  const double last = result.rows.back().median_abs_error[0];
  const double elapsed = seconds_since(start);
  return {decreasing && last < 0.1 && elapsed < 300.0,
          "median |theta_hat - theta*| by n {" + medians + "}" + fmt(", %.1f s", elapsed)};
}

// 4. Bias vanishes and shrinks at a rate in [1, 2.5] on the scale parameter.
Outcome bias_curve() {
  const auto start = std::chrono::steady_clock::now();
  tools::ExperimentConfig config = tools::preset_config("bias_curve");
  config.seed = 7;
  const auto result = tools::run_bias_curve(config);
  const auto& names = result.parameter_names;
  const std::size_t j = static_cast<std::size_t>(
      std::find(names.begin(), names.end(), "sd") - names.begin());
  const auto& lo = result.rows.front().cells[j];
  const auto& hi = result.rows.back().cells[j];
  const double separation = (hi.mean_paired_bias - lo.mean_paired_bias) /
                            std::sqrt(hi.paired_se * hi.paired_se + lo.paired_se * lo.paired_se);
  const double slope = result.paired_slope[j].value_or(NAN);
  const double literal_sep =
      (hi.mean_abs_bias - lo.mean_abs_bias) / std::sqrt(hi.se * hi.se + lo.se * lo.se);
  const double elapsed = seconds_since(start);
  const bool pass = separation > 3.0 && literal_sep > 3.0 && slope >= 1.0 && slope <= 2.5 &&
                    elapsed < 600.0;
  return {pass, fmt("sd: bias vs exact MLE %.2e at eps 0.05, %.2e at eps 0.8 (%.1f SE apart), ",
                    lo.mean_paired_bias, hi.mean_paired_bias, separation) +
                    fmt("small-eps slope %.3f; bias vs theta* %.1f SE apart, %.1f s", slope,
                        literal_sep, elapsed)};
}

// 5. Information ordering, quadratic loss and collapse.
Outcome information_loss() {
  const auto start = std::chrono::steady_clock::now();
  const auto loaded = gaussian(0.7);
  const std::vector<double> theta{1.0, 1.0};
  FisherOptions options;
  options.n = 5000;
  options.burn_in = 200;
  options.replicates = 20;
  options.seed = 2026;
  const auto kernel = PerturbationSpec::uniform_ball(1.0);
  const auto curve = information_loss_curve(*loaded.model, theta,
                                            {0.05, 0.1, 0.2, 0.4, 0.8, 1.6, 3.2}, kernel, options);
  double worst_z = INFINITY;
  for (const auto& p : curve.points) {
    worst_z = std::min(worst_z, p.min_eigenvalue / p.min_eigenvalue_se);
  }
  const auto collapsed = estimate_fisher(*loaded.model, theta, kernel.with_epsilon(100.0), options);
  const double ratio = collapsed.matrix.norm() / curve.information_norm;
  const double slope = curve.small_eps_slope.value_or(NAN);
  const double elapsed = seconds_since(start);
  const bool pass = worst_z >= -3.0 && curve.slope_reliable && slope >= 1.5 && slope <= 2.5 &&
                    ratio < 0.05 && elapsed < 600.0;
  return {pass, fmt("min eigenvalue of I - I^eps >= %.1f SE, loss slope %.3f, "
                    "|I^100| / |I| = %.4f, %.1f s",
                    worst_z, slope, ratio, elapsed)};
}

// 6. Missing-information decomposition.
Outcome missing_information() {
  const auto start = std::chrono::steady_clock::now();
  const auto loaded = gaussian(0.6);
  std::string detail;
  bool pass = true;
  for (const double eps : {0.2, 1.0}) {
    MissingInformationOptions options;
    options.horizon = 5;
    options.windows = 400;
    options.seed = 2026;
    options.direct.seed = 2027;
    const auto report = missing_information_check(*loaded.model, std::vector<double>{1.0, 1.0},
                                                  PerturbationSpec::uniform_ball(eps), options);
    pass = pass && report.agrees(3.0);
    detail += fmt("eps %.1f: max |z| %.2f (window truncation %.1e); ", eps, report.max_z,
                  report.truncation_bound);
  }
  const double elapsed = seconds_since(start);
  return {pass && elapsed < 300.0, detail + fmt("%.1f s", elapsed)};
}

// 7. Filter forgetting within the computed rate on truncated support.
Outcome forgetting() {
  const auto start = std::chrono::steady_clock::now();
  const auto loaded = gaussian(0.6);
  const std::vector<double> theta{0.5, 2.0};
  const Trajectory raw = simulate(*loaded.model, ParameterVector(theta, loaded.box), 50, 2026);
  std::vector<double> clipped;
  for (const double y : raw.observations()) {
    clipped.push_back(std::clamp(y, -1.0, 1.0));
  }
  const Trajectory data = make_scalar_trajectory(clipped);
  const ForgettingBound bound = forgetting_rate_bound(*loaded.model, theta, -1.0, 1.0);
  const auto tv = filter_tv_forgetting(*loaded.model, theta, data,
                                       (Eigen::VectorXd(2) << 1.0, 0.0).finished(),
                                       (Eigen::VectorXd(2) << 0.0, 1.0).finished());
  bool pass = bound.rho < 1.0;
  double worst = 0.0;
  for (std::size_t k = 0; k < tv.size(); ++k) {
    const double envelope = std::pow(bound.rho, static_cast<double>(k + 1));
    pass = pass && tv[k] <= envelope;
    worst = std::max(worst, tv[k] / envelope);
  }
  const double elapsed = seconds_since(start);
  return {pass && elapsed < 1.0,
          fmt("rho_hat %.6f, max TV(k) / rho_hat^k %.3g over k <= 50, final TV %.2e, %.3f s",
              bound.rho, worst, tv.back(), elapsed)};
}

// Central differences of forward_loglik against forward_score on random tractable instances.
bool score_checks(std::string& detail) {
  Rng rng({2026, StreamTag::kUser, 8, 0});
  double worst = 0.0;
  for (int instance = 0; instance < 50; ++instance) {
    const int k = 2 + static_cast<int>(rng.uniform01() * 2.0);
    std::ostringstream hyper;
    hyper << R"({"model":"finite_gaussian","hyper":{"states":)" << k << R"(,"mean_coeffs":[)";
    for (int i = 0; i < k; ++i) {
      hyper << (i ? "," : "") << rng.uniform(-2.0, 2.0);
    }
    hyper << R"(],"free":["mean_scale","sd","stay_prob"]}})";
    const auto loaded = parse_model_config(hyper.str());
    const std::vector<double> theta{rng.uniform(0.3, 2.0), rng.uniform(0.5, 2.0),
                                    rng.uniform(0.2, 0.9)};
    const auto n = static_cast<std::size_t>(rng.uniform(20.0, 80.0));
    const Trajectory data =
        simulate(*loaded.model, ParameterVector(theta, loaded.box), n, 100 + instance);
    std::optional<PerturbationSpec> pert;
    if (instance % 2 == 1) {
      pert = PerturbationSpec::uniform_ball(rng.uniform(0.1, 1.0));
    }
    const Eigen::VectorXd score = forward_score(*loaded.model, theta, data, pert);
    for (std::size_t j = 0; j < theta.size(); ++j) {
      const double h = 1e-5;
      auto up = theta;
      auto down = theta;
      up[j] += h;
      down[j] -= h;
      const double fd = (forward_loglik(*loaded.model, up, data, pert) -
                         forward_loglik(*loaded.model, down, data, pert)) /
                        (2 * h);
      worst = std::max(worst, std::abs(score(static_cast<Eigen::Index>(j)) - fd) /
                                  std::max(1.0, std::abs(fd)));
    }
  }
  detail += fmt("score vs FD max rel err %.1e; ", worst);
  return worst <= 1e-4;
}

bool path_sum_check(std::string& detail) {
  const auto loaded = gaussian(0.7);
  const std::vector<double> theta{0.9, 1.1};
  const std::size_t n = 20;
  const Trajectory data = simulate(*loaded.model, ParameterVector(theta, loaded.box), n, 2026);
  const auto chain = loaded.model->finite_chain(theta);
  std::vector<std::array<double, 2>> e(n);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t x = 0; x < 2; ++x) {
      const double mu = (x == 0 ? -1.0 : 1.0) * 0.9;
      const double z = (data.observation(k)[0] - mu) / 1.1;
      e[k][x] = std::exp(-0.5 * z * z) / (1.1 * std::sqrt(2.0 * std::numbers::pi));
    }
  }
  const double q[2][2] = {{0.7, 0.3}, {0.3, 0.7}};
  double total = 0.0;
  for (std::uint32_t code = 0; code < (1U << (n + 1)); ++code) {
    double p = chain->initial(code & 1U);
    for (std::size_t k = 1; k <= n; ++k) {
      const std::size_t prev = (code >> (k - 1)) & 1U;
      const std::size_t cur = (code >> k) & 1U;
      p *= q[prev][cur] * e[k - 1][cur];
    }
    total += p;
  }
  const double diff = std::abs(std::log(total) - forward_loglik(*loaded.model, theta, data));
  detail += fmt("path sum |diff| %.1e at n = 20; ", diff);
  return diff <= 1e-8;
}

bool all_accept_check(std::string& detail) {
  const auto loaded = parse_model_config(R"({"model":"iid_pm_theta"})");
  const Trajectory data = simulate(*loaded.model, ParameterVector({1.0}, loaded.box), 100, 3);
  SmcOptions options;
  options.particles = 1000;
  options.seed = 5;
  const auto est = smc_abc_likelihood(*loaded.model, ParameterVector({2.0}, loaded.box), data,
                                      PerturbationSpec::uniform_ball(1e9), options);
  detail += fmt("all-accept log value %g; ", est.log_value);
  return est.log_value == 0.0;
}

std::string read_all(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream text;
  text << in.rdbuf();
  return text.str();
}

bool rerun_check(std::string& detail) {
  const fs::path root = fs::temp_directory_path() / "abc_hmm_acceptance_rerun";
  fs::remove_all(root);
  bool same = true;
  for (const std::string preset : {"bias_curve", "info_loss_curve"}) {
    tools::ExperimentConfig config = tools::preset_config(preset);
    config.seed = 7;
    config.replicates = 4;
    config.ns = {400};
    config.output_dir = root;
    config.threads = 1;
    const auto serial = tools::run_experiment(config);
    config.threads = 4;
    const auto threaded = tools::run_experiment(config);
    for (const auto& file : serial.files) {
      if (read_all(serial.directory / file) != read_all(threaded.directory / file)) {
        std::cerr << "differs: " << (serial.directory / file) << '\n';
        same = false;
      }
    }
  }
  const auto loaded = gaussian(0.7);
  const ParameterVector theta({1.0, 1.0}, loaded.box);
  const Trajectory data = simulate(*loaded.model, theta, 40, 9);
  SmcOptions options;
  options.particles = 8192;
  options.seed = 11;
  options.threads = 1;
  const auto a = smc_abc_likelihood(*loaded.model, theta, data,
                                    PerturbationSpec::uniform_ball(0.5), options);
  options.threads = 4;
  const auto b = smc_abc_likelihood(*loaded.model, theta, data,
                                    PerturbationSpec::uniform_ball(0.5), options);
  same = same && a.log_value == b.log_value && a.ess_trace == b.ess_trace;
  fs::remove_all(root);
  detail += same ? "reruns byte-identical across 1 and 4 threads" : "reruns differ";
  return same;
}

// 8. Numerical hygiene.
Outcome hygiene() {
  const auto start = std::chrono::steady_clock::now();
  std::string detail;
  const bool a = score_checks(detail);
  const bool b = path_sum_check(detail);
  const bool c = all_accept_check(detail);
  const bool d = rerun_check(detail);
  return {a && b && c && d, detail + fmt(", %.1f s", seconds_since(start))};
}

double stable_cdf(double x, double alpha, double sigma) {
  auto integrand = [&](double t) {
    if (t == 0.0) {
      return -x;
    }
    return std::exp(-std::pow(sigma * t, alpha)) * std::sin(-t * x) / t;
  };
  const double integral = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      integrand, 0.0, 60.0 / sigma, 15, 1e-12);
  return 0.5 - integral / std::numbers::pi;
}

// 9. Alpha-stable sampler.
Outcome alpha_stable_sampler() {
  const auto start = std::chrono::steady_clock::now();
  const int n = 100000;
  Rng rng({2026, StreamTag::kUser, 9, 0});
  const double sigma = 1.3;
  double mean = 0.0;
  std::vector<double> x(n);
  for (auto& v : x) {
    v = alpha_stable(2.0, 0.0, sigma, 0.0, rng);
    mean += v;
  }
  mean /= n;
  double var = 0.0;
  for (const double v : x) {
    var += (v - mean) * (v - mean);
  }
  var /= (n - 1);
  const double target = 2.0 * sigma * sigma;
  const double var_z = (var - target) / (target * std::sqrt(2.0 / (n - 1)));

  double below = 0.0;
  for (int i = 0; i < n; ++i) {
    below += alpha_stable(1.0, 0.0, sigma, 0.0, rng) <= sigma ? 1.0 : 0.0;
  }
  const double quartile_z = (below / n - 0.75) / std::sqrt(0.75 * 0.25 / n);

  for (auto& v : x) {
    v = alpha_stable(1.8, 0.0, 1.0, 0.0, rng);
  }
  std::sort(x.begin(), x.end());
  double worst = 0.0;
  for (const double q : {-3.0, -1.0, 0.0, 1.0, 3.0}) {
    const double empirical =
        static_cast<double>(std::upper_bound(x.begin(), x.end(), q) - x.begin()) / n;
    worst = std::max(worst, std::abs(empirical - stable_cdf(q, 1.8, 1.0)));
  }
  const double elapsed = seconds_since(start);
  const bool pass = std::abs(var_z) <= 3.0 && std::abs(quartile_z) <= 3.0 && worst <= 0.01 &&
                    elapsed < 60.0;
  return {pass, fmt("alpha 2 variance z %.2f, alpha 1 quartile z %.2f, alpha 1.8 max CDF error "
                    "%.4f, %.1f s",
                    var_z, quartile_z, worst, elapsed)};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"oracle equivalence", oracle_equivalence},
      {"ABC pathology", pathology},
      {"noisy ABC consistency", consistency},
      {"bias vanishing and rate", bias_curve},
      {"information ordering and loss rate", information_loss},
      {"missing-information decomposition", missing_information},
      {"filter forgetting", forgetting},
      {"numerical hygiene", hygiene},
      {"alpha-stable sampler", alpha_stable_sampler},
  };
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) {
    selected.insert(std::atoi(argv[i]));
  }
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int number = static_cast<int>(i + 1);
    if (!selected.empty() && selected.count(number) == 0) {
      continue;
    }
    Outcome outcome;
    try {
      outcome = criteria[i].second();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    failures += outcome.pass ? 0 : 1;
    std::cout << (outcome.pass ? "PASS" : "FAIL") << " criterion " << number << " ("
              << criteria[i].first << "): " << outcome.detail << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
