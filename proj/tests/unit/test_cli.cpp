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

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "abc_hmm/errors.hpp"
#include "abc_hmm_tools/cli.hpp"
#include "abc_hmm_tools/content_hash.hpp"
#include "abc_hmm_tools/experiments.hpp"

namespace abc_hmm::tools {
namespace {

namespace fs = std::filesystem;

struct CliRun {
  int code = 0;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  args.insert(args.begin(), "abc-hmm");
  std::vector<const char*> argv;
  for (const auto& a : args) {
    argv.push_back(a.c_str());
  }
  std::ostringstream out;
  std::ostringstream err;
  CliRun result;
  result.code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  result.out = out.str();
  result.err = err.str();
  return result;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream text;
  text << in.rdbuf();
  return text.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("abc_hmm_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path dir_;
};

TEST_F(CliTest, EstimatePathologyReportsThetaZero) {
  const auto r = run({"estimate", "--method", "abc", "--model", "iid_pm_theta", "--theta-star",
                      "1.0", "--epsilon", "1.5", "--n", "100", "--seed", "7"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc.at("theta_hat").at(0), 0.0);
}

TEST_F(CliTest, EstimateWritesJsonAndTrace) {
  const std::string stem = (dir_ / "est").string();
  const auto r = run({"estimate", "--method", "exact_mle", "--model", "finite_gaussian",
                      "--hyper", R"({"free":["mean_scale","sd"]})", "--theta-star", "1,1", "--n",
                      "500", "--seed", "3", "--output", stem});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(fs::exists(stem + ".json"));
  EXPECT_TRUE(fs::exists(stem + ".trace.csv"));
  EXPECT_EQ(slurp(stem + ".trace.csv").substr(0, 32), "index,mean_scale,sd,objective,se");
}

TEST_F(CliTest, AllAcceptLikelihoodIsZero) {
  const auto r = run({"likelihood", "--model", "iid_pm_theta", "--theta-star", "1.0", "--n",
                      "40", "--theta", "2.0", "--epsilon", "1e9", "--seed", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(nlohmann::json::parse(r.out).at("log_value"), 0.0);
}

TEST_F(CliTest, SimulateThenLikelihoodFromFile) {
  const std::string stem = (dir_ / "traj").string();
  auto r = run({"simulate", "--model", "finite_gaussian", "--theta", "1.0", "--n", "30",
                "--seed", "4", "--output", stem});
  ASSERT_EQ(r.code, 0) << r.err;
  ASSERT_TRUE(fs::exists(stem + ".csv"));
  const auto meta = nlohmann::json::parse(slurp(stem + ".meta.json"));
  EXPECT_EQ(meta.at("seed"), 4);
  r = run({"likelihood", "--model", "finite_gaussian", "--data", stem, "--theta", "1.0",
           "--epsilon", "0.5", "--particles", "200", "--seed", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(nlohmann::json::parse(r.out).at("n"), 30);
  r = run({"likelihood", "--model", "finite_gaussian", "--data", stem, "--epsilon", "0.5",
           "--seed", "1"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("theta"), std::string::npos);
}

TEST_F(CliTest, FisherCurveCsv) {
  const std::string csv = (dir_ / "curve.csv").string();
  const auto r = run({"fisher", "--model", "finite_gaussian", "--hyper",
                      R"({"free":["mean_scale","sd"]})", "--theta", "1,1", "--epsilon",
                      "0.1,0.2,0.4", "--n", "300", "--burn-in", "20", "--replicates", "3",
                      "--seed", "2", "--output", csv});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(slurp(csv).substr(0, 17), "epsilon,loss,se,m");
}

TEST_F(CliTest, ConfigErrorsExitTwoAndNameTheKey) {
  auto r = run({"estimate", "--model", "nope", "--theta-star", "1", "--n", "5", "--epsilon",
                "1", "--seed", "1"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("'model'"), std::string::npos) << r.err;

  r = run({"experiment", "--preset", "bias_curve", "--output-dir", dir_.string()});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("'seed'"), std::string::npos) << r.err;

  std::ofstream(dir_ / "bad.json") << R"({"experiment":"consistency","sead":3})";
  r = run({"experiment", "--config", (dir_ / "bad.json").string()});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("'sead'"), std::string::npos) << r.err;

  r = run({"estimate", "--method", "bayes", "--model", "iid_pm_theta", "--theta-star", "1",
           "--n", "5", "--epsilon", "1", "--seed", "1"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("'method'"), std::string::npos) << r.err;

  r = run({"frobnicate"});
  EXPECT_EQ(r.code, 2);
}

TEST_F(CliTest, EstimationFailureExitsOne) {
  std::ofstream(dir_ / "far.csv") << "t,y_1\r\n1,5\r\n2,-5\r\n";
  const auto r = run({"estimate", "--method", "abc", "--model", "iid_pm_theta", "--data",
                      (dir_ / "far.csv").string(), "--epsilon", "0.5", "--seed", "1"});
  EXPECT_EQ(r.code, 1) << r.err;
  EXPECT_NE(r.err.find("estimation failed"), std::string::npos);
}

TEST_F(CliTest, ExperimentRunsAreVersionedAndReproducible) {
  const std::vector<std::string> base = {"experiment", "--preset",     "bias_curve", "--seed",
                                         "7",          "--replicates", "3",          "--n",
                                         "200",        "--output-dir", dir_.string()};
  auto args = base;
  args.insert(args.end(), {"--threads", "1", "--gnuplot"});
  ASSERT_EQ(run(args).code, 0);
  args = base;
  args.insert(args.end(), {"--threads", "3"});
  ASSERT_EQ(run(args).code, 0);
  const fs::path first = dir_ / "bias_curve" / "run-001";
  const fs::path second = dir_ / "bias_curve" / "run-002";
  ASSERT_TRUE(fs::exists(first / "bias_curve.csv"));
  ASSERT_TRUE(fs::exists(second / "bias_curve.csv"));
  EXPECT_EQ(slurp(first / "bias_curve.csv"), slurp(second / "bias_curve.csv"));
  EXPECT_EQ(slurp(first / "bias_curve.json"), slurp(second / "bias_curve.json"));
  EXPECT_TRUE(fs::exists(first / "plot.gp"));
  EXPECT_FALSE(fs::exists(second / "plot.gp"));

  const auto manifest = nlohmann::json::parse(slurp(first / "manifest.json"));
  EXPECT_EQ(manifest.at("experiment"), "bias_curve");
  EXPECT_EQ(manifest.at("inputs").at(0).at("git_hash"),
            git_blob_hash(slurp(first / "config.json")));
  for (const auto& output : manifest.at("outputs")) {
    const fs::path file = first / output.at("path").get<std::string>();
    ASSERT_TRUE(fs::exists(file));
    EXPECT_EQ(output.at("git_hash"), git_blob_hash_file(file));
  }

  // The saved config alone reproduces the run.
  const auto rerun = run({"experiment", "--config", (first / "config.json").string()});
  ASSERT_EQ(rerun.code, 0) << rerun.err;
  EXPECT_EQ(slurp(dir_ / "bias_curve" / "run-003" / "bias_curve.csv"),
            slurp(first / "bias_curve.csv"));
}

TEST(ContentHash, MatchesGitBlobIds) {
  EXPECT_EQ(git_blob_hash(""), "e69de29bb2d1d6434b8b29ae775ad8c2e48c5391");
  EXPECT_EQ(git_blob_hash("hello\n"), "ce013625030ba8dba906f756967f9e9ca394464a");
}

TEST(ExperimentConfig, PresetsValidateOnceSeeded) {
  for (const auto& name : preset_names()) {
    ExperimentConfig config = preset_config(name);
    EXPECT_THROW(validate_config(config), ConfigError);
    config.seed = 1;
    EXPECT_NO_THROW(validate_config(config)) << name;
    const ExperimentConfig back = apply_config_json(preset_config("custom"), config_to_json(config));
    EXPECT_EQ(config_to_json(back), config_to_json(config));
  }
  EXPECT_THROW(preset_config("figure_9"), ConfigError);
}

TEST(ExperimentConfig, BiasPresetMatchesDocumentedScale) {
  const ExperimentConfig config = preset_config("bias_curve");
  EXPECT_EQ(config.ns, (std::vector<std::size_t>{2000}));
  EXPECT_EQ(config.replicates, 20U);
  EXPECT_EQ(config.epsilons, (std::vector<double>{0.05, 0.1, 0.2, 0.4, 0.8}));
}

TEST(Experiments, ExampleThreeTwo) {
  ExperimentConfig config = preset_config("example_3_2");
  config.seed = 7;
  const auto rows = run_example_3_2(config);
  ASSERT_EQ(rows.size(), 2U);
  EXPECT_EQ(rows[1].epsilon, 1.5);
  EXPECT_EQ(rows[1].likelihood_at_zero, 1.0);
  EXPECT_EQ(rows[1].likelihood_at_theta_star, std::ldexp(1.0, -100));
  EXPECT_EQ(rows[1].theta_hat_abc, 0.0);
  EXPECT_NEAR(rows[0].theta_hat_abc, 1.0, 0.1);
}

}  // namespace
}  // namespace abc_hmm::tools
