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

#include <sstream>
#include <string>

#include <json.hpp>

#include "abc_hmm/estimate.hpp"
#include "abc_hmm/report.hpp"
#include "abc_hmm/simulate.hpp"
#include "abc_hmm/smc_abc.hpp"
#include "test_support.hpp"

namespace abc_hmm {
namespace {

TEST(Report, LikelihoodJsonWritesNonFiniteAsStrings) {
  const auto loaded = testing::gaussian2();
  const ParameterVector theta({1.0, 1.0}, loaded.box);
  const Trajectory data = simulate(*loaded.model, theta, 5, 1);
  SmcOptions options;
  options.particles = 50;
  const auto collapsed = smc_abc_likelihood(*loaded.model, theta, data,
                                            PerturbationSpec::uniform_ball(1e-12), options);
  const auto doc = nlohmann::json::parse(to_json(collapsed));
  EXPECT_EQ(doc.at("log_value"), "-inf");
  EXPECT_EQ(doc.at("collapsed_at"), 1);
  EXPECT_EQ(doc.at("particles"), 50);
}

TEST(Report, EstimateJsonAndTraceCsv) {
  const auto loaded = testing::iid_pm();
  const Trajectory data = simulate(*loaded.model, ParameterVector({1.0}, loaded.box), 20, 2);
  EstimateOptions options;
  options.optimizer = parse_optimizer("grid:0.5", 1);
  const auto result = abc_mle(loaded.model, data, PerturbationSpec::uniform_ball(1.5), options);
  const auto doc = nlohmann::json::parse(to_json(result));
  EXPECT_EQ(doc.at("theta_hat").at(0), 0.0);
  EXPECT_EQ(doc.at("method"), "exact_abc_mle");
  EXPECT_EQ(doc.at("parameter_names").at(0), "theta");
  EXPECT_EQ(doc.at("settings").at("epsilon"), 1.5);

  std::ostringstream csv;
  write_trace_csv(result, csv);
  std::istringstream lines(csv.str());
  std::string header;
  std::getline(lines, header);
  EXPECT_EQ(header, "index,theta,objective,se\r");
  std::size_t rows = 0;
  std::string line;
  while (std::getline(lines, line)) {
    ++rows;
  }
  EXPECT_EQ(rows, result.trace.size());
}

}  // namespace
}  // namespace abc_hmm
