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

#include "abc_hmm/iid_abc.hpp"

#include <cmath>
#include <limits>

#include "abc_hmm/errors.hpp"

namespace abc_hmm {

namespace {

template <typename Accumulate>
void for_each_term(double theta, const Trajectory& data, const PerturbationSpec& pert,
                   const std::optional<SummaryStatistic>& summary, Accumulate&& accumulate) {
  if (data.obs_dim() != 1) {
    throw DomainError("iid_abc_likelihood: scalar observations expected");
  }
  if (pert.is_null()) {
    throw ConfigError("epsilon", "the ABC likelihood needs epsilon > 0");
  }
  double support[2] = {theta, -theta};
  if (summary) {
    for (double& s : support) {
      const double raw = s;
      summary->map(std::span<const double>(&raw, 1), std::span<double>(&s, 1));
    }
  }
  for (std::size_t k = 0; k < data.size(); ++k) {
    const auto y = data.observation(k);
    const double p = 0.5 * pert.weight(y, std::span<const double>(&support[0], 1)) +
                     0.5 * pert.weight(y, std::span<const double>(&support[1], 1));
    if (!accumulate(p)) {
      return;
    }
  }
}

}  // namespace

double iid_abc_log_likelihood(double theta, const Trajectory& data, const PerturbationSpec& pert,
                              const std::optional<SummaryStatistic>& summary) {
  double total = 0.0;
  for_each_term(theta, data, pert, summary, [&](double p) {
    total += p > 0.0 ? std::log(p) : -std::numeric_limits<double>::infinity();
    return p > 0.0;
  });
  return total;
}

double iid_abc_likelihood(double theta, const Trajectory& data, const PerturbationSpec& pert,
                          const std::optional<SummaryStatistic>& summary) {
  double product = 1.0;
  for_each_term(theta, data, pert, summary, [&](double p) {
    product *= p;
    return p > 0.0;
  });
  return product;
}

}  // namespace abc_hmm
