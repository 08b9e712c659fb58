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

#include "abc_hmm/summary.hpp"

#include <cmath>

#include "abc_hmm/errors.hpp"

namespace abc_hmm {

SummaryStatistic identity_summary() {
  return {"identity", [](std::size_t m) { return m; },
          [](std::span<const double> in, std::span<double> out) {
            std::copy(in.begin(), in.end(), out.begin());
          }};
}

SummaryStatistic absolute_summary() {
  return {"abs", [](std::size_t m) { return m; },
          [](std::span<const double> in, std::span<double> out) {
            for (std::size_t i = 0; i < in.size(); ++i) {
              out[i] = std::abs(in[i]);
            }
          }};
}

SummaryStatistic projection_summary(std::size_t coordinate) {
  return {"project:" + std::to_string(coordinate), [](std::size_t) { return std::size_t{1}; },
          [coordinate](std::span<const double> in, std::span<double> out) {
            out[0] = in[coordinate];
          }};
}

Trajectory apply_summary(const Trajectory& trajectory, const SummaryStatistic& summary) {
  const std::size_t n = trajectory.size();
  const std::size_t m = trajectory.obs_dim();
  const std::size_t m_out = summary.output_dim(m);
  if (summary.name.rfind("project:", 0) == 0 &&
      std::stoul(summary.name.substr(8)) >= m) {
    throw ConfigError("summary", "projection coordinate out of range");
  }
  std::vector<double> mapped(n * m_out);
  for (std::size_t k = 0; k < n; ++k) {
    summary.map(trajectory.observation(k),
                std::span<double>(mapped).subspan(k * m_out, m_out));
  }
  TrajectoryMeta meta = trajectory.meta();
  meta.summary = meta.summary ? *meta.summary + "|" + summary.name : summary.name;
  return Trajectory(m_out, std::move(mapped), trajectory.hidden(), trajectory.state_dim(),
                    std::move(meta));
}

namespace {

class SummarizedModel final : public HiddenMarkovModel {
 public:
  SummarizedModel(ModelSpec base, SummaryStatistic summary)
      : base_(std::move(base)), summary_(std::move(summary)) {}

  std::string name() const override { return base_->name() + "|" + summary_.name; }
  std::vector<std::string> parameter_names() const override { return base_->parameter_names(); }
  StateSpace state_space() const override { return base_->state_space(); }
  std::size_t obs_dim() const override { return summary_.output_dim(base_->obs_dim()); }
  Box default_box() const override { return base_->default_box(); }

  void sample_initial(Theta theta, Rng& rng, std::span<double> x) const override {
    base_->sample_initial(theta, rng, x);
  }
  void sample_transition(Theta theta, std::span<const double> x, Rng& rng,
                         std::span<double> next) const override {
    base_->sample_transition(theta, x, rng, next);
  }
  void sample_observation(Theta theta, std::span<const double> x, Rng& rng,
                          std::span<double> y) const override {
    std::vector<double> raw(base_->obs_dim());
    base_->sample_observation(theta, x, rng, raw);
    summary_.map(raw, y);
  }
  std::optional<FiniteChain> finite_chain(Theta theta) const override {
    return base_->finite_chain(theta);
  }
  std::vector<Eigen::MatrixXd> transition_gradient(Theta theta) const override {
    return base_->transition_gradient(theta);
  }

 private:
  ModelSpec base_;
  SummaryStatistic summary_;
};

}  // namespace

ModelSpec summarize_model(const ModelSpec& model, const SummaryStatistic& summary) {
  return std::make_shared<SummarizedModel>(model, summary);
}

}  // namespace abc_hmm
