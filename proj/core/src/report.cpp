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

#include "abc_hmm/report.hpp"

#include <cmath>
#include <ostream>

#include <json.hpp>

#include "abc_hmm/csv.hpp"

namespace abc_hmm {

namespace {

using Json = nlohmann::ordered_json;

Json number(double v) {
  if (std::isfinite(v)) {
    return v;
  }
  return format_double(v);
}

Json numbers(std::span<const double> values) {
  Json out = Json::array();
  for (const double v : values) {
    out.push_back(number(v));
  }
  return out;
}

Json matrix(const Eigen::MatrixXd& m) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      row.push_back(number(m(i, j)));
    }
    out.push_back(row);
  }
  return out;
}

template <typename T>
Json optional_value(const std::optional<T>& v) {
  if (!v) {
    return nullptr;
  }
  if constexpr (std::is_floating_point_v<T>) {
    return number(*v);
  } else {
    return *v;
  }
}

std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

}  // namespace

std::string to_json(const LikelihoodEstimate& estimate) {
  Json doc;
  doc["log_value"] = number(estimate.log_value);
  doc["log_density"] = number(estimate.log_density());
  doc["log_normalizer"] = number(estimate.log_normalizer);
  doc["se_proxy"] = number(estimate.se_proxy);
  doc["collapsed_at"] = optional_value(estimate.collapsed_at);
  doc["n"] = estimate.n;
  doc["particles"] = estimate.particles;
  doc["epsilon"] = number(estimate.epsilon);
  doc["seed"] = estimate.seed;
  doc["resampling"] = estimate.resampling.to_string();
  doc["step_acceptance"] = numbers(estimate.step_acceptance);
  doc["ess_trace"] = numbers(estimate.ess_trace);
  return dump(doc);
}

std::string to_json(const EstimateResult& result) {
  Json doc;
  doc["method"] = to_string(result.method);
  doc["parameter_names"] = result.parameter_names;
  doc["theta_hat"] = numbers(result.theta_hat.values());
  doc["objective_value"] = number(result.objective_value);
  doc["failures"] = result.failures;
  doc["evaluations"] = result.trace.size();
  Json settings;
  settings["epsilon"] = number(result.settings.epsilon);
  settings["kernel"] = result.settings.kernel;
  settings["particles"] = result.settings.particles;
  settings["n"] = result.settings.n;
  settings["seed"] = result.settings.seed;
  settings["noise_seed"] = optional_value(result.settings.noise_seed);
  settings["optimizer"] = result.settings.optimizer;
  settings["objective"] = result.settings.objective;
  settings["resampling"] = result.settings.resampling;
  doc["settings"] = settings;
  Json trace = Json::array();
  for (const auto& entry : result.trace) {
    Json item;
    item["theta"] = numbers(entry.theta);
    item["value"] = number(entry.value);
    item["se"] = number(entry.se);
    trace.push_back(item);
  }
  doc["trace"] = trace;
  doc["csv_schema_version"] = kResultCsvSchemaVersion;
  return dump(doc);
}

std::string to_json(const FisherEstimate& estimate) {
  Json doc;
  doc["matrix"] = matrix(estimate.matrix);
  doc["se_matrix"] = matrix(estimate.se_matrix);
  doc["n_used"] = estimate.n_used;
  doc["replicates"] = estimate.replicates;
  doc["epsilon"] = optional_value(estimate.epsilon);
  doc["kernel"] = estimate.epsilon ? Json(estimate.kernel) : Json(nullptr);
  doc["csv_schema_version"] = kResultCsvSchemaVersion;
  return dump(doc);
}

std::string to_json(const InformationLossCurve& curve) {
  Json doc;
  doc["information"] = matrix(curve.information);
  doc["information_se"] = matrix(curve.information_se);
  doc["information_norm"] = number(curve.information_norm);
  doc["small_eps_slope"] = optional_value(curve.small_eps_slope);
  doc["slope_fit_points"] = std::min<std::size_t>(4, curve.points.size());
  doc["slope_reliable"] = curve.slope_reliable;
  doc["large_eps_slope"] = optional_value(curve.large_eps_slope);
  doc["n_used"] = curve.n_used;
  doc["replicates"] = curve.replicates;
  doc["kernel"] = curve.kernel;
  Json points = Json::array();
  for (const auto& p : curve.points) {
    Json item;
    item["epsilon"] = number(p.epsilon);
    item["loss"] = matrix(p.loss);
    item["loss_se"] = matrix(p.loss_se);
    item["loss_norm"] = number(p.loss_norm);
    item["loss_norm_se"] = number(p.loss_norm_se);
    item["min_eigenvalue"] = number(p.min_eigenvalue);
    item["min_eigenvalue_se"] = number(p.min_eigenvalue_se);
    item["perturbed_norm"] = number(p.perturbed_norm);
    item["perturbed_norm_se"] = number(p.perturbed_norm_se);
    points.push_back(item);
  }
  doc["points"] = points;
  doc["csv_schema_version"] = kResultCsvSchemaVersion;
  return dump(doc);
}

std::string to_json(const MissingInformationReport& report) {
  Json doc;
  doc["epsilon"] = number(report.epsilon);
  doc["horizon"] = report.horizon;
  doc["windows"] = report.windows;
  doc["window_rho"] = number(report.window_rho);
  doc["truncation_bound"] = number(report.truncation_bound);
  doc["missing"] = matrix(report.missing);
  doc["missing_se"] = matrix(report.missing_se);
  doc["direct"] = matrix(report.direct);
  doc["direct_se"] = matrix(report.direct_se);
  doc["information"] = matrix(report.information);
  doc["missing_norm"] = number(report.missing_norm);
  doc["direct_norm"] = number(report.direct_norm);
  doc["information_norm"] = number(report.information_norm);
  doc["max_z"] = number(report.max_z);
  doc["agrees"] = report.agrees();
  return dump(doc);
}

void write_trace_csv(const EstimateResult& result, std::ostream& out) {
  std::vector<std::string> row{"index"};
  for (const auto& name : result.parameter_names) {
    row.push_back(name);
  }
  row.emplace_back("objective");
  row.emplace_back("se");
  write_csv_row(out, row);
  for (std::size_t i = 0; i < result.trace.size(); ++i) {
    row.assign({std::to_string(i)});
    for (const double v : result.trace[i].theta) {
      row.push_back(format_double(v));
    }
    row.push_back(format_double(result.trace[i].value));
    row.push_back(format_double(result.trace[i].se));
    write_csv_row(out, row);
  }
}

void write_fisher_csv(const FisherEstimate& estimate, std::ostream& out) {
  write_csv_row(out, {"row", "col", "value", "se"});
  for (Eigen::Index i = 0; i < estimate.matrix.rows(); ++i) {
    for (Eigen::Index j = 0; j < estimate.matrix.cols(); ++j) {
      write_csv_row(out, {std::to_string(i), std::to_string(j),
                          format_double(estimate.matrix(i, j)),
                          format_double(estimate.se_matrix(i, j))});
    }
  }
}

void write_loss_curve_csv(const InformationLossCurve& curve, std::ostream& out) {
  write_csv_row(out, {"epsilon", "loss", "se", "min_eigenvalue", "min_eigenvalue_se",
                      "perturbed_norm", "perturbed_norm_se"});
  for (const auto& p : curve.points) {
    write_csv_row(out, {format_double(p.epsilon), format_double(p.loss_norm),
                        format_double(p.loss_norm_se), format_double(p.min_eigenvalue),
                        format_double(p.min_eigenvalue_se), format_double(p.perturbed_norm),
                        format_double(p.perturbed_norm_se)});
  }
}

}  // namespace abc_hmm
