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

#include "abc_hmm/trajectory_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "abc_hmm/csv.hpp"
#include "abc_hmm/errors.hpp"

namespace abc_hmm {

namespace {

std::filesystem::path with_suffix(const std::filesystem::path& stem, const char* suffix) {
  return std::filesystem::path(stem.string() + suffix);
}

}  // namespace

void write_trajectory_csv(const Trajectory& trajectory, std::ostream& out) {
  const std::size_t m = trajectory.obs_dim();
  const std::size_t p = trajectory.state_dim();
  std::vector<std::string> row{"t"};
  for (std::size_t i = 1; i <= m; ++i) {
    row.push_back("y_" + std::to_string(i));
  }
  if (trajectory.has_hidden()) {
    if (p == 1) {
      row.emplace_back("x");
    } else {
      for (std::size_t i = 1; i <= p; ++i) {
        row.push_back("x_" + std::to_string(i));
      }
    }
  }
  write_csv_row(out, row);
  for (std::size_t k = 0; k < trajectory.size(); ++k) {
    row.assign({std::to_string(k + 1)});
    for (const double y : trajectory.observation(k)) {
      row.push_back(format_double(y));
    }
    if (trajectory.has_hidden()) {
      for (const double x : trajectory.hidden_state(k)) {
        row.push_back(format_double(x));
      }
    }
    write_csv_row(out, row);
  }
}

std::string trajectory_meta_json(const Trajectory& trajectory) {
  const TrajectoryMeta& meta = trajectory.meta();
  nlohmann::ordered_json doc;
  doc["schema_version"] = kTrajectoryCsvSchemaVersion;
  doc["n"] = trajectory.size();
  doc["obs_dim"] = trajectory.obs_dim();
  doc["state_dim"] = trajectory.state_dim();
  doc["has_hidden"] = trajectory.has_hidden();
  doc["seed"] = meta.seed;
  doc["model"] = meta.model;
  auto theta = nlohmann::ordered_json::array();
  for (const double v : meta.theta) {
    theta.push_back(format_double(v));
  }
  doc["theta"] = theta;
  doc["noise_epsilon"] =
      meta.noise_epsilon ? nlohmann::ordered_json(format_double(*meta.noise_epsilon)) : nullptr;
  doc["noise_kernel"] = meta.noise_kernel ? nlohmann::ordered_json(*meta.noise_kernel) : nullptr;
  doc["summary"] = meta.summary ? nlohmann::ordered_json(*meta.summary) : nullptr;
  return doc.dump(2) + "\n";
}

void save_trajectory(const Trajectory& trajectory, const std::filesystem::path& stem) {
  if (stem.has_parent_path()) {
    std::filesystem::create_directories(stem.parent_path());
  }
  std::ofstream csv(with_suffix(stem, ".csv"), std::ios::binary);
  std::ofstream meta(with_suffix(stem, ".meta.json"), std::ios::binary);
  if (!csv || !meta) {
    throw ConfigError("output", "cannot write trajectory files at '" + stem.string() + "'");
  }
  write_trajectory_csv(trajectory, csv);
  meta << trajectory_meta_json(trajectory);
}

Trajectory parse_trajectory_csv(std::istream& in) {
  std::vector<std::string> header;
  if (!read_csv_row(in, header) || header.empty() || header[0] != "t") {
    throw DomainError("trajectory CSV: missing header row starting with 't'");
  }
  std::size_t m = 0;
  std::size_t p = 0;
  for (std::size_t i = 1; i < header.size(); ++i) {
    if (header[i].rfind("y_", 0) == 0) {
      if (p > 0) {
        throw DomainError("trajectory CSV: observation columns must precede hidden columns");
      }
      ++m;
    } else if (header[i] == "x" || header[i].rfind("x_", 0) == 0) {
      ++p;
    } else {
      throw DomainError("trajectory CSV: unknown column '" + header[i] + "'");
    }
  }
  if (m == 0) {
    throw DomainError("trajectory CSV: no observation columns");
  }
  std::vector<double> observations;
  std::vector<double> hidden;
  std::vector<std::string> row;
  while (read_csv_row(in, row)) {
    if (row.size() == 1 && row[0].empty()) {
      continue;
    }
    if (row.size() != header.size()) {
      throw DomainError("trajectory CSV: row has " + std::to_string(row.size()) +
                        " fields, header has " + std::to_string(header.size()));
    }
    for (std::size_t i = 0; i < m; ++i) {
      observations.push_back(parse_double(row[1 + i]));
    }
    for (std::size_t i = 0; i < p; ++i) {
      hidden.push_back(parse_double(row[1 + m + i]));
    }
  }
  std::optional<std::vector<double>> hidden_opt;
  if (p > 0) {
    hidden_opt = std::move(hidden);
  }
  return Trajectory(m, std::move(observations), std::move(hidden_opt), p > 0 ? p : 1);
}

Trajectory load_trajectory(const std::filesystem::path& stem) {
  std::filesystem::path csv_path = stem;
  if (stem.extension() == ".csv") {
    csv_path.replace_extension();
  }
  std::ifstream csv(with_suffix(csv_path, ".csv"), std::ios::binary);
  if (!csv) {
    throw ConfigError("data", "cannot open '" + with_suffix(csv_path, ".csv").string() + "'");
  }
  Trajectory trajectory = parse_trajectory_csv(csv);
  std::ifstream meta_in(with_suffix(csv_path, ".meta.json"), std::ios::binary);
  if (!meta_in) {
    return trajectory;
  }
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(meta_in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("data", std::string("invalid trajectory meta JSON: ") + e.what());
  }
  TrajectoryMeta& meta = trajectory.meta();
  meta.seed = doc.value("seed", std::uint64_t{0});
  meta.model = doc.value("model", std::string{});
  for (const auto& v : doc.value("theta", nlohmann::json::array())) {
    meta.theta.push_back(parse_double(v.get<std::string>()));
  }
  if (doc.contains("noise_epsilon") && !doc["noise_epsilon"].is_null()) {
    meta.noise_epsilon = parse_double(doc["noise_epsilon"].get<std::string>());
  }
  if (doc.contains("noise_kernel") && !doc["noise_kernel"].is_null()) {
    meta.noise_kernel = doc["noise_kernel"].get<std::string>();
  }
  if (doc.contains("summary") && !doc["summary"].is_null()) {
    meta.summary = doc["summary"].get<std::string>();
  }
  return trajectory;
}

}  // namespace abc_hmm
