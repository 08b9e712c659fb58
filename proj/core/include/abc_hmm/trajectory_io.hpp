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

#ifndef ABC_HMM_TRAJECTORY_IO_HPP
#define ABC_HMM_TRAJECTORY_IO_HPP

#include <filesystem>
#include <iosfwd>
#include <string>

#include "abc_hmm/trajectory.hpp"

namespace abc_hmm {

inline constexpr int kTrajectoryCsvSchemaVersion = 1;

/// CSV with header `t,y_1..y_m[,x | x_1..x_p]`, numbers at 17 significant digits.
void write_trajectory_csv(const Trajectory& trajectory, std::ostream& out);

/// JSON sidecar describing the trajectory's provenance.
std::string trajectory_meta_json(const Trajectory& trajectory);

/// Writes `<stem>.csv` and `<stem>.meta.json`.
void save_trajectory(const Trajectory& trajectory, const std::filesystem::path& stem);

/// Reads a trajectory written by save_trajectory. The sidecar is optional.
/// Throws ConfigError on malformed input.
Trajectory load_trajectory(const std::filesystem::path& stem);

/// Parses the CSV body only (no provenance).
Trajectory parse_trajectory_csv(std::istream& in);

}  // namespace abc_hmm

#endif  // ABC_HMM_TRAJECTORY_IO_HPP
