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

#ifndef ABC_HMM_MODEL_CONFIG_HPP
#define ABC_HMM_MODEL_CONFIG_HPP

#include <filesystem>
#include <string>
#include <string_view>

#include "abc_hmm/model.hpp"

namespace abc_hmm {

/// A model built from a `{"model": name, "hyper": {...}, "theta_box": [[lo, hi], ...]}` document.
struct LoadedModel {
  ModelSpec model;
  Box box;
  std::string name;
  /// Canonical (sorted-key) JSON of the document, suitable for hashing and manifests.
  std::string canonical_json;
};

/// Throws ConfigError naming the offending key.
LoadedModel parse_model_config(std::string_view json_text);

LoadedModel load_model_config(const std::filesystem::path& path);

}  // namespace abc_hmm

#endif  // ABC_HMM_MODEL_CONFIG_HPP
