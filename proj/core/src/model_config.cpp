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

#include "abc_hmm/model_config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "abc_hmm/builtin_models.hpp"
#include "abc_hmm/errors.hpp"

namespace abc_hmm {

LoadedModel parse_model_config(std::string_view json_text) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError("config", std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) {
    throw ConfigError("config", "must be a JSON object");
  }
  for (const auto& item : doc.items()) {
    if (item.key() != "model" && item.key() != "hyper" && item.key() != "theta_box") {
      throw ConfigError(item.key(), "unknown model-config key");
    }
  }
  if (!doc.contains("model") || !doc.at("model").is_string()) {
    throw ConfigError("model", "missing or not a string");
  }
  json hyper = doc.value("hyper", json::object());
  if (!hyper.is_object()) {
    throw ConfigError("hyper", "must be a JSON object");
  }
  if (doc.contains("theta_box")) {
    if (!doc.at("theta_box").is_array()) {
      throw ConfigError("theta_box", "must be an array of [lo, hi] pairs");
    }
    hyper["theta_box"] = doc.at("theta_box");
  }
  LoadedModel loaded;
  loaded.name = doc.at("model").get<std::string>();
  loaded.model = builtin_model(loaded.name, hyper.dump());
  loaded.box = loaded.model->default_box();
  loaded.canonical_json = doc.dump();
  return loaded;
}

LoadedModel load_model_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("config", "cannot open '" + path.string() + "'");
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_model_config(buffer.str());
}

}  // namespace abc_hmm
