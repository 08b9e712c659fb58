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

#ifndef ABC_HMM_ERRORS_HPP
#define ABC_HMM_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace abc_hmm {

/// Invalid or inconsistent configuration. `key()` names the offending setting.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string key, const std::string& message)
      : std::invalid_argument(key + ": " + message), key_(std::move(key)) {}

  [[nodiscard]] const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

/// A distribution or model parameter outside its admissible range.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An operation was called in a state it does not allow (e.g. noisifying twice).
class UsageError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// The model lacks a capability the operation needs (density, finite states, ...).
class UnsupportedModel : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Every candidate parameter produced a collapsed (minus infinity) objective.
class EstimationFailed : public std::runtime_error {
 public:
  EstimationFailed(const std::string& message, std::size_t evaluations, std::size_t collapsed)
      : std::runtime_error(message), evaluations_(evaluations), collapsed_(collapsed) {}

  [[nodiscard]] std::size_t evaluations() const noexcept { return evaluations_; }
  [[nodiscard]] std::size_t collapsed() const noexcept { return collapsed_; }

 private:
  std::size_t evaluations_;
  std::size_t collapsed_;
};

}  // namespace abc_hmm

#endif  // ABC_HMM_ERRORS_HPP
