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

#include "abc_hmm/parameter.hpp"

#include <algorithm>
#include <sstream>

#include "abc_hmm/errors.hpp"

namespace abc_hmm {
namespace {

void validate_bounds(const std::vector<Interval>& bounds) {
  for (const auto& interval : bounds) {
    if (!(interval.lo <= interval.hi)) {
      throw DomainError("Box: interval lower bound exceeds upper bound");
    }
  }
}

}  // namespace

Box::Box(std::initializer_list<Interval> bounds) : bounds_(bounds) { validate_bounds(bounds_); }

Box::Box(std::vector<Interval> bounds) : bounds_(std::move(bounds)) { validate_bounds(bounds_); }

bool Box::contains(std::span<const double> values) const noexcept {
  if (values.size() != bounds_.size()) {
    return false;
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!bounds_[i].contains(values[i])) {
      return false;
    }
  }
  return true;
}

std::vector<double> Box::clamp(std::span<const double> values) const {
  std::vector<double> out(values.begin(), values.end());
  for (std::size_t i = 0; i < out.size() && i < bounds_.size(); ++i) {
    out[i] = std::clamp(out[i], bounds_[i].lo, bounds_[i].hi);
  }
  return out;
}

std::vector<double> Box::center() const {
  std::vector<double> out;
  out.reserve(bounds_.size());
  for (const auto& interval : bounds_) {
    out.push_back(0.5 * (interval.lo + interval.hi));
  }
  return out;
}

ParameterVector::ParameterVector(std::vector<double> values, Box box)
    : values_(std::move(values)), box_(std::move(box)) {
  if (values_.empty()) {
    throw DomainError("ParameterVector: dimension must be at least 1");
  }
  if (values_.size() != box_.dim()) {
    throw DomainError("ParameterVector: " + std::to_string(values_.size()) +
                      " values for a box of dimension " + std::to_string(box_.dim()));
  }
  if (!box_.contains(values_)) {
    throw DomainError("ParameterVector: " + to_string() + " lies outside its box");
  }
}

ParameterVector ParameterVector::with_values(std::vector<double> values) const {
  return ParameterVector(std::move(values), box_);
}

std::string ParameterVector::to_string() const {
  std::ostringstream out;
  out.precision(17);
  out << '(';
  for (std::size_t i = 0; i < values_.size(); ++i) {
    out << (i ? ", " : "") << values_[i];
  }
  out << ')';
  return out.str();
}

}  // namespace abc_hmm
