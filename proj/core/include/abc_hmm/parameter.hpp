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

#ifndef ABC_HMM_PARAMETER_HPP
#define ABC_HMM_PARAMETER_HPP

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace abc_hmm {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  [[nodiscard]] double width() const noexcept { return hi - lo; }
  [[nodiscard]] bool contains(double x) const noexcept { return x >= lo && x <= hi; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Compact parameter space: a product of closed intervals.
class Box {
 public:
  Box() = default;
  Box(std::initializer_list<Interval> bounds);
  explicit Box(std::vector<Interval> bounds);

  [[nodiscard]] std::size_t dim() const noexcept { return bounds_.size(); }
  [[nodiscard]] const Interval& operator[](std::size_t i) const { return bounds_.at(i); }
  [[nodiscard]] const std::vector<Interval>& bounds() const noexcept { return bounds_; }

  [[nodiscard]] bool contains(std::span<const double> values) const noexcept;
  [[nodiscard]] std::vector<double> clamp(std::span<const double> values) const;
  [[nodiscard]] std::vector<double> center() const;

  friend bool operator==(const Box&, const Box&) = default;

 private:
  std::vector<Interval> bounds_;
};

/// A point theta of the compact parameter box. Construction enforces both invariants.
class ParameterVector {
 public:
  /// Throws DomainError if the dimensions disagree, d = 0, or a coordinate lies outside the box.
  ParameterVector(std::vector<double> values, Box box);

  [[nodiscard]] std::size_t dim() const noexcept { return values_.size(); }
  [[nodiscard]] double operator[](std::size_t i) const { return values_.at(i); }
  [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
  [[nodiscard]] const Box& box() const noexcept { return box_; }

  /// Same box, new coordinates.
  [[nodiscard]] ParameterVector with_values(std::vector<double> values) const;

  [[nodiscard]] std::string to_string() const;

 private:
  std::vector<double> values_;
  Box box_;
};

}  // namespace abc_hmm

#endif  // ABC_HMM_PARAMETER_HPP
