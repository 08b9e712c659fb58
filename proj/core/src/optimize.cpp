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

#include "abc_hmm/optimize.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>

#include "abc_hmm/errors.hpp"
#include "abc_hmm/parallel.hpp"
#include "abc_hmm/rng.hpp"

namespace abc_hmm {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

class Recorder {
 public:
  Recorder(const Objective& objective, const Box& box, std::size_t max_evaluations)
      : objective_(objective), box_(box), max_evaluations_(max_evaluations) {}

  double evaluate(std::vector<double> theta) {
    theta = box_.clamp(theta);
    ObjectiveValue v = objective_(theta);
    if (std::isnan(v.value)) {
      v.value = kNegInf;
    }
    trace_.push_back({std::move(theta), v.value, v.se});
    return v.value;
  }

  void evaluate_batch(const std::vector<std::vector<double>>& points, std::size_t threads) {
    std::vector<ObjectiveValue> values(points.size());
    std::vector<std::vector<double>> clamped(points.size());
    parallel_for(
        points.size(),
        [&](std::size_t i) {
          clamped[i] = box_.clamp(points[i]);
          values[i] = objective_(clamped[i]);
          if (std::isnan(values[i].value)) {
            values[i].value = kNegInf;
          }
        },
        threads);
    for (std::size_t i = 0; i < points.size(); ++i) {
      trace_.push_back({std::move(clamped[i]), values[i].value, values[i].se});
    }
  }

  [[nodiscard]] bool exhausted() const { return trace_.size() >= max_evaluations_; }
  std::vector<TraceEntry>& trace() { return trace_; }

 private:
  const Objective& objective_;
  const Box& box_;
  std::size_t max_evaluations_;
  std::vector<TraceEntry> trace_;
};

std::vector<std::vector<double>> axis_points(const Box& box, const OptimizerSpec& spec) {
  std::vector<std::vector<double>> axes(box.dim());
  for (std::size_t j = 0; j < box.dim(); ++j) {
    const Interval& iv = box[j];
    if (iv.width() == 0.0) {
      axes[j] = {iv.lo};
      continue;
    }
    if (spec.grid_step > 0.0) {
      const auto count =
          static_cast<std::size_t>(std::floor(iv.width() / spec.grid_step + 1e-9)) + 1;
      for (std::size_t i = 0; i < count; ++i) {
        axes[j].push_back(std::min(iv.lo + static_cast<double>(i) * spec.grid_step, iv.hi));
      }
    } else {
      const std::size_t count = std::max<std::size_t>(spec.grid_points, 2);
      for (std::size_t i = 0; i < count; ++i) {
        axes[j].push_back(iv.lo + iv.width() * static_cast<double>(i) /
                                      static_cast<double>(count - 1));
      }
    }
  }
  return axes;
}

void run_grid(Recorder& recorder, const Box& box, const OptimizerSpec& spec) {
  const auto axes = axis_points(box, spec);
  std::size_t total = 1;
  for (const auto& axis : axes) {
    total *= axis.size();
  }
  std::vector<std::vector<double>> points;
  points.reserve(total);
  std::vector<std::size_t> index(box.dim(), 0);
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::vector<double> theta(box.dim());
    for (std::size_t j = 0; j < box.dim(); ++j) {
      theta[j] = axes[j][index[j]];
    }
    points.push_back(std::move(theta));
    for (std::size_t j = box.dim(); j-- > 0;) {
      if (++index[j] < axes[j].size()) {
        break;
      }
      index[j] = 0;
    }
  }
  recorder.evaluate_batch(points, spec.threads);
}

std::size_t best_index(const std::vector<TraceEntry>& trace) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < trace.size(); ++i) {
    if (trace[i].value > trace[best].value) {
      best = i;
    }
  }
  return best;
}

/// Golden-section maximisation of coordinate j on [lo, hi], starting from `theta`.
void golden_line(Recorder& recorder, std::vector<double>& theta, double& value, std::size_t j,
                 double lo, double hi, double tolerance) {
  constexpr double kInvPhi = 0.6180339887498948482;
  double a = lo;
  double b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  auto at = [&](double x) {
    std::vector<double> point = theta;
    point[j] = x;
    return recorder.evaluate(std::move(point));
  };
  double fc = at(c);
  double fd = at(d);
  while (b - a > tolerance && !recorder.exhausted()) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = at(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = at(d);
    }
  }
  const double x = fc >= fd ? c : d;
  const double fx = std::max(fc, fd);
  if (fx > value) {
    theta[j] = x;
    value = fx;
  }
}

void run_golden(Recorder& recorder, const Box& box, const OptimizerSpec& spec) {
  const auto axes = axis_points(box, spec);
  const std::size_t start = best_index(recorder.trace());
  std::vector<double> theta = recorder.trace()[start].theta;
  double value = recorder.trace()[start].value;
  if (value == kNegInf) {
    return;
  }
  std::vector<double> half_width(box.dim());
  for (std::size_t j = 0; j < box.dim(); ++j) {
    half_width[j] = axes[j].size() > 1 ? box[j].width() / static_cast<double>(axes[j].size() - 1)
                                       : 0.0;
  }
  for (std::size_t sweep = 0; sweep < spec.sweeps && !recorder.exhausted(); ++sweep) {
    double largest_move = 0.0;
    for (std::size_t j = 0; j < box.dim() && !recorder.exhausted(); ++j) {
      if (half_width[j] == 0.0) {
        continue;
      }
      const double before = theta[j];
      const double lo = std::max(box[j].lo, theta[j] - half_width[j]);
      const double hi = std::min(box[j].hi, theta[j] + half_width[j]);
      golden_line(recorder, theta, value, j, lo, hi, spec.tolerance);
      const double move = std::abs(theta[j] - before);
      largest_move = std::max(largest_move, move);
      half_width[j] = std::min(half_width[j], std::max(4.0 * move, 10.0 * spec.tolerance));
    }
    if (largest_move <= spec.tolerance) {
      break;
    }
  }
}

void run_nelder_mead(Recorder& recorder, const Box& box, const OptimizerSpec& spec) {
  const std::size_t d = box.dim();
  const std::size_t restarts = std::max<std::size_t>(spec.restarts, 1);
  // Latin-hypercube starts: one stratum per restart on each coordinate, strata permuted.
  Rng rng(StreamKey{spec.seed, StreamTag::kOptimizer, 0, 0});
  std::vector<std::vector<std::size_t>> strata(d, std::vector<std::size_t>(restarts));
  for (auto& perm : strata) {
    std::iota(perm.begin(), perm.end(), 0);
    for (std::size_t i = restarts; i > 1; --i) {
      std::swap(perm[i - 1], perm[static_cast<std::size_t>(rng.uniform01() * i)]);
    }
  }
  for (std::size_t r = 0; r < restarts && !recorder.exhausted(); ++r) {
    std::vector<double> start(d);
    for (std::size_t j = 0; j < d; ++j) {
      const double u = (static_cast<double>(strata[j][r]) + rng.uniform01()) /
                       static_cast<double>(restarts);
      start[j] = box[j].lo + u * box[j].width();
    }
    std::vector<std::vector<double>> simplex{start};
    for (std::size_t j = 0; j < d; ++j) {
      std::vector<double> vertex = start;
      const double step = 0.1 * box[j].width();
      vertex[j] = vertex[j] + step <= box[j].hi ? vertex[j] + step : vertex[j] - step;
      simplex.push_back(box.clamp(vertex));
    }
    std::vector<double> values;
    for (const auto& v : simplex) {
      values.push_back(recorder.evaluate(v));
    }
    std::vector<std::size_t> order(d + 1);
    while (!recorder.exhausted()) {
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
      double size = 0.0;
      for (std::size_t i = 1; i <= d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
          size = std::max(size, std::abs(simplex[order[i]][j] - simplex[order[0]][j]));
        }
      }
      const double spread = values[order[0]] - values[order[d]];
      if (size <= spec.tolerance && (spread <= spec.tolerance || std::isnan(spread))) {
        break;
      }
      std::vector<double> centroid(d, 0.0);
      for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
          centroid[j] += simplex[order[i]][j] / static_cast<double>(d);
        }
      }
      const std::size_t worst = order[d];
      auto along = [&](double t) {
        std::vector<double> p(d);
        for (std::size_t j = 0; j < d; ++j) {
          p[j] = centroid[j] + t * (simplex[worst][j] - centroid[j]);
        }
        return box.clamp(p);
      };
      const auto reflected = along(-1.0);
      const double fr = recorder.evaluate(reflected);
      if (fr > values[order[0]]) {
        const auto expanded = along(-2.0);
        const double fe = recorder.evaluate(expanded);
        if (fe > fr) {
          simplex[worst] = expanded;
          values[worst] = fe;
        } else {
          simplex[worst] = reflected;
          values[worst] = fr;
        }
        continue;
      }
      if (fr > values[order[d - 1]]) {
        simplex[worst] = reflected;
        values[worst] = fr;
        continue;
      }
      const bool outside = fr > values[worst];
      const auto contracted = along(outside ? -0.5 : 0.5);
      const double fc = recorder.evaluate(contracted);
      if (fc > std::max(fr, values[worst]) || (fc >= values[worst] && !outside)) {
        simplex[worst] = contracted;
        values[worst] = fc;
        continue;
      }
      const auto best = simplex[order[0]];
      for (std::size_t i = 1; i <= d; ++i) {
        auto& v = simplex[order[i]];
        for (std::size_t j = 0; j < d; ++j) {
          v[j] = best[j] + 0.5 * (v[j] - best[j]);
        }
        values[order[i]] = recorder.evaluate(v);
      }
    }
  }
}

std::size_t parse_count(const std::string& text, const std::string& what) {
  try {
    const long value = std::stol(text);
    if (value <= 0) {
      throw std::out_of_range("non-positive");
    }
    return static_cast<std::size_t>(value);
  } catch (const std::exception&) {
    throw ConfigError("optimizer", "bad " + what + " '" + text + "'");
  }
}

}  // namespace

std::string OptimizerSpec::to_string() const {
  switch (kind) {
    case OptimizerKind::kGrid:
      if (grid_step > 0.0) {
        char buffer[32];
        const auto end = std::to_chars(buffer, buffer + sizeof(buffer), grid_step).ptr;
        return "grid:" + std::string(buffer, end);
      }
      return "grid";
    case OptimizerKind::kGridThenGolden:
      return "grid_then_golden:" + std::to_string(sweeps);
    case OptimizerKind::kNelderMead:
      return "nelder_mead:" + std::to_string(restarts);
  }
  return "unknown";
}

OptimizerSpec default_optimizer(std::size_t dim) {
  OptimizerSpec spec;
  if (dim > 2) {
    spec.kind = OptimizerKind::kNelderMead;
    spec.restarts = 5;
  }
  return spec;
}

OptimizerSpec parse_optimizer(const std::string& text, std::size_t dim) {
  OptimizerSpec spec = default_optimizer(dim);
  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : text.substr(colon + 1);
  if (head == "grid") {
    spec.kind = OptimizerKind::kGrid;
    if (!arg.empty()) {
      try {
        spec.grid_step = std::stod(arg);
      } catch (const std::exception&) {
        throw ConfigError("optimizer", "bad grid step '" + arg + "'");
      }
      if (!(spec.grid_step > 0.0)) {
        throw ConfigError("optimizer", "grid step must be positive");
      }
    }
  } else if (head == "grid_then_golden") {
    spec.kind = OptimizerKind::kGridThenGolden;
    if (!arg.empty()) {
      spec.sweeps = parse_count(arg, "sweep count");
    }
  } else if (head == "nelder_mead") {
    spec.kind = OptimizerKind::kNelderMead;
    if (!arg.empty()) {
      spec.restarts = parse_count(arg, "restart count");
    }
  } else {
    throw ConfigError("optimizer", "unknown optimizer '" + head + "'");
  }
  return spec;
}

OptimizeResult maximize(const Objective& objective, const Box& box, const OptimizerSpec& spec) {
  if (box.dim() == 0) {
    throw ConfigError("theta_box", "empty parameter box");
  }
  Recorder recorder(objective, box, spec.max_evaluations);
  switch (spec.kind) {
    case OptimizerKind::kGrid:
      run_grid(recorder, box, spec);
      break;
    case OptimizerKind::kGridThenGolden:
      run_grid(recorder, box, spec);
      run_golden(recorder, box, spec);
      break;
    case OptimizerKind::kNelderMead:
      run_nelder_mead(recorder, box, spec);
      break;
  }
  OptimizeResult result;
  result.trace = std::move(recorder.trace());
  for (const auto& entry : result.trace) {
    if (entry.value == kNegInf) {
      ++result.failures;
    }
  }
  if (result.failures == result.trace.size()) {
    throw EstimationFailed("every candidate parameter gave a collapsed objective",
                           result.trace.size(), result.failures);
  }
  const std::size_t best = best_index(result.trace);
  result.theta_hat = result.trace[best].theta;
  result.value = result.trace[best].value;
  result.se = result.trace[best].se;
  return result;
}

}  // namespace abc_hmm
