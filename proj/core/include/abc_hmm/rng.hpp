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

#ifndef ABC_HMM_RNG_HPP
#define ABC_HMM_RNG_HPP

#include <array>
#include <cstdint>
#include <limits>
#include <random>

namespace abc_hmm {

/// Purpose tags separating the random streams used by different parts of the library.
enum class StreamTag : std::uint64_t {
  kSimulate = 1,
  kNoise = 2,
  kSmcPropagate = 3,
  kSmcResample = 4,
  kFisherData = 5,
  kFisherNoise = 6,
  kOptimizer = 7,
  kReplicate = 8,
  kWindow = 9,
  kUser = 100,
};

/// Identifies one random stream: (master seed, purpose, index, step).
///
/// `index` is typically a particle, replicate or parameter-candidate index and
/// `step` a time index. Two keys that differ in any field address different
/// Philox blocks, so their streams never coincide.
struct StreamKey {
  std::uint64_t seed = 0;
  StreamTag tag = StreamTag::kUser;
  std::uint64_t index = 0;
  std::uint64_t step = 0;

  friend bool operator==(const StreamKey&, const StreamKey&) = default;
};

/// Counter-based generator (Philox4x64-10) keyed by a StreamKey.
///
/// The Philox key is (seed, tag) and the 256-bit counter is (index, step, 0, block).
/// Construction is cheap, so per-particle, per-step generators are the intended use.
/// Satisfies UniformRandomBitGenerator.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(const StreamKey& key) noexcept;

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept;

  /// Uniform on [0, 1) with 53 random bits.
  double uniform01() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  /// Uniform on (0, 1).
  double uniform_open() noexcept {
    return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Uniform on [lo, hi).
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform01(); }

  /// Standard normal draw.
  double normal() noexcept;

  /// Standard exponential draw.
  double exponential() noexcept;

 private:
  void refill() noexcept;

  std::array<std::uint64_t, 2> key_{};
  std::array<std::uint64_t, 4> counter_{};
  std::array<std::uint64_t, 4> block_{};
  unsigned position_ = 4;
  std::normal_distribution<double> normal_{};
};

/// Derives a child seed from a parent seed; used to hand independent seeds to sub-procedures.
std::uint64_t derive_seed(std::uint64_t seed, StreamTag tag, std::uint64_t index) noexcept;

}  // namespace abc_hmm

#endif  // ABC_HMM_RNG_HPP
