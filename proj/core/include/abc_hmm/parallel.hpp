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

#ifndef ABC_HMM_PARALLEL_HPP
#define ABC_HMM_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace abc_hmm {

/// Worker count used when a caller passes threads = 0: the ABC_HMM_THREADS environment
/// variable if set to a positive integer, otherwise the hardware concurrency.
std::size_t default_thread_count();

/// Runs body(i) for i in [0, count) on up to `threads` workers (0 = default_thread_count()).
/// Iterations must write to disjoint outputs. The first exception thrown by any iteration is
/// rethrown after all workers finish.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body,
                  std::size_t threads = 0);

}  // namespace abc_hmm

#endif  // ABC_HMM_PARALLEL_HPP
