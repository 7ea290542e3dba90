// Copyright 2026 The mpb Authors. All rights reserved.
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

#ifndef MPB_STREAMS_H_
#define MPB_STREAMS_H_

#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

#include "mpb/arms.h"
#include "mpb/random.h"

namespace mpb {

// Substreams of the shared seed. Every player derives the same values from
// the same seed, so nothing is ever communicated.
inline constexpr std::uint64_t kThresholdStream = 1;
inline constexpr std::uint64_t kOffsetStream = 2;
inline constexpr std::uint64_t kPriorityStream = 3;
// Instance sampling in sweeps.
inline constexpr std::uint64_t kInstanceStream = 4;

// Depth-keyed cut thresholds c(0..k), i.i.d. uniform on [0, 1/k].
inline std::vector<double> SharedThresholds(std::uint64_t shared_seed, int k) {
  SplitMix64 rng(MixSeed(shared_seed, kThresholdStream));
  std::vector<double> c(k + 1);
  for (double& v : c) v = UniformDouble(rng) / k;
  return c;
}

// The uniformly random priority order used at time t.
inline void SharedPriority(std::uint64_t shared_seed, std::int64_t t,
                           std::span<Arm> out) {
  SplitMix64 rng(MixSeed(MixSeed(shared_seed, kPriorityStream),
                         static_cast<std::uint64_t>(t)));
  std::iota(out.begin(), out.end(), 0);
  Shuffle(out, rng);
}

}  // namespace mpb

#endif  // MPB_STREAMS_H_
