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

#ifndef MPB_PARTITION_H_
#define MPB_PARTITION_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mpb/dop.h"

namespace mpb {

// Parameters of the partition map. `c` is indexed by depth (0..K); every
// entry lies in [0, 1/K].
struct PartitionParams {
  std::vector<double> c;
  double eps = 0.0;
  double delta = 0.0;
  // When false the top-m early exit and its padding layer are skipped, which
  // gives the older single-skeleton partition.
  bool early_exit = true;
};

// Throws std::invalid_argument unless params are usable with k arms.
void ValidateParams(const PartitionParams& params, int k);

// Which rule produced the output vertex.
enum class ExitLine {
  kBlueRegion,  // top-m gap at least delta + eps: returned P_*(x)
  kPadding,     // top-m gap within the padding band at the current vertex
  kSkeleton,    // some ancestor split sits close to its threshold
  kLeaf,        // descended all the way to a leaf
};

std::string ExitLineName(ExitLine line);

enum class TraceEvent {
  kBlueCheck,
  kPaddingCheck,
  kSkeletonHit,
  kDescend,
  kReturn,
};

std::string TraceEventName(TraceEvent event);

struct TraceEntry {
  TraceEvent event;
  Dop vertex;
  double quantity;
};

struct PartitionResult {
  Dop vertex;
  ExitLine exit;
};

// The partition map [0,1]^K -> tree vertices. Non-strict comparisons
// throughout. When `trace` is non-null the checks performed are appended
// to it.
PartitionResult Partition(std::span<const double> x,
                          const PartitionParams& params, int m,
                          std::vector<TraceEntry>* trace = nullptr);

inline Dop PartitionMap(std::span<const double> x,
                        const PartitionParams& params, int m) {
  return Partition(x, params, m).vertex;
}

// First sorted-prefix child of p (ascending split size) whose gap is at
// least `threshold`. Exists whenever threshold <= RangeOf(p, x) / K.
std::optional<Dop> LargeCutChild(const Dop& p, std::span<const double> x,
                                 double threshold);

}  // namespace mpb

#endif  // MPB_PARTITION_H_
