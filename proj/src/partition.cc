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

#include "mpb/partition.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace mpb {

void ValidateParams(const PartitionParams& params, int k) {
  if (static_cast<int>(params.c.size()) != k + 1) {
    throw std::invalid_argument("c must hold one value per depth 0..K");
  }
  for (double v : params.c) {
    if (!(v >= 0.0 && v <= 1.0 / k)) {
      throw std::invalid_argument("c values must lie in [0, 1/K]");
    }
  }
  if (!(std::isfinite(params.eps) && params.eps > 0.0)) {
    throw std::invalid_argument("eps must be finite and positive");
  }
  if (!(std::isfinite(params.delta) && params.delta > 0.0)) {
    throw std::invalid_argument("delta must be finite and positive");
  }
}

std::string ExitLineName(ExitLine line) {
  switch (line) {
    case ExitLine::kBlueRegion:
      return "blue_region";
    case ExitLine::kPadding:
      return "padding";
    case ExitLine::kSkeleton:
      return "skeleton";
    case ExitLine::kLeaf:
      return "leaf";
  }
  return "unknown";
}

std::string TraceEventName(TraceEvent event) {
  switch (event) {
    case TraceEvent::kBlueCheck:
      return "blue_check";
    case TraceEvent::kPaddingCheck:
      return "padding_check";
    case TraceEvent::kSkeletonHit:
      return "skeleton_hit";
    case TraceEvent::kDescend:
      return "descend";
    case TraceEvent::kReturn:
      return "return";
  }
  return "unknown";
}

// Every vertex visited by the map has a_set equal to a prefix of the sorted
// order and b_set equal to the next contiguous run, so a vertex is fully
// described by the cut positions in sorted order and the depth each cut was
// made at.
class PartitionBuilder {
 public:
  struct Cut {
    int position;
    int index;
  };

  static Dop Build(int k, int m, std::span<const Arm> order,
                   std::span<const Cut> cuts) {
    std::array<Cut, kMaxArms> sorted;
    const int n = static_cast<int>(cuts.size());
    std::copy(cuts.begin(), cuts.end(), sorted.begin());
    std::sort(sorted.begin(), sorted.begin() + n,
              [](const Cut& a, const Cut& b) { return a.position < b.position; });
    Dop p(k, m);
    int begin = 0;
    for (int c = 0; c <= n; ++c) {
      const int end = c < n ? sorted[c].position : k;
      ArmMask block = 0;
      for (int i = begin; i < end; ++i) block |= ArmBit(order[i]);
      p.blocks_.push_back(block);
      if (c < n) p.inequalities_.push_back(static_cast<std::uint8_t>(sorted[c].index));
      begin = end;
    }
    return p;
  }
};

namespace {

using Cut = PartitionBuilder::Cut;

struct Interval {
  int lo;
  int hi;
};

}  // namespace

PartitionResult Partition(std::span<const double> x,
                          const PartitionParams& params, int m,
                          std::vector<TraceEntry>* trace) {
  const int k = static_cast<int>(x.size());
  if (k < 2 || k > kMaxArms || m < 1 || m >= k) {
    throw std::invalid_argument("need 1 <= m < k <= 64");
  }
  if (static_cast<int>(params.c.size()) != k + 1) {
    throw std::invalid_argument("c must hold one value per depth 0..K");
  }
  for (double v : x) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw std::invalid_argument("coordinates must lie in [0, 1]");
    }
  }

  std::array<Arm, kMaxArms> order;
  for (int i = 0; i < k; ++i) order[i] = i;
  // Stable insertion sort: decreasing x, ties by ascending arm index.
  for (int i = 1; i < k; ++i) {
    const Arm a = order[i];
    int j = i;
    while (j > 0 && x[order[j - 1]] < x[a]) {
      order[j] = order[j - 1];
      --j;
    }
    order[j] = a;
  }
  std::array<double, kMaxArms> xs;
  for (int i = 0; i < k; ++i) xs[i] = x[order[i]];
  const std::span<const Arm> sorted_arms(order.data(), k);

  std::array<Cut, kMaxArms> cuts;
  int num_cuts = 0;
  auto vertex = [&]() {
    return PartitionBuilder::Build(
        k, m, sorted_arms, std::span<const Cut>(cuts.data(), num_cuts));
  };
  auto record = [&](TraceEvent event, double quantity) {
    if (trace != nullptr) trace->push_back({event, vertex(), quantity});
  };

  const double top_gap = xs[m - 1] - xs[m];
  if (params.early_exit) {
    if (trace != nullptr) {
      const Cut star{m, 1};
      trace->push_back(
          {TraceEvent::kBlueCheck,
           PartitionBuilder::Build(k, m, sorted_arms,
                                   std::span<const Cut>(&star, 1)),
           top_gap});
    }
    if (top_gap >= params.delta + params.eps) {
      cuts[0] = {m, 1};
      num_cuts = 1;
      record(TraceEvent::kReturn, top_gap);
      return {vertex(), ExitLine::kBlueRegion};
    }
  }

  std::array<Interval, kMaxArms + 1> path;
  path[0] = {0, k};
  int depth = 0;
  while (path[depth].lo < m) {
    if (params.early_exit) {
      const double padding = params.delta - (depth + 2) * params.eps;
      record(TraceEvent::kPaddingCheck, top_gap - padding);
      if (top_gap >= padding) {
        record(TraceEvent::kReturn, top_gap);
        return {vertex(), ExitLine::kPadding};
      }
    }
    for (int dq = 0; dq <= depth; ++dq) {
      const Interval q = path[dq];
      const double threshold = params.c[dq] * (xs[q.lo] - xs[q.hi - 1]);
      const double width = (depth - dq + 1) * 6.0 * params.eps;
      for (int i = q.lo; i + 1 < q.hi; ++i) {
        const double gap = xs[i] - xs[i + 1];
        if (std::abs(gap - threshold) <= width) {
          record(TraceEvent::kSkeletonHit, gap - threshold);
          record(TraceEvent::kReturn, gap - threshold);
          return {vertex(), ExitLine::kSkeleton};
        }
      }
    }
    const Interval p = path[depth];
    const double threshold = params.c[depth] * (xs[p.lo] - xs[p.hi - 1]);
    int split = -1;
    for (int i = p.lo; i + 1 < p.hi; ++i) {
      if (xs[i] - xs[i + 1] >= threshold) {
        split = i + 1;
        break;
      }
    }
    if (split < 0) {
      // Only reachable with c above 1/K.
      throw std::logic_error("no child clears the cut threshold");
    }
    cuts[num_cuts++] = {split, depth + 1};
    ++depth;
    if (split <= m) {
      path[depth] = {split, p.hi};
    } else {
      path[depth] = {p.lo, split};
    }
    record(TraceEvent::kDescend, xs[split - 1] - xs[split]);
  }
  record(TraceEvent::kReturn, 0.0);
  return {vertex(), ExitLine::kLeaf};
}

std::optional<Dop> LargeCutChild(const Dop& p, std::span<const double> x,
                                 double threshold) {
  const ArmMask b = p.ab_sets().b_set;
  if (b == 0) throw std::invalid_argument("a leaf has no children");
  const std::vector<Arm> arms = SortedArms(x, b);
  ArmMask upper = 0;
  for (std::size_t j = 0; j + 1 < arms.size(); ++j) {
    upper |= ArmBit(arms[j]);
    Dop child = p.Split(upper);
    if (GapOf(child, x) >= threshold) return child;
  }
  return std::nullopt;
}

}  // namespace mpb
