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

#ifndef MPB_STRATEGY_H_
#define MPB_STRATEGY_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mpb/dop.h"
#include "mpb/partition.h"
#include "mpb/schedule.h"

namespace mpb {

struct Decision {
  Arm arm = 0;
  // Vertex looked up in the partition; empty during warm-up.
  std::optional<Dop> vertex;
  ExitLine exit = ExitLine::kLeaf;
  // a_set | b_set of the vertex (all arms during warm-up).
  ArmMask relevant = 0;
};

// One player of the decentralized strategy. Players never exchange state:
// they share only the seed-derived thresholds, offsets and priorities.
class Player {
 public:
  // `id` is the 0-based player index, which is also its coloring slot.
  Player(int id, int m, const Schedule& schedule, std::vector<double> c,
         bool early_exit = true);

  // Chooses the arm at time t >= 1 given the shared priority for t.
  Decision Act(std::int64_t t, std::span<const Arm> priority);

  // Records the bit observed on `arm`.
  void Observe(Arm arm, int y);

  int id() const { return id_; }
  int num_arms() const { return k_; }
  const std::vector<std::int64_t>& counts() const { return n_; }
  const std::vector<std::int64_t>& rewards() const { return r_; }
  const std::vector<double>& means() const { return q_; }
  const std::vector<std::int64_t>& relevant_counts() const { return big_n_; }
  const PartitionParams& params() const { return params_; }

  // Empirical mean used before an arm's first pull.
  static constexpr double kUnsampledMean = 0.5;

 private:
  int id_;
  int k_;
  int m_;
  const Schedule* schedule_;
  PartitionParams params_;
  std::vector<std::int64_t> n_;
  std::vector<std::int64_t> r_;
  std::vector<double> q_;
  std::vector<std::int64_t> big_n_;
};

// Round-robin warm-up arm for 0-based player `id` at time t.
inline Arm WarmupArm(int id, std::int64_t t, int k) {
  return static_cast<Arm>((id + t) % k);
}

}  // namespace mpb

#endif  // MPB_STRATEGY_H_
