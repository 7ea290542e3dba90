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

#include "mpb/strategy.h"

#include <stdexcept>
#include <utility>

#include "mpb/coloring.h"

namespace mpb {

Player::Player(int id, int m, const Schedule& schedule, std::vector<double> c,
               bool early_exit)
    : id_(id),
      k_(schedule.k),
      m_(m),
      schedule_(&schedule),
      n_(schedule.k, 0),
      r_(schedule.k, 0),
      q_(schedule.k, kUnsampledMean),
      big_n_(schedule.k, 0) {
  if (m < 1 || m >= k_) throw std::invalid_argument("need 1 <= m < k");
  if (id < 0 || id >= m) throw std::invalid_argument("player id out of range");
  params_.c = std::move(c);
  params_.early_exit = early_exit;
  // Placeholders so the params validate; both are reset every step.
  params_.eps = 1.0;
  params_.delta = 1.0;
  ValidateParams(params_, k_);
}

Decision Player::Act(std::int64_t t, std::span<const Arm> priority) {
  Decision d;
  if (t <= schedule_->warmup) {
    d.arm = WarmupArm(id_, t, k_);
    d.relevant = FullMask(k_);
  } else {
    for (std::int64_t count : n_) {
      if (count == 0) throw std::logic_error("arm left unsampled by warm-up");
    }
    params_.eps = schedule_->Epsilon(t);
    params_.delta = schedule_->DeltaAt(t);
    PartitionResult result = Partition(q_, params_, m_);
    d.arm = Color(result.vertex, priority)[id_];
    d.relevant = result.vertex.ab_sets().relevant();
    d.exit = result.exit;
    d.vertex = std::move(result.vertex);
  }
  for (ArmMask rest = d.relevant; rest != 0; rest &= rest - 1) {
    ++big_n_[std::countr_zero(rest)];
  }
  return d;
}

void Player::Observe(Arm arm, int y) {
  if (y != 0 && y != 1) throw std::invalid_argument("observation must be a bit");
  ++n_[arm];
  r_[arm] += y;
  q_[arm] = static_cast<double>(r_[arm]) / static_cast<double>(n_[arm]);
}

}  // namespace mpb
