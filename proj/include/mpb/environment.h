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

#ifndef MPB_ENVIRONMENT_H_
#define MPB_ENVIRONMENT_H_

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mpb/arms.h"
#include "mpb/random.h"

namespace mpb {

// Bernoulli means of the K arms and the number of players.
class Instance {
 public:
  Instance(std::vector<double> means, int m);

  // Plain text "K m p1 ... pK".
  static Instance Parse(std::string_view text);
  std::string ToString() const;

  int num_arms() const { return static_cast<int>(means_.size()); }
  int num_players() const { return m_; }
  const std::vector<double>& means() const { return means_; }
  double mean(Arm a) const { return means_[a]; }

  // m-th minus (m+1)-th largest mean.
  double Gap() const;
  // Sum of the m largest means.
  double TopMSum() const { return top_m_sum_; }

 private:
  std::vector<double> means_;
  int m_;
  double top_m_sum_ = 0.0;
};

enum class FeedbackKind {
  kUndetectable,  // the raw draw, collision or not
  kWeak,          // the reward, so 0 on collision
  kStrong,        // the reward plus a collision flag
  kFullInfo,      // draws of every arm
  kAdversarial,   // raw draw, but colliders see whatever the adversary picks
};

std::string FeedbackKindName(FeedbackKind kind);
FeedbackKind ParseFeedbackKind(std::string_view name);

// One step of play as seen by an adaptive adversary.
struct StepRecord {
  std::int64_t t = 0;
  std::vector<Arm> arms;
  std::vector<int> draws;
};

// What the adversary decides for one colliding player.
struct AdversaryQuery {
  const std::vector<StepRecord>* history;  // all earlier steps
  std::int64_t t;
  int player;
  Arm arm;
  int draw;
};

using AdversaryPolicy = std::function<int(const AdversaryQuery&)>;

AdversaryPolicy FlipAdversary();
AdversaryPolicy ConstantAdversary(int bit);

struct FeedbackModel {
  FeedbackKind kind = FeedbackKind::kUndetectable;
  AdversaryPolicy adversary;  // used only by kAdversarial
};

struct PlayerFeedback {
  int draw = 0;       // Y, the Bernoulli draw of the played arm
  int reward = 0;     // Y if the arm was pulled by this player alone, else 0
  int observed = 0;   // the bit the player's strategy sees
  bool collision_flag = false;  // reported only under kStrong
  ArmMask full_draws = 0;       // one draw per arm under kFullInfo
};

// Environment for one trial. Each player's draws come from its own engine,
// so draws are independent even when players share an arm.
class Environment {
 public:
  Environment(Instance instance, FeedbackModel model);

  const Instance& instance() const { return instance_; }
  const FeedbackModel& model() const { return model_; }

  void Step(std::int64_t t, std::span<const Arm> arms,
            std::span<PrivateEngine> engines, std::span<PlayerFeedback> out);

  const std::vector<StepRecord>& history() const { return history_; }

 private:
  Instance instance_;
  FeedbackModel model_;
  std::vector<StepRecord> history_;
};

// Pseudo-regret of one step: top-m sum minus the expected reward of `arms`.
double RegretIncrement(const Instance& instance, std::span<const Arm> arms);

// Number of arms pulled by two or more players.
int CollisionCount(std::span<const Arm> arms);

// Observation sequences per arm.
using PerArmHistory = std::vector<std::vector<int>>;

// Independently and uniformly permutes each arm's sequence.
PerArmHistory MeanBasedWrapper(const PerArmHistory& history,
                               PrivateEngine& engine);

}  // namespace mpb

#endif  // MPB_ENVIRONMENT_H_
