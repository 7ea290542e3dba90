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

#include "mpb/environment.h"

#include <algorithm>
#include <cstdio>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace mpb {

Instance::Instance(std::vector<double> means, int m)
    : means_(std::move(means)), m_(m) {
  const int k = num_arms();
  if (k < 2 || k > kMaxArms) throw std::invalid_argument("need 2 <= K <= 64");
  if (m < 1 || m >= k) throw std::invalid_argument("need 1 <= m < K");
  for (double p : means_) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw std::invalid_argument("means must lie in [0, 1]");
    }
  }
  std::vector<double> sorted = means_;
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  for (int i = 0; i < m; ++i) top_m_sum_ += sorted[i];
}

Instance Instance::Parse(std::string_view text) {
  std::istringstream in{std::string(text)};
  int k = 0;
  int m = 0;
  if (!(in >> k >> m) || k < 2 || k > kMaxArms) {
    throw std::invalid_argument("instance must start with K and m");
  }
  std::vector<double> means(k);
  for (double& p : means) {
    if (!(in >> p)) throw std::invalid_argument("instance lists too few means");
  }
  std::string extra;
  if (in >> extra) throw std::invalid_argument("trailing text in instance");
  return Instance(std::move(means), m);
}

std::string Instance::ToString() const {
  std::string out = std::to_string(num_arms()) + " " + std::to_string(m_);
  char buf[32];
  for (double p : means_) {
    std::snprintf(buf, sizeof(buf), " %.17g", p);
    out += buf;
  }
  return out;
}

double Instance::Gap() const {
  std::vector<double> sorted = means_;
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  return sorted[m_ - 1] - sorted[m_];
}

std::string FeedbackKindName(FeedbackKind kind) {
  switch (kind) {
    case FeedbackKind::kUndetectable:
      return "undetectable";
    case FeedbackKind::kWeak:
      return "weak";
    case FeedbackKind::kStrong:
      return "strong";
    case FeedbackKind::kFullInfo:
      return "full_info";
    case FeedbackKind::kAdversarial:
      return "adversarial";
  }
  return "unknown";
}

FeedbackKind ParseFeedbackKind(std::string_view name) {
  for (FeedbackKind kind :
       {FeedbackKind::kUndetectable, FeedbackKind::kWeak, FeedbackKind::kStrong,
        FeedbackKind::kFullInfo, FeedbackKind::kAdversarial}) {
    if (FeedbackKindName(kind) == name) return kind;
  }
  throw std::invalid_argument("unknown feedback model: " + std::string(name));
}

AdversaryPolicy FlipAdversary() {
  return [](const AdversaryQuery& q) { return 1 - q.draw; };
}

AdversaryPolicy ConstantAdversary(int bit) {
  return [bit](const AdversaryQuery&) { return bit; };
}

Environment::Environment(Instance instance, FeedbackModel model)
    : instance_(std::move(instance)), model_(std::move(model)) {
  if (model_.kind == FeedbackKind::kAdversarial && !model_.adversary) {
    model_.adversary = FlipAdversary();
  }
}

void Environment::Step(std::int64_t t, std::span<const Arm> arms,
                       std::span<PrivateEngine> engines,
                       std::span<PlayerFeedback> out) {
  const int players = static_cast<int>(arms.size());
  const int k = instance_.num_arms();
  for (int x = 0; x < players; ++x) {
    const Arm a = arms[x];
    if (a < 0 || a >= k) throw std::invalid_argument("arm out of range");
    bool unique = true;
    for (int y = 0; y < players; ++y) {
      if (y != x && arms[y] == a) unique = false;
    }
    PlayerFeedback& f = out[x];
    f = PlayerFeedback();
    if (model_.kind == FeedbackKind::kFullInfo) {
      for (Arm b = 0; b < k; ++b) {
        if (Bernoulli(engines[x], instance_.mean(b))) f.full_draws |= ArmBit(b);
      }
      f.draw = Contains(f.full_draws, a) ? 1 : 0;
    } else {
      f.draw = Bernoulli(engines[x], instance_.mean(a));
    }
    f.reward = unique ? f.draw : 0;
    switch (model_.kind) {
      case FeedbackKind::kUndetectable:
      case FeedbackKind::kFullInfo:
      case FeedbackKind::kAdversarial:
        f.observed = f.draw;
        break;
      case FeedbackKind::kWeak:
        f.observed = f.reward;
        break;
      case FeedbackKind::kStrong:
        f.observed = f.reward;
        f.collision_flag = !unique;
        break;
    }
  }
  if (model_.kind == FeedbackKind::kAdversarial) {
    for (int x = 0; x < players; ++x) {
      bool unique = true;
      for (int y = 0; y < players; ++y) {
        if (y != x && arms[y] == arms[x]) unique = false;
      }
      if (unique) continue;
      const int bit =
          model_.adversary({&history_, t, x, arms[x], out[x].draw});
      out[x].observed = bit != 0 ? 1 : 0;
    }
    StepRecord record;
    record.t = t;
    record.arms.assign(arms.begin(), arms.end());
    for (int x = 0; x < players; ++x) record.draws.push_back(out[x].draw);
    history_.push_back(std::move(record));
  }
}

double RegretIncrement(const Instance& instance, std::span<const Arm> arms) {
  double reward = 0.0;
  const int players = static_cast<int>(arms.size());
  for (int x = 0; x < players; ++x) {
    bool unique = true;
    for (int y = 0; y < players; ++y) {
      if (y != x && arms[y] == arms[x]) unique = false;
    }
    if (unique) reward += instance.mean(arms[x]);
  }
  return instance.TopMSum() - reward;
}

int CollisionCount(std::span<const Arm> arms) {
  ArmMask seen = 0;
  ArmMask repeated = 0;
  for (Arm a : arms) {
    if (Contains(seen, a)) repeated |= ArmBit(a);
    seen |= ArmBit(a);
  }
  return Size(repeated);
}

PerArmHistory MeanBasedWrapper(const PerArmHistory& history,
                               PrivateEngine& engine) {
  PerArmHistory out = history;
  for (std::vector<int>& sequence : out) {
    Shuffle(std::span<int>(sequence), engine);
  }
  return out;
}

}  // namespace mpb
