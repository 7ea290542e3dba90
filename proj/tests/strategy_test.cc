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
#include <vector>

#include "doctest.h"
#include "mpb/coloring.h"
#include "mpb/streams.h"

namespace mpb {
namespace {

Schedule TestSchedule(int k, std::int64_t horizon) {
  return MakeSchedule(DefaultDeltas(horizon, std::vector<double>{0.1}), k,
                      horizon, ScheduleConstants(), 1);
}

// Feeds `pulls` observations per arm with the given number of ones.
void Feed(Player& player, const std::vector<int>& ones, int pulls) {
  for (Arm a = 0; a < static_cast<Arm>(ones.size()); ++a) {
    for (int i = 0; i < pulls; ++i) player.Observe(a, i < ones[a] ? 1 : 0);
  }
}

TEST_CASE("warm-up is round robin") {
  const Schedule s = TestSchedule(3, 10000);
  Player first(0, 2, s, SharedThresholds(1, 3));
  Player second(1, 2, s, SharedThresholds(1, 3));
  const std::vector<Arm> priority = IdentityPriority(3);
  // Player 1 at t = 1 plays arm 2 (1-based).
  CHECK(first.Act(1, priority).arm == 1);
  CHECK(second.Act(1, priority).arm == 2);
  const Decision d = first.Act(2, priority);
  CHECK(d.arm == 2);
  CHECK_FALSE(d.vertex.has_value());
  CHECK(d.relevant == FullMask(3));
  CHECK(first.relevant_counts() == std::vector<std::int64_t>{2, 2, 2});
}

TEST_CASE("unsampled arm after warm-up is an internal error") {
  const Schedule s = TestSchedule(3, 10000);
  Player p(0, 2, s, SharedThresholds(1, 3));
  p.Observe(0, 1);
  CHECK_THROWS_AS(p.Act(s.warmup + 1, IdentityPriority(3)), std::logic_error);
}

TEST_CASE("clear leaders are played by both players without collision") {
  const Schedule s = TestSchedule(3, 1000000);
  const std::vector<double> c = SharedThresholds(5, 3);
  Player a(0, 2, s, c);
  Player b(1, 2, s, c);
  Feed(a, {90, 50, 20}, 100);
  Feed(b, {90, 50, 20}, 100);
  const std::int64_t t = 900000;
  std::vector<Arm> priority(3);
  SharedPriority(5, t, priority);
  const Decision da = a.Act(t, priority);
  const Decision db = b.Act(t, priority);
  REQUIRE(da.vertex.has_value());
  CHECK(da.vertex->ToString() == "[{1,2}>_1{3}]");
  CHECK(da.exit == ExitLine::kBlueRegion);
  CHECK(da.arm != db.arm);
  CHECK(da.arm <= 1);
  CHECK(db.arm <= 1);
  CHECK(a.relevant_counts() == std::vector<std::int64_t>{1, 1, 0});
}

TEST_CASE("identical estimates give distinct arms") {
  const Schedule s = TestSchedule(5, 1000000);
  const std::vector<double> c = SharedThresholds(8, 5);
  for (std::int64_t t : {2000, 20000, 400000}) {
    std::vector<Player> players;
    for (int id = 0; id < 3; ++id) {
      players.emplace_back(id, 3, s, c);
      Feed(players.back(), {30, 31, 29, 10, 33}, 60);
    }
    std::vector<Arm> priority(5);
    SharedPriority(8, t, priority);
    ArmMask used = 0;
    for (Player& p : players) {
      const Arm arm = p.Act(t, priority).arm;
      CHECK_FALSE(Contains(used, arm));
      used |= ArmBit(arm);
    }
  }
}

TEST_CASE("observations update the means") {
  const Schedule s = TestSchedule(3, 10000);
  Player p(0, 2, s, SharedThresholds(1, 3));
  CHECK(p.means()[0] == Player::kUnsampledMean);
  p.Observe(0, 1);
  CHECK(p.means()[0] == 1.0);
  p.Observe(0, 0);
  CHECK(p.means()[0] == 0.5);
  CHECK(p.counts()[0] == 2);
  CHECK(p.rewards()[0] == 1);
  CHECK_THROWS_AS(p.Observe(1, 2), std::invalid_argument);
  CHECK_THROWS_AS(Player(2, 2, s, SharedThresholds(1, 3)), std::invalid_argument);
}

}  // namespace
}  // namespace mpb
