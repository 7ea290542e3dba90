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

#include "mpb/coloring.h"

#include <numeric>
#include <stdexcept>

namespace mpb {

std::vector<Arm> IdentityPriority(int k) {
  std::vector<Arm> priority(k);
  std::iota(priority.begin(), priority.end(), 0);
  return priority;
}

void ValidatePriority(std::span<const Arm> priority, int k) {
  if (static_cast<int>(priority.size()) != k) {
    throw std::invalid_argument("priority must list every arm once");
  }
  ArmMask seen = 0;
  for (Arm a : priority) {
    if (a < 0 || a >= k || Contains(seen, a)) {
      throw std::invalid_argument("priority is not a permutation");
    }
    seen |= ArmBit(a);
  }
}

namespace {

// One inheritance step from `slots` (a coloring of the parent) to the child
// with sets `child`.
void Inherit(const ArmSetPair& child, int m, std::span<const Arm> priority,
             SlotAssignment& slots) {
  const int quota = m - Size(child.a_set);
  ArmMask placed = 0;
  for (Arm a : slots) placed |= ArmBit(a);

  // Of the b_set arms already placed, keep the top `quota` by priority.
  ArmMask keep = child.a_set & placed;
  int kept_b = 0;
  for (Arm a : priority) {
    if (kept_b == quota) break;
    if (Contains(child.b_set & placed, a)) {
      keep |= ArmBit(a);
      ++kept_b;
    }
  }

  // Incoming arms: missing a_set arms plus enough b_set arms, in priority
  // order.
  boost::container::small_vector<Arm, 8> incoming;
  int need_b = quota - kept_b;
  for (Arm a : priority) {
    if (Contains(placed, a)) continue;
    if (Contains(child.a_set, a)) {
      incoming.push_back(a);
    } else if (need_b > 0 && Contains(child.b_set, a)) {
      incoming.push_back(a);
      --need_b;
    }
  }

  std::size_t next = 0;
  for (Arm& slot : slots) {
    if (!Contains(keep, slot)) slot = incoming[next++];
  }
}

}  // namespace

SlotAssignment Color(const Dop& p, std::span<const Arm> priority) {
  const int m = p.num_players();
  SlotAssignment slots(priority.begin(), priority.begin() + m);
  for (int d = 1; d <= p.depth(); ++d) {
    const ArmSetPair sets =
        d == p.depth() ? p.ab_sets() : p.Ancestor(d).ab_sets();
    Inherit(sets, m, priority, slots);
  }
  return slots;
}

namespace {

bool Distinct(const SlotAssignment& slots) {
  ArmMask seen = 0;
  for (Arm a : slots) {
    if (Contains(seen, a)) return false;
    seen |= ArmBit(a);
  }
  return true;
}

bool Compatible(const SlotAssignment& f, const SlotAssignment& g) {
  if (f.size() != g.size()) return false;
  for (std::size_t i = 0; i < f.size(); ++i) {
    for (std::size_t j = 0; j < g.size(); ++j) {
      if (i != j && f[i] == g[j]) return false;
    }
  }
  return true;
}

bool CheckSubtree(const Dop& p, const SlotAssignment& colors,
                  const Coloring& coloring, int max_depth) {
  if (!Distinct(colors)) return false;
  if (p.depth() >= max_depth) return true;
  bool ok = true;
  p.ForEachChild([&](const Dop& child) {
    const SlotAssignment child_colors = coloring(child);
    ok = Compatible(colors, child_colors) &&
         CheckSubtree(child, child_colors, coloring, max_depth);
    return ok;
  });
  return ok;
}

}  // namespace

bool VerifyCollisionRobust(int k, int m, const Coloring& coloring,
                           int max_depth) {
  const Dop root = Dop::Root(k, m);
  return CheckSubtree(root, coloring(root), coloring, max_depth);
}

bool VerifyCollisionRobust(int k, int m, std::span<const Arm> priority,
                           int max_depth) {
  ValidatePriority(priority, k);
  return VerifyCollisionRobust(
      k, m, [priority](const Dop& p) { return Color(p, priority); },
      max_depth);
}

}  // namespace mpb
