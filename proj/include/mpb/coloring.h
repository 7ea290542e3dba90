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

#ifndef MPB_COLORING_H_
#define MPB_COLORING_H_

#include <functional>
#include <span>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "mpb/dop.h"

namespace mpb {

// slots[i] is the arm played by player slot i.
using SlotAssignment = boost::container::small_vector<Arm, 8>;

// A priority order over arms: priority[0] is the most preferred arm.
// Identity priority means lower arm index first.
std::vector<Arm> IdentityPriority(int k);

// Throws std::invalid_argument unless `priority` is a permutation of [k].
void ValidatePriority(std::span<const Arm> priority, int k);

// Slot assignment by inheritance along the path from the root. The root
// takes the first m arms by priority. Moving to a child keeps every arm
// that stays eligible (all of the child's a_set, and of its b_set the
// highest-priority arms up to the remaining quota) in its slot; the freed
// slots, lowest first, receive the missing arms in priority order.
SlotAssignment Color(const Dop& p, std::span<const Arm> priority);

using Coloring = std::function<SlotAssignment(const Dop&)>;

// Exhaustively checks every vertex up to max_depth and every tree edge below
// it: slots within a vertex hold distinct arms, and an arm shared by
// adjacent vertices sits in the same slot in both.
bool VerifyCollisionRobust(int k, int m, const Coloring& coloring,
                           int max_depth);

bool VerifyCollisionRobust(int k, int m, std::span<const Arm> priority,
                           int max_depth);

}  // namespace mpb

#endif  // MPB_COLORING_H_
