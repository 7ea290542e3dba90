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

#ifndef MPB_ARMS_H_
#define MPB_ARMS_H_

#include <bit>
#include <cstdint>
#include <span>
#include <vector>

namespace mpb {

// Arms are 0-based internally; every text rendering is 1-based.
using Arm = int;

// A set of arms as a bitmask. Bit a is set iff arm a is in the set.
using ArmMask = std::uint64_t;

inline constexpr int kMaxArms = 64;

inline constexpr ArmMask ArmBit(Arm a) { return ArmMask{1} << a; }

inline constexpr ArmMask FullMask(int k) {
  return k >= kMaxArms ? ~ArmMask{0} : (ArmMask{1} << k) - 1;
}

inline constexpr bool Contains(ArmMask set, Arm a) {
  return (set >> a) & ArmMask{1};
}

inline constexpr int Size(ArmMask set) { return std::popcount(set); }

inline std::vector<Arm> ArmsOf(ArmMask set) {
  std::vector<Arm> arms;
  arms.reserve(Size(set));
  while (set) {
    arms.push_back(std::countr_zero(set));
    set &= set - 1;
  }
  return arms;
}

inline ArmMask MaskOf(std::span<const Arm> arms) {
  ArmMask set = 0;
  for (Arm a : arms) set |= ArmBit(a);
  return set;
}

// Arms sorted by decreasing x, ties broken by ascending arm index.
std::vector<Arm> SortedArms(std::span<const double> x);

// Same ordering restricted to `subset`.
std::vector<Arm> SortedArms(std::span<const double> x, ArmMask subset);

}  // namespace mpb

#endif  // MPB_ARMS_H_
