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

#ifndef MPB_SCHEDULE_H_
#define MPB_SCHEDULE_H_

#include <cstdint>
#include <span>
#include <vector>

namespace mpb {

// Multipliers for the confidence radius and warm-up length. Paper mode uses
// the theoretical constants, which make any desk-sized horizon vacuous; desk
// mode keeps the same functional forms with small multipliers.
struct ScheduleConstants {
  double c_eps = 3.0;
  double c_t0 = 20.0;
  bool paper_mode = false;
};

// Makes consecutive gaps at least a factor 2 apart by dropping entries.
// Input must start at 1, be strictly decreasing and end in (0, 0.5]; the two
// endpoints are always kept.
std::vector<double> NormalizeSchedule(std::span<const double> deltas);

// Confidence radius at time t >= 1.
double EpsilonT(double t, int k, std::int64_t horizon,
                const ScheduleConstants& consts);

// Number of round-robin warm-up steps.
std::int64_t WarmupLength(int k, std::int64_t horizon,
                          const ScheduleConstants& consts);

// Start of the phase targeting gap `delta`. In desk mode this is the first t
// with EpsilonT(t) <= delta / 10.
std::int64_t PhaseStart(double delta, int k, std::int64_t horizon,
                        const ScheduleConstants& consts);

struct Schedule {
  int k = 0;
  std::int64_t horizon = 0;
  ScheduleConstants consts;
  std::vector<double> deltas;
  std::vector<std::int64_t> phase_starts;
  // Shared offset for each phase, uniform in [eps, 1.5 eps] at its start.
  std::vector<double> delta_values;
  std::int64_t warmup = 0;
  // True when the last phase starts after the horizon.
  bool vacuous = false;

  double Epsilon(std::int64_t t) const;
  // Index of the phase containing t; times before the first phase start
  // belong to phase 0.
  int PhaseAt(std::int64_t t) const;
  double DeltaAt(std::int64_t t) const { return delta_values[PhaseAt(t)]; }
};

// Normalizes `deltas` and draws the phase offsets from the shared seed.
Schedule MakeSchedule(std::span<const double> deltas, int k,
                      std::int64_t horizon, const ScheduleConstants& consts,
                      std::uint64_t shared_seed);

// (1, 0.1, T^{-1/2}) style helper: 1, the given middle values, T^{-1/2}.
std::vector<double> DefaultDeltas(std::int64_t horizon,
                                  std::span<const double> middle);

}  // namespace mpb

#endif  // MPB_SCHEDULE_H_
