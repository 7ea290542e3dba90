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

#include "mpb/schedule.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mpb/random.h"
#include "mpb/streams.h"

namespace mpb {

namespace {

// Saturation point for paper-mode times, far beyond any simulated horizon.
constexpr double kTimeCap = 4.0e18;

std::int64_t CeilToTime(double v) {
  if (!(v < kTimeCap)) return static_cast<std::int64_t>(kTimeCap);
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(v)));
}

double LogKT(int k, std::int64_t horizon) {
  if (k < 1 || horizon < 1) throw std::invalid_argument("need k, T >= 1");
  return std::log(static_cast<double>(k) * static_cast<double>(horizon));
}

}  // namespace

std::vector<double> NormalizeSchedule(std::span<const double> deltas) {
  if (deltas.size() < 2) {
    throw std::invalid_argument("schedule needs at least two gaps");
  }
  if (deltas.front() != 1.0) {
    throw std::invalid_argument("schedule must start at 1");
  }
  for (std::size_t i = 1; i < deltas.size(); ++i) {
    if (!(deltas[i] < deltas[i - 1]) || !(deltas[i] > 0.0)) {
      throw std::invalid_argument("schedule must be strictly decreasing and positive");
    }
  }
  const double last = deltas.back();
  if (last > 0.5) {
    throw std::invalid_argument("last gap must be at most 1/2");
  }
  std::vector<double> out = {1.0};
  for (std::size_t i = 1; i + 1 < deltas.size(); ++i) {
    if (deltas[i] <= out.back() / 2 && deltas[i] >= 2 * last) {
      out.push_back(deltas[i]);
    }
  }
  out.push_back(last);
  return out;
}

double EpsilonT(double t, int k, std::int64_t horizon,
                const ScheduleConstants& consts) {
  if (!(t >= 1.0)) throw std::invalid_argument("t must be at least 1");
  const double lkt = LogKT(k, horizon);
  if (consts.paper_mode) {
    return 10000.0 * std::sqrt(std::pow(k, 3) * lkt / t);
  }
  return consts.c_eps * std::sqrt(k * lkt / t);
}

std::int64_t WarmupLength(int k, std::int64_t horizon,
                          const ScheduleConstants& consts) {
  const double lkt = LogKT(k, horizon);
  if (consts.paper_mode) return CeilToTime(1e9 * k * lkt);
  return CeilToTime(consts.c_t0 * k * lkt);
}

std::int64_t PhaseStart(double delta, int k, std::int64_t horizon,
                        const ScheduleConstants& consts) {
  if (!(delta > 0.0 && delta <= 1.0)) {
    throw std::invalid_argument("gap must lie in (0, 1]");
  }
  const double lkt = LogKT(k, horizon);
  if (consts.paper_mode) {
    return CeilToTime(1e10 * std::pow(k, 3) * lkt / (delta * delta));
  }
  const double target = delta / 10.0;
  std::int64_t t = CeilToTime(std::pow(10.0 * consts.c_eps / delta, 2) * k * lkt);
  // Closed form can be off by one in floating point.
  while (t > 1 && EpsilonT(static_cast<double>(t - 1), k, horizon, consts) <= target) {
    --t;
  }
  while (EpsilonT(static_cast<double>(t), k, horizon, consts) > target) ++t;
  return t;
}

double Schedule::Epsilon(std::int64_t t) const {
  return EpsilonT(static_cast<double>(t), k, horizon, consts);
}

int Schedule::PhaseAt(std::int64_t t) const {
  const auto it = std::upper_bound(phase_starts.begin(), phase_starts.end(), t);
  if (it == phase_starts.begin()) return 0;
  return static_cast<int>(it - phase_starts.begin()) - 1;
}

Schedule MakeSchedule(std::span<const double> deltas, int k,
                      std::int64_t horizon, const ScheduleConstants& consts,
                      std::uint64_t shared_seed) {
  Schedule s;
  s.k = k;
  s.horizon = horizon;
  s.consts = consts;
  s.deltas = NormalizeSchedule(deltas);
  s.warmup = WarmupLength(k, horizon, consts);
  SplitMix64 rng(MixSeed(shared_seed, kOffsetStream));
  for (double d : s.deltas) {
    const std::int64_t start = PhaseStart(d, k, horizon, consts);
    const double eps = EpsilonT(static_cast<double>(start), k, horizon, consts);
    s.phase_starts.push_back(start);
    s.delta_values.push_back(UniformDouble(rng, eps, 1.5 * eps));
  }
  s.vacuous = s.phase_starts.back() > horizon;
  return s;
}

std::vector<double> DefaultDeltas(std::int64_t horizon,
                                  std::span<const double> middle) {
  std::vector<double> out = {1.0};
  out.insert(out.end(), middle.begin(), middle.end());
  out.push_back(1.0 / std::sqrt(static_cast<double>(horizon)));
  return out;
}

}  // namespace mpb
