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

#ifndef MPB_HARNESS_H_
#define MPB_HARNESS_H_

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mpb/environment.h"
#include "mpb/schedule.h"

namespace mpb {

enum class Algorithm {
  kPareto,
  // Same strategy without the top-m early exit, run on (1, T^{-1/2}).
  kSinglePhaseBaseline,
  // Player X plays the X-th best arm by its own estimates.
  kNaiveGreedy,
};

std::string AlgorithmName(Algorithm algorithm);
Algorithm ParseAlgorithm(std::string_view name);

struct ExperimentConfig {
  int k = 3;
  int m = 2;
  std::int64_t horizon = 200000;
  // Empty means (1, 0.1, T^{-1/2}).
  std::vector<double> deltas;
  int trials = 1;
  std::uint64_t shared_seed = 1;
  std::uint64_t private_seed_base = 2;
  FeedbackKind feedback = FeedbackKind::kUndetectable;
  ScheduleConstants consts;
  Algorithm algorithm = Algorithm::kPareto;
  // Keep (n, q, N) snapshots at checkpoint times.
  bool record_checkpoints = false;
  // Worker threads for multi-trial runs; 0 picks the hardware count.
  int threads = 0;
};

// Throws std::invalid_argument on an unusable config.
void ValidateConfig(const ExperimentConfig& config);

// The gap schedule a config actually runs with.
std::vector<double> EffectiveDeltas(const ExperimentConfig& config);

struct PlayerSnapshot {
  std::vector<std::int64_t> n;
  std::vector<double> q;
  std::vector<std::int64_t> big_n;
};

struct Checkpoint {
  std::int64_t t = 0;
  std::vector<PlayerSnapshot> players;
};

struct OmegaDiagnostic {
  bool concentration_ok = true;  // |q - p| below the radius everywhere
  bool exploration_ok = true;    // n >= floor(N / 2K) everywhere
  std::int64_t first_violation_t = -1;
  int checkpoints = 0;

  bool ok() const { return concentration_ok && exploration_ok; }
};

// Checks the concentration and proportional-exploration events at every
// checkpoint. The concentration radius is eps_n / (100 K^1.5) in paper mode
// and eps_n / (2 sqrt(K)) otherwise.
OmegaDiagnostic CheckOmega(std::span<const Checkpoint> checkpoints,
                           const Instance& instance, std::int64_t horizon,
                           const ScheduleConstants& consts);

struct TrialResult {
  int seed_index = 0;
  // (t, cumulative pseudo-regret) at geometrically spaced times and at T.
  std::vector<std::pair<std::int64_t, double>> trajectory;
  double pseudo_regret = 0.0;
  double realized_regret = 0.0;
  // Arms pulled by two or more players, summed over steps.
  std::int64_t collisions = 0;
  // Last step with positive pseudo-regret (0 if none).
  std::int64_t last_regret_step = 0;
  std::uint64_t vertex_digest = 0;
  // Steps per exit rule, summed over players (blue, padding, skeleton, leaf).
  std::array<std::int64_t, 4> exit_counts = {0, 0, 0, 0};

  // Runtime invariants; each stores its first witnessing step or -1.
  // Players' vertices not pairwise adjacent, or not on one root path.
  std::int64_t path_violation_t = -1;
  // First step some player sat at P_*(p).
  std::int64_t special_hit_t = -1;
  // A vertex outside {ROOT, P_*(p)} after special_hit_t.
  std::int64_t absorption_violation_t = -1;
  // A vertex other than P_*(p) at or after 10 K^2 special_hit_t, and at or
  // after 10 special_hit_t (the latter is informational).
  std::int64_t settle_violation_t = -1;
  std::int64_t early_settle_violation_t = -1;
  // An arm within eps_t of the top m missing from some player's relevant set.
  std::int64_t safe_margin_violation_t = -1;

  std::vector<Checkpoint> checkpoints;
  OmegaDiagnostic omega;
};

// Simulates one trial of `config` on `instance`. Seeds derive from
// (shared_seed, seed_index) and (private_seed_base, seed_index, player).
TrialResult RunTrial(const ExperimentConfig& config, const Instance& instance,
                     int seed_index);

// config.trials trials with seed indices 0..trials-1, in parallel.
std::vector<TrialResult> RunTrials(const ExperimentConfig& config,
                                   const Instance& instance);

// Stable text rendering used for replay comparison.
std::string FormatTrialResult(const TrialResult& result);

// 1 / (Delta_j * Delta_{j+1}) for the phase interval containing `delta`.
double ParetoReference(std::span<const double> deltas, double delta);

struct SweepPoint {
  double delta = 0.0;
  double mean_regret = 0.0;
  double stderr_regret = 0.0;
  double reference = 0.0;
  std::int64_t collisions = 0;
  int trials = 0;
  std::uint64_t seed_base = 0;

  friend bool operator==(const SweepPoint&, const SweepPoint&) = default;
};

// Instances whose gap is at least `delta`: the first sits exactly at the
// boundary, the rest have uniform coordinates in [0.05, 0.95] conditioned on
// the gap.
std::vector<Instance> SampleInstances(int k, int m, double delta, int count,
                                      std::uint64_t seed);

// For each gap, runs config.trials trials on each sampled instance and
// reports the largest per-instance mean regret.
// Seed of the instances sampled for one gap; it depends on the gap value
// only, so sweeps over different grids share instances at common gaps.
std::uint64_t InstanceSeed(std::uint64_t shared_seed, double delta);

std::vector<SweepPoint> Sweep(const ExperimentConfig& config,
                              std::span<const double> gap_grid,
                              int instances_per_gap);

// Runs `body(i)` for i in [0, count) on up to `threads` threads.
void ParallelFor(int count, int threads, const std::function<void(int)>& body);

}  // namespace mpb

#endif  // MPB_HARNESS_H_
