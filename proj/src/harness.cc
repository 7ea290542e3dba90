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

#include "mpb/harness.h"

#include <algorithm>
#include <bit>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <stdexcept>
#include <thread>

#include "mpb/dop.h"
#include "mpb/random.h"
#include "mpb/strategy.h"
#include "mpb/streams.h"

namespace mpb {

std::string AlgorithmName(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kPareto:
      return "pareto";
    case Algorithm::kSinglePhaseBaseline:
      return "single_phase_baseline";
    case Algorithm::kNaiveGreedy:
      return "naive_greedy";
  }
  return "unknown";
}

Algorithm ParseAlgorithm(std::string_view name) {
  for (Algorithm a : {Algorithm::kPareto, Algorithm::kSinglePhaseBaseline,
                      Algorithm::kNaiveGreedy}) {
    if (AlgorithmName(a) == name) return a;
  }
  throw std::invalid_argument("unknown algorithm: " + std::string(name));
}

std::vector<double> EffectiveDeltas(const ExperimentConfig& config) {
  if (config.algorithm == Algorithm::kSinglePhaseBaseline) {
    return DefaultDeltas(config.horizon, {});
  }
  if (config.deltas.empty()) {
    const double middle[] = {0.1};
    return DefaultDeltas(config.horizon, middle);
  }
  return config.deltas;
}

void ValidateConfig(const ExperimentConfig& config) {
  if (config.k < 2 || config.k > kMaxArms) {
    throw std::invalid_argument("need 2 <= K <= 64");
  }
  if (config.m < 1 || config.m >= config.k) {
    throw std::invalid_argument("need 1 <= m < K");
  }
  if (config.horizon < 1) throw std::invalid_argument("horizon must be positive");
  if (config.trials < 1) throw std::invalid_argument("need at least one trial");
  NormalizeSchedule(EffectiveDeltas(config));
}

namespace {

bool IsCheckpointTime(std::int64_t t, std::int64_t horizon,
                      std::int64_t& next_mark, double& mark) {
  if (t == horizon) return true;
  if (t < next_mark) return false;
  while (next_mark <= t) {
    mark *= 1.1;
    next_mark = static_cast<std::int64_t>(std::ceil(mark));
  }
  return true;
}

}  // namespace

OmegaDiagnostic CheckOmega(std::span<const Checkpoint> checkpoints,
                           const Instance& instance, std::int64_t horizon,
                           const ScheduleConstants& consts) {
  OmegaDiagnostic diag;
  const int k = instance.num_arms();
  const double scale = consts.paper_mode ? 100.0 * std::pow(k, 1.5)
                                         : 2.0 * std::sqrt(static_cast<double>(k));
  for (const Checkpoint& cp : checkpoints) {
    ++diag.checkpoints;
    for (const PlayerSnapshot& ps : cp.players) {
      for (Arm i = 0; i < k; ++i) {
        bool bad = false;
        if (ps.n[i] < 1) {
          diag.concentration_ok = false;
          bad = true;
        } else {
          const double radius =
              EpsilonT(static_cast<double>(ps.n[i]), k, horizon, consts) / scale;
          if (!(std::abs(ps.q[i] - instance.mean(i)) < radius)) {
            diag.concentration_ok = false;
            bad = true;
          }
        }
        if (ps.n[i] < ps.big_n[i] / (2 * k)) {
          diag.exploration_ok = false;
          bad = true;
        }
        if (bad && diag.first_violation_t < 0) diag.first_violation_t = cp.t;
      }
    }
  }
  return diag;
}

namespace {

// Per-step checks of the structural guarantees on the players' vertices.
class InvariantMonitor {
 public:
  InvariantMonitor(const Instance& instance, TrialResult& result)
      : k_(instance.num_arms()),
        special_(TopMSplit(instance.means(), instance.num_players())),
        result_(result),
        previous_(instance.num_players()) {}

  void Check(std::int64_t t, std::span<const Decision> decisions) {
    const int players = static_cast<int>(decisions.size());
    bool path_ok = true;
    for (int x = 0; x < players && path_ok; ++x) {
      const Dop& v = *decisions[x].vertex;
      for (int y = x + 1; y < players && path_ok; ++y) {
        const Dop& w = *decisions[y].vertex;
        if (v != w && TreeDistance(v, w) > 1) path_ok = false;
      }
    }
    for (int x = 0; x < players; ++x) {
      const Dop& v = *decisions[x].vertex;
      if (previous_[x] && *previous_[x] == v) continue;
      previous_[x] = v;
      if (v == special_) continue;
      if (!deepest_ || deepest_->IsAncestorOf(v)) {
        deepest_ = v;
      } else if (!v.IsAncestorOf(*deepest_)) {
        path_ok = false;
      }
    }
    if (!path_ok && result_.path_violation_t < 0) result_.path_violation_t = t;

    for (int x = 0; x < players; ++x) {
      const Dop& v = *decisions[x].vertex;
      if (result_.special_hit_t < 0 && v == special_) result_.special_hit_t = t;
    }
    const std::int64_t s = result_.special_hit_t;
    if (s < 0) return;
    for (int x = 0; x < players; ++x) {
      const Dop& v = *decisions[x].vertex;
      if (v == special_) continue;
      if (!v.IsRoot() && result_.absorption_violation_t < 0) {
        result_.absorption_violation_t = t;
      }
      if (t >= 10 * s && result_.early_settle_violation_t < 0) {
        result_.early_settle_violation_t = t;
      }
      if (t >= 10 * static_cast<std::int64_t>(k_) * k_ * s &&
          result_.settle_violation_t < 0) {
        result_.settle_violation_t = t;
      }
    }
  }

 private:
  int k_;
  Dop special_;
  TrialResult& result_;
  std::vector<std::optional<Dop>> previous_;
  std::optional<Dop> deepest_;
};

// Player X ranks arms by its own means, private random tie-breaking, and
// plays the X-th.
Arm GreedyArm(const Player& player, PrivateEngine& engine) {
  const int k = player.num_arms();
  std::array<Arm, kMaxArms> order;
  std::array<std::uint64_t, kMaxArms> keys;
  for (int i = 0; i < k; ++i) {
    order[i] = i;
    keys[i] = engine();
  }
  const std::vector<double>& q = player.means();
  std::sort(order.begin(), order.begin() + k, [&](Arm a, Arm b) {
    if (q[a] != q[b]) return q[a] > q[b];
    return keys[a] < keys[b];
  });
  return order[player.id()];
}

}  // namespace

TrialResult RunTrial(const ExperimentConfig& config, const Instance& instance,
                     int seed_index) {
  ValidateConfig(config);
  if (instance.num_arms() != config.k || instance.num_players() != config.m) {
    throw std::invalid_argument("instance does not match K and m");
  }
  const int k = config.k;
  const int m = config.m;
  const std::int64_t horizon = config.horizon;
  const std::uint64_t shared = MixSeed(config.shared_seed, seed_index);
  const std::uint64_t private_base =
      MixSeed(config.private_seed_base, seed_index);

  const Schedule schedule = MakeSchedule(EffectiveDeltas(config), k, horizon,
                                         config.consts, shared);
  const std::vector<double> c = SharedThresholds(shared, k);
  const bool early_exit = config.algorithm != Algorithm::kSinglePhaseBaseline;
  const bool greedy = config.algorithm == Algorithm::kNaiveGreedy;

  std::vector<Player> players;
  std::vector<PrivateEngine> engines;
  std::vector<PrivateEngine> tie_engines;
  for (int x = 0; x < m; ++x) {
    players.emplace_back(x, m, schedule, c, early_exit);
    engines.emplace_back(MixSeed(private_base, 2 * x));
    tie_engines.emplace_back(MixSeed(private_base, 2 * x + 1));
  }
  FeedbackModel model;
  model.kind = config.feedback;
  Environment env(instance, model);

  TrialResult result;
  result.seed_index = seed_index;
  InvariantMonitor monitor(instance, result);

  std::vector<double> sorted = instance.means();
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  const double mth = sorted[m - 1];

  std::vector<Arm> priority(k);
  std::vector<Decision> decisions(m);
  std::vector<Arm> arms(m);
  std::vector<PlayerFeedback> feedback(m);
  std::int64_t next_mark = 1;
  double mark = 1.0;
  const double top = instance.TopMSum();

  for (std::int64_t t = 1; t <= horizon; ++t) {
    const bool warm = t <= schedule.warmup;
    const bool mark_here = IsCheckpointTime(t, horizon, next_mark, mark);
    if (config.record_checkpoints && mark_here && !warm) {
      Checkpoint cp;
      cp.t = t;
      for (const Player& p : players) {
        cp.players.push_back({p.counts(), p.means(), p.relevant_counts()});
      }
      result.checkpoints.push_back(std::move(cp));
    }

    if (!warm && !greedy) SharedPriority(shared, t, priority);
    for (int x = 0; x < m; ++x) {
      if (greedy && !warm) {
        decisions[x] = Decision();
        decisions[x].arm = GreedyArm(players[x], tie_engines[x]);
      } else {
        decisions[x] = players[x].Act(t, priority);
      }
      arms[x] = decisions[x].arm;
    }

    env.Step(t, arms, engines, feedback);
    double reward = 0.0;
    for (int x = 0; x < m; ++x) {
      players[x].Observe(arms[x], feedback[x].observed);
      reward += feedback[x].reward;
    }
    const double increment = RegretIncrement(instance, arms);
    result.pseudo_regret += increment;
    result.realized_regret += top - reward;
    if (increment > 1e-12) result.last_regret_step = t;
    result.collisions += CollisionCount(arms);
    if (mark_here) result.trajectory.emplace_back(t, result.pseudo_regret);

    if (warm || greedy) continue;
    for (int x = 0; x < m; ++x) {
      const Decision& d = decisions[x];
      result.vertex_digest = Mix64(result.vertex_digest ^ d.vertex->Hash());
      ++result.exit_counts[static_cast<int>(d.exit)];
    }
    monitor.Check(t, decisions);
    if (result.safe_margin_violation_t < 0) {
      const double eps = schedule.Epsilon(t);
      ArmMask near = 0;
      for (Arm i = 0; i < k; ++i) {
        if (instance.mean(i) >= mth - eps) near |= ArmBit(i);
      }
      for (const Decision& d : decisions) {
        if ((near & ~d.relevant) != 0) result.safe_margin_violation_t = t;
      }
    }
  }
  if (config.record_checkpoints) {
    result.omega =
        CheckOmega(result.checkpoints, instance, horizon, config.consts);
  }
  return result;
}

void ParallelFor(int count, int threads, const std::function<void(int)>& body) {
  if (threads <= 0) {
    threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  }
  threads = std::min(threads, count);
  if (threads <= 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  for (int w = 0; w < threads; ++w) {
    pool.emplace_back([&]() {
      for (int i = next++; i < count; i = next++) body(i);
    });
  }
  for (std::thread& t : pool) t.join();
}

std::vector<TrialResult> RunTrials(const ExperimentConfig& config,
                                   const Instance& instance) {
  std::vector<TrialResult> results(config.trials);
  ParallelFor(config.trials, config.threads,
              [&](int i) { results[i] = RunTrial(config, instance, i); });
  return results;
}

std::string FormatTrialResult(const TrialResult& r) {
  std::string out;
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "seed_index: %d\npseudo_regret: %.17g\nrealized_regret: %.17g\n"
                "collisions: %lld\nlast_regret_step: %lld\nvertex_digest: %016llx\n",
                r.seed_index, r.pseudo_regret, r.realized_regret,
                static_cast<long long>(r.collisions),
                static_cast<long long>(r.last_regret_step),
                static_cast<unsigned long long>(r.vertex_digest));
  out += buf;
  std::snprintf(buf, sizeof(buf),
                "exits: blue_region=%lld padding=%lld skeleton=%lld leaf=%lld\n",
                static_cast<long long>(r.exit_counts[0]),
                static_cast<long long>(r.exit_counts[1]),
                static_cast<long long>(r.exit_counts[2]),
                static_cast<long long>(r.exit_counts[3]));
  out += buf;
  std::snprintf(buf, sizeof(buf),
                "path_violation_t: %lld\nspecial_hit_t: %lld\n"
                "absorption_violation_t: %lld\nsettle_violation_t: %lld\n"
                "early_settle_violation_t: %lld\nsafe_margin_violation_t: %lld\n",
                static_cast<long long>(r.path_violation_t),
                static_cast<long long>(r.special_hit_t),
                static_cast<long long>(r.absorption_violation_t),
                static_cast<long long>(r.settle_violation_t),
                static_cast<long long>(r.early_settle_violation_t),
                static_cast<long long>(r.safe_margin_violation_t));
  out += buf;
  if (r.omega.checkpoints > 0) {
    std::snprintf(buf, sizeof(buf),
                  "omega: checkpoints=%d concentration=%s exploration=%s "
                  "first_violation_t=%lld\n",
                  r.omega.checkpoints, r.omega.concentration_ok ? "ok" : "violated",
                  r.omega.exploration_ok ? "ok" : "violated",
                  static_cast<long long>(r.omega.first_violation_t));
    out += buf;
  }
  out += "trajectory:";
  for (const auto& [t, regret] : r.trajectory) {
    std::snprintf(buf, sizeof(buf), " %lld:%.17g", static_cast<long long>(t),
                  regret);
    out += buf;
  }
  out += "\n";
  return out;
}

double ParetoReference(std::span<const double> deltas, double delta) {
  if (deltas.size() < 2) throw std::invalid_argument("schedule too short");
  if (!(delta >= deltas.back() && delta <= deltas.front())) {
    throw std::invalid_argument("gap outside the schedule range");
  }
  for (std::size_t j = 0; j + 1 < deltas.size(); ++j) {
    if (delta > deltas[j + 1] || j + 2 == deltas.size()) {
      return 1.0 / (deltas[j] * deltas[j + 1]);
    }
  }
  return 1.0 / (deltas[deltas.size() - 2] * deltas.back());
}

std::vector<Instance> SampleInstances(int k, int m, double delta, int count,
                                      std::uint64_t seed) {
  if (!(delta >= 0.0 && delta <= 1.0)) {
    throw std::invalid_argument("gap must lie in [0, 1]");
  }
  double lo = 0.05;
  double hi = 0.95;
  if (delta > hi - lo) {
    lo = 0.0;
    hi = 1.0;
  }
  std::vector<Instance> out;
  if (count <= 0) return out;
  {
    std::vector<double> means(k, 0.5 - delta / 2);
    for (int i = 0; i < m; ++i) means[i] = 0.5 + delta / 2;
    out.emplace_back(std::move(means), m);
  }
  SplitMix64 rng(seed);
  constexpr int kMaxAttempts = 100000;
  while (static_cast<int>(out.size()) < count) {
    std::vector<double> means(k);
    bool found = false;
    for (int attempt = 0; attempt < kMaxAttempts && !found; ++attempt) {
      for (double& p : means) p = UniformDouble(rng, lo, hi);
      found = Instance(means, m).Gap() >= delta;
    }
    if (!found) {
      // Rejection is hopeless this close to the full range: draw the
      // boundary pair first, then the arms on each side of it.
      const double b = UniformDouble(rng, lo, hi - delta);
      const double a = UniformDouble(rng, b + delta, hi);
      for (int i = 0; i < k; ++i) {
        if (i < m - 1) {
          means[i] = UniformDouble(rng, a, hi);
        } else if (i == m - 1) {
          means[i] = a;
        } else if (i == m) {
          means[i] = b;
        } else {
          means[i] = UniformDouble(rng, lo, b);
        }
      }
      Shuffle(std::span<double>(means), rng);
    }
    out.emplace_back(std::move(means), m);
  }
  return out;
}

std::uint64_t InstanceSeed(std::uint64_t shared_seed, double delta) {
  return MixSeed(MixSeed(shared_seed, kInstanceStream),
                 std::bit_cast<std::uint64_t>(delta));
}

std::vector<SweepPoint> Sweep(const ExperimentConfig& config,
                              std::span<const double> gap_grid,
                              int instances_per_gap) {
  ValidateConfig(config);
  if (instances_per_gap < 1) {
    throw std::invalid_argument("need at least one instance per gap");
  }
  const std::vector<double> deltas = NormalizeSchedule(EffectiveDeltas(config));
  const double floor_gap = 1.0 / std::sqrt(static_cast<double>(config.horizon));
  std::vector<std::vector<Instance>> instances;
  for (std::size_t g = 0; g < gap_grid.size(); ++g) {
    if (!(gap_grid[g] >= floor_gap * (1 - 1e-12) && gap_grid[g] <= 1.0)) {
      throw std::invalid_argument("gap grid must lie in [T^{-1/2}, 1]");
    }
    instances.push_back(SampleInstances(config.k, config.m, gap_grid[g],
                                        instances_per_gap,
                                        InstanceSeed(config.shared_seed, gap_grid[g])));
  }
  const int per_gap = instances_per_gap * config.trials;
  const int jobs = static_cast<int>(gap_grid.size()) * per_gap;
  std::vector<TrialResult> results(jobs);
  ParallelFor(jobs, config.threads, [&](int job) {
    const int g = job / per_gap;
    const int i = (job % per_gap) / config.trials;
    const int trial = job % config.trials;
    results[job] = RunTrial(config, instances[g][i], trial);
  });

  std::vector<SweepPoint> points;
  for (std::size_t g = 0; g < gap_grid.size(); ++g) {
    SweepPoint point;
    point.delta = gap_grid[g];
    point.reference =
        ParetoReference(deltas, std::clamp(gap_grid[g], deltas.back(), 1.0));
    point.trials = config.trials;
    point.seed_base = config.shared_seed;
    bool first = true;
    for (int i = 0; i < instances_per_gap; ++i) {
      double sum = 0.0;
      double sum_sq = 0.0;
      for (int trial = 0; trial < config.trials; ++trial) {
        const TrialResult& r =
            results[g * per_gap + i * config.trials + trial];
        sum += r.pseudo_regret;
        sum_sq += r.pseudo_regret * r.pseudo_regret;
        point.collisions += r.collisions;
      }
      const int n = config.trials;
      const double mean = sum / n;
      const double var =
          n > 1 ? std::max(0.0, (sum_sq - n * mean * mean) / (n - 1)) : 0.0;
      if (first || mean > point.mean_regret) {
        point.mean_regret = mean;
        point.stderr_regret = std::sqrt(var / n);
        first = false;
      }
    }
    points.push_back(point);
  }
  return points;
}

}  // namespace mpb
