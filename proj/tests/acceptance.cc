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

// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion plus
// INFO lines for diagnostics that are reported but not gated, and exits
// nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "mpb/coloring.h"
#include "mpb/dop.h"
#include "mpb/harness.h"
#include "mpb/obstruction.h"
#include "mpb/partition.h"
#include "mpb/random.h"
#include "mpb/report.h"
#include "mpb/schedule.h"
#include "obstruction_oracle.h"

namespace mpb {
namespace {

constexpr std::int64_t kHorizon = 200000;

int failures = 0;

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  double Seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

void Report(bool pass, const char* name, const std::string& detail) {
  std::printf("%s %s: %s\n", pass ? "PASS" : "FAIL", name, detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

void Info(const char* name, const std::string& detail) {
  std::printf("INFO %s: %s\n", name, detail.c_str());
  std::fflush(stdout);
}

std::string Format(const char* fmt, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), fmt, args...);
  return buf;
}

// Text form of a trial used for byte-level comparisons.
std::string Serialize(const TrialResult& r) {
  std::string out = FormatTrialResult(r);
  for (const auto& [t, v] : r.trajectory) out += Format("%lld %.17g\n", static_cast<long long>(t), v);
  return out;
}

// K = 3, m = 2 instance whose gap is exactly `delta`, other means random.
Instance InstanceWithGap(SplitMix64& rng, double delta) {
  const double lo = delta > 0.9 ? 0.0 : 0.05;
  const double hi = delta > 0.9 ? 1.0 : 0.95;
  const double b = UniformDouble(rng, lo, hi - delta);
  const double a = b + delta;
  std::vector<double> means = {UniformDouble(rng, a, hi), a, b};
  Shuffle(std::span<double>(means), rng);
  return Instance(means, 2);
}

// ---------------------------------------------------------------------------
// Collision-free play and the structural invariants on the same runs.

struct CollisionRuns {
  std::vector<Instance> instances;
  std::vector<std::string> serialized;  // first instances, first seeds
};

constexpr int kReplayInstances = 2;
constexpr int kReplaySeeds = 10;

CollisionRuns CheckCollisions() {
  constexpr int kSeeds = 100;
  constexpr int kInstances = 10;
  Timer timer;
  CollisionRuns runs;
  SplitMix64 rng(20260101);
  for (int i = 0; i < kInstances; ++i) {
    const double delta = 0.01 * std::pow(90.0, i / (kInstances - 1.0));
    runs.instances.push_back(InstanceWithGap(rng, delta));
  }
  ExperimentConfig config;
  config.horizon = kHorizon;
  config.record_checkpoints = true;
  std::vector<TrialResult> results(kSeeds * kInstances);
  ParallelFor(kSeeds * kInstances, 0, [&](int job) {
    results[job] = RunTrial(config, runs.instances[job / kSeeds], job % kSeeds);
  });
  const double seconds = timer.Seconds();

  int clean = 0;
  int path_bad = 0;
  int absorption_bad = 0;
  int safe_bad = 0;
  int settle_bad = 0;
  int early_settle_bad = 0;
  int omega_bad = 0;
  int hit = 0;
  for (std::size_t j = 0; j < results.size(); ++j) {
    const TrialResult& r = results[j];
    clean += r.collisions == 0;
    path_bad += r.path_violation_t >= 0;
    absorption_bad += r.absorption_violation_t >= 0;
    safe_bad += r.safe_margin_violation_t >= 0;
    settle_bad += r.settle_violation_t >= 0;
    early_settle_bad += r.early_settle_violation_t >= 0;
    omega_bad += !r.omega.ok();
    hit += r.special_hit_t >= 0;
    const int instance = static_cast<int>(j) / kSeeds;
    const int seed = static_cast<int>(j) % kSeeds;
    if (instance < kReplayInstances && seed < kReplaySeeds) {
      runs.serialized.push_back(Serialize(r));
    }
  }
  const int total = static_cast<int>(results.size());
  Report(clean * 100 >= 99 * total && seconds <= 300.0, "no_collisions",
         Format("%d/%d runs collision-free (need >= 99%%), gaps 0.01..0.9, "
                "T=%lld, %.1f s (target <= 300 s)",
                clean, total, static_cast<long long>(kHorizon), seconds));
  Report(path_bad * 100 <= total, "path_adjacency",
         Format("%d/%d runs with a step off a common root path or at tree "
                "distance > 1 (need <= 1%%)",
                path_bad, total));
  Info("absorption", Format("%d/%d runs left {ROOT, P_*} after reaching P_* "
                            "(%d runs reached it)", absorption_bad, total, hit));
  Info("safe_margin", Format("%d/%d runs dropped an arm within eps_t of the top m",
                             safe_bad, total));
  Info("settling", Format("%d/%d runs off P_* after 10 K^2 s; %d/%d after 10 s",
                          settle_bad, total, early_settle_bad, total));
  Info("omega", Format("%d/%d runs with a concentration or exploration "
                       "violation at some checkpoint", omega_bad, total));
  return runs;
}

// ---------------------------------------------------------------------------
// Partition topology.

PartitionParams RandomParams(SplitMix64& rng, int k) {
  PartitionParams params;
  params.c.resize(k + 1);
  for (double& v : params.c) v = UniformDouble(rng) / k;
  params.eps = std::pow(10.0, UniformDouble(rng, -4.0, -1.0));
  params.delta = Bernoulli(rng, 0.5)
                     ? UniformDouble(rng, params.eps, 1.5 * params.eps)
                     : std::pow(10.0, UniformDouble(rng, -4.0, -0.5));
  return params;
}

std::vector<double> RandomPoint(SplitMix64& rng, int k) {
  std::vector<double> x(k);
  const bool grid = Bernoulli(rng, 0.5);
  for (double& v : x) {
    v = UniformDouble(rng);
    if (grid) v = std::round(v * 20) / 20;
  }
  return x;
}

// True if u and v lie below two different children of p.
bool SplitBelow(const Dop& p, const Dop& u, const Dop& v) {
  const int d = p.depth();
  if (u.depth() <= d || v.depth() <= d) return false;
  if (!p.IsAncestorOf(u) || !p.IsAncestorOf(v)) return false;
  return !(u.Ancestor(d + 1) == v.Ancestor(d + 1));
}

void CheckTopology() {
  constexpr int kShapes[][2] = {{3, 2}, {4, 2}, {4, 3}, {5, 2}, {5, 3}};
  Timer timer;
  SplitMix64 rng(314159);
  int far = 0;
  constexpr int kPairs = 100000;
  for (int trial = 0; trial < kPairs; ++trial) {
    const auto [k, m] = kShapes[trial % 5];
    const std::vector<double> x = RandomPoint(rng, k);
    const PartitionParams params = RandomParams(rng, k);
    std::vector<double> y = x;
    for (double& v : y) {
      v = std::clamp(v + UniformDouble(rng, -0.5, 0.5) * params.eps, 0.0, 1.0);
    }
    far += TreeDistance(PartitionMap(x, params, m), PartitionMap(y, params, m)) > 1;
  }

  // Targeted tests: p is a proper ancestor of x's vertex; y agrees with x to
  // within eps/2 on A(p) and B(p) and is arbitrary elsewhere; y uses a
  // smaller width eps' and the same offset.
  constexpr int kTargeted = 10000;
  int split = 0;
  int split_free_offset = 0;
  int done = 0;
  while (done < kTargeted) {
    const auto [k, m] = kShapes[done % 5];
    const std::vector<double> x = RandomPoint(rng, k);
    const PartitionParams params = RandomParams(rng, k);
    const Dop u = PartitionMap(x, params, m);
    if (u.IsRoot()) continue;
    const Dop p = u.Ancestor(static_cast<int>(UniformBelow(rng, u.depth())));
    const ArmMask fixed = p.ab_sets().relevant();
    std::vector<double> y = x;
    for (Arm a = 0; a < k; ++a) {
      if (Contains(fixed, a)) {
        y[a] = std::clamp(y[a] + UniformDouble(rng, -0.5, 0.5) * params.eps, 0.0, 1.0);
      } else {
        y[a] = UniformDouble(rng);
      }
    }
    PartitionParams narrow = params;
    narrow.eps = params.eps * (1.0 - UniformDouble(rng));
    split += SplitBelow(p, u, PartitionMap(y, narrow, m));
    // Same test with an unrelated offset for y, which the statement does not
    // cover once the top-m exit is present.
    PartitionParams other = narrow;
    other.delta = std::pow(10.0, UniformDouble(rng, -4.0, -0.5));
    split_free_offset += SplitBelow(p, u, PartitionMap(y, other, m));
    ++done;
  }
  Report(far == 0 && split == 0, "partition_topology",
         Format("%d/%d perturbed pairs at distance > 1; %d/%d targeted tests "
                "split below two children (%.1f s)",
                far, kPairs, split, kTargeted, timer.Seconds()));
  Info("partition_topology_free_offset",
       Format("%d/%d targeted tests split when y draws its own offset",
              split_free_offset, kTargeted));
}

// ---------------------------------------------------------------------------
// Cover property.

void CheckCover() {
  Timer timer;
  SplitMix64 rng(2718);
  constexpr int kPoints = 10000;
  std::int64_t checked = 0;
  int bad = 0;
  for (int trial = 0; trial < kPoints; ++trial) {
    const int k = 3 + trial % 3;
    std::vector<double> x(k);
    for (double& v : x) v = UniformDouble(rng);
    for (int m = 1; m < k; ++m) {
      ForEachVertex(k, m, k, [&](const Dop& p) {
        if (p.IsLeaf()) return;
        const std::vector<Arm> order = SortedArms(x, p.ab_sets().b_set);
        double best = 0.0;
        for (std::size_t j = 0; j + 1 < order.size(); ++j) {
          best = std::max(best, x[order[j]] - x[order[j + 1]]);
        }
        ++checked;
        bad += !(best >= RangeOf(p, x) / k);
      });
    }
  }
  Report(bad == 0, "cover_property",
         Format("%d/%lld (point, internal vertex) pairs with every prefix gap "
                "below range/K, K in 3..5 (%.1f s)",
                bad, static_cast<long long>(checked), timer.Seconds()));
}

// ---------------------------------------------------------------------------
// Coloring.

void CheckColoring() {
  Timer timer;
  SplitMix64 rng(1618);
  int robust_bad = 0;
  std::int64_t pairs = 0;
  int inclusion_bad = 0;
  std::int64_t inclusion_checks = 0;
  double worst_margin = 1.0;
  constexpr int kPriorities = 100;
  constexpr int kSamples = 10000;
  for (int k = 3; k <= 5; ++k) {
    for (int m = 1; m < k && m <= 3; ++m) {
      std::vector<Dop> inner;
      std::vector<Dop> all;
      ForEachVertex(k, m, k, [&](const Dop& p) {
        all.push_back(p);
        if (!p.IsLeaf()) inner.push_back(p);
      });
      for (int trial = 0; trial < kPriorities; ++trial) {
        std::vector<Arm> priority = IdentityPriority(k);
        Shuffle(std::span<Arm>(priority), rng);
        for (const Dop& p : all) {
          if (p.IsRoot()) continue;
          const SlotAssignment mine = Color(p, priority);
          const SlotAssignment up = Color(*p.Parent(), priority);
          ++pairs;
          for (int i = 0; i < m; ++i) {
            for (int j = 0; j < m; ++j) {
              if (i != j && (mine[i] == up[j] || mine[i] == mine[j])) ++robust_bad;
            }
          }
        }
        robust_bad += !VerifyCollisionRobust(k, m, priority, k);
      }
      std::vector<std::vector<int>> hits(inner.size(), std::vector<int>(k, 0));
      for (int s = 0; s < kSamples; ++s) {
        std::vector<Arm> priority = IdentityPriority(k);
        Shuffle(std::span<Arm>(priority), rng);
        for (std::size_t v = 0; v < inner.size(); ++v) {
          for (Arm a : Color(inner[v], priority)) ++hits[v][a];
        }
      }
      const double target = 1.0 / k;
      const double floor = target - 3 * std::sqrt(target * (1 - target) / kSamples);
      for (std::size_t v = 0; v < inner.size(); ++v) {
        for (Arm a : ArmsOf(inner[v].ab_sets().b_set)) {
          const double freq = static_cast<double>(hits[v][a]) / kSamples;
          ++inclusion_checks;
          inclusion_bad += freq < floor;
          worst_margin = std::min(worst_margin, freq - target);
        }
      }
    }
  }
  Report(robust_bad == 0 && inclusion_bad == 0, "coloring",
         Format("%d slot conflicts over %lld adjacent pairs x priorities; "
                "%d/%lld undecided arms below 1/K - 3 sigma (lowest frequency "
                "minus 1/K: %+.4f) (%.1f s)",
                robust_bad, static_cast<long long>(pairs), inclusion_bad,
                static_cast<long long>(inclusion_checks), worst_margin,
                timer.Seconds()));
}

// ---------------------------------------------------------------------------
// Late-phase plateau.

void CheckLatePhase() {
  constexpr int kSeeds = 200;
  constexpr int kInstances = 5;
  Timer timer;
  ExperimentConfig config;
  config.horizon = kHorizon;
  config.deltas = {1.0, 0.5, 1.0 / std::sqrt(static_cast<double>(kHorizon))};
  config.trials = kSeeds;
  const Schedule schedule = MakeSchedule(config.deltas, config.k, kHorizon,
                                         config.consts, config.shared_seed);
  const std::int64_t start = schedule.phase_starts[1];
  std::vector<Instance> instances = SampleInstances(3, 2, 0.5, kInstances - 1, 77);
  instances.push_back(Instance({1.0, 1.0, 0.0}, 2));
  int worst = kSeeds;
  std::string per_instance;
  for (const Instance& inst : instances) {
    int quiet = 0;
    for (const TrialResult& r : RunTrials(config, inst)) {
      quiet += r.last_regret_step < start;
    }
    worst = std::min(worst, quiet);
    per_instance += Format(" %d", quiet);
  }
  Report(worst * 100 >= 95 * kSeeds, "late_phase",
         Format("runs with no regret from t_1=%lld on, per instance out of "
                "%d:%s (need >= 95%% each; gaps >= 0.5) (%.1f s)",
                static_cast<long long>(start), kSeeds, per_instance.c_str(),
                timer.Seconds()));
}

// ---------------------------------------------------------------------------
// Pareto shape and the single-phase baseline.

void CheckPareto() {
  constexpr int kSeeds = 200;
  constexpr int kInstances = 10;
  Timer timer;
  ExperimentConfig config;
  config.horizon = kHorizon;
  config.trials = kSeeds;
  const std::vector<double> grid = {0.05, 0.5};
  const std::vector<SweepPoint> points = Sweep(config, grid, kInstances);
  const double measured = points[0].mean_regret / points[1].mean_regret;
  const double reference = points[0].reference / points[1].reference;
  const double exponent = std::log(measured) / std::log(reference);

  ExperimentConfig baseline = config;
  baseline.algorithm = Algorithm::kSinglePhaseBaseline;
  const std::vector<double> half = {0.5};
  const std::vector<SweepPoint> base = Sweep(baseline, half, kInstances);
  const double factor = base[0].mean_regret / points[1].mean_regret;

  Report(exponent >= 1.0 / 3 && exponent <= 3.0, "pareto_shape",
         Format("R(0.05)=%.1f+-%.1f R(0.5)=%.1f+-%.1f, ratio %.2f vs reference "
                "%.2f, log-ratio %.3f (need in [1/3, 3])",
                points[0].mean_regret, points[0].stderr_regret,
                points[1].mean_regret, points[1].stderr_regret, measured,
                reference, exponent));
  Report(factor >= 3.0, "baseline_separation",
         Format("single-phase R(0.5)=%.1f+-%.1f is %.1fx the two-phase value "
                "(need >= 3x) (%.1f s for both checks)",
                base[0].mean_regret, base[0].stderr_regret, factor,
                timer.Seconds()));
  Info("pareto_collisions",
       Format("%lld collisions over all pareto sweep runs",
              static_cast<long long>(points[0].collisions + points[1].collisions)));
}

// ---------------------------------------------------------------------------
// Obstruction.

std::string CheckObstruction() {
  Timer timer;
  SplitMix64 rng(4242);
  int infeasible = 0;
  std::string first_text;
  for (int i = 0; i < 20; ++i) {
    const PointRing ring =
        CirclePoints(100, 1.5, 0.15, 0.001 * (1.0 - UniformDouble(rng)), 1000 + i);
    const ObstructionCertificate cert = VerifyObstruction(ring);
    infeasible += cert.infeasible && ring.warnings.empty();
    if (i == 0) first_text = FormatCertificate(ring, cert);
  }
  int agree = 0;
  int feasible_small = 0;
  int revalidated = 0;
  for (int i = 0; i < 50; ++i) {
    const PointRing ring = testing::RandomSmallRing(rng);
    const ObstructionCertificate cert = VerifyObstruction(ring);
    agree += cert.infeasible == !testing::BruteForceFeasible(ring);
    if (cert.counterexample) {
      ++feasible_small;
      revalidated += !FindLoss(ring, *cert.counterexample, ring.margin).has_value();
    }
  }
  const PointRing flat = CirclePoints(100, 1.5, 1e-4, 0.0, 5);
  const ObstructionCertificate flat_cert = VerifyObstruction(flat);
  const bool flat_ok = flat_cert.counterexample.has_value() &&
                       !FindLoss(flat, *flat_cert.counterexample, 0.0).has_value();
  const double seconds = timer.Seconds();
  Report(infeasible == 20 && agree == 50 && revalidated == feasible_small &&
             flat_ok && seconds <= 60.0,
         "obstruction",
         Format("%d/20 standard rings (n=100, r=0.15) infeasible; dynamic program agrees "
                "with brute force on %d/50 small rings (%d feasible, all "
                "counterexamples rechecked: %s); radius 1e-4 ring %s; %.1f s "
                "(need <= 60 s)",
                infeasible, agree, feasible_small,
                revalidated == feasible_small ? "yes" : "no",
                flat_ok ? "has a rechecked counterexample" : "FAILED", seconds));
  return first_text;
}

// ---------------------------------------------------------------------------
// Determinism.

void CheckDeterminism(const CollisionRuns& runs, const std::string& certificate) {
  Timer timer;
  ExperimentConfig config;
  config.horizon = kHorizon;
  config.record_checkpoints = true;
  int same = 0;
  int total = 0;
  for (int i = 0; i < kReplayInstances; ++i) {
    for (int seed = 0; seed < kReplaySeeds; ++seed) {
      const std::string again = Serialize(RunTrial(config, runs.instances[i], seed));
      same += again == runs.serialized[total];
      ++total;
    }
  }
  ExperimentConfig small;
  small.horizon = 20000;
  small.trials = 8;
  const std::vector<double> grid = {0.05, 0.5};
  small.threads = 1;
  const std::string serial = FormatCsv(Sweep(small, grid, 3));
  small.threads = 4;
  const std::string threaded = FormatCsv(Sweep(small, grid, 3));
  SplitMix64 rng(4242);
  const PointRing ring =
      CirclePoints(100, 1.5, 0.15, 0.001 * (1.0 - UniformDouble(rng)), 1000);
  const bool cert_same = FormatCertificate(ring, VerifyObstruction(ring, 3)) == certificate;
  Report(same == total && serial == threaded && cert_same, "determinism",
         Format("%d/%d replayed trials byte-identical; sweep CSV with 1 and 4 "
                "threads %s; obstruction certificate %s (%.1f s)",
                same, total, serial == threaded ? "identical" : "DIFFERENT",
                cert_same ? "identical" : "DIFFERENT", timer.Seconds()));
}

}  // namespace
}  // namespace mpb

int main() {
  using namespace mpb;
  Timer total;
  const CollisionRuns runs = CheckCollisions();
  CheckTopology();
  CheckCover();
  CheckColoring();
  CheckLatePhase();
  CheckPareto();
  const std::string certificate = CheckObstruction();
  CheckDeterminism(runs, certificate);
  std::printf("%s: %d criteria failed, %.1f s total\n",
              failures == 0 ? "ALL PASS" : "SOME FAILED", failures,
              total.Seconds());
  return failures == 0 ? 0 : 1;
}
