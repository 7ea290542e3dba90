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

// Command-line front end: simulate, sweep, obstruction, tree, schedule.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mpb/coloring.h"
#include "mpb/dop.h"
#include "mpb/environment.h"
#include "mpb/harness.h"
#include "mpb/obstruction.h"
#include "mpb/report.h"
#include "mpb/schedule.h"

namespace mpb {
namespace {

struct CommonFlags {
  int k = 3;
  int m = 2;
  std::int64_t horizon = 200000;
  std::vector<double> middle_deltas = {0.1};
  int trials = 1;
  std::uint64_t seed = 1;
  std::uint64_t private_seed = 2;
  std::string feedback = "undetectable";
  std::string algorithm = "pareto";
  bool paper_constants = false;
  double c_eps = 3.0;
  double c_t0 = 20.0;
  int threads = 0;
  std::string out;
};

ExperimentConfig MakeConfig(const CommonFlags& f) {
  ExperimentConfig config;
  config.k = f.k;
  config.m = f.m;
  config.horizon = f.horizon;
  config.deltas = DefaultDeltas(f.horizon, f.middle_deltas);
  config.trials = f.trials;
  config.shared_seed = f.seed;
  config.private_seed_base = f.private_seed;
  config.feedback = ParseFeedbackKind(f.feedback);
  config.algorithm = ParseAlgorithm(f.algorithm);
  config.consts.paper_mode = f.paper_constants;
  config.consts.c_eps = f.c_eps;
  config.consts.c_t0 = f.c_t0;
  config.threads = f.threads;
  ValidateConfig(config);
  return config;
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Instance ChooseInstance(const CommonFlags& f, const std::vector<double>& means,
                        const std::string& instance_file, double gap) {
  if (!instance_file.empty()) return Instance::Parse(ReadFile(instance_file));
  if (!means.empty()) return Instance(means, f.m);
  // Top m arms at 0.5 + gap/2, the rest at 0.5 - gap/2.
  return SampleInstances(f.k, f.m, gap, 1, 0).front();
}

void Emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
  } else {
    WriteFile(path, text);
  }
}

int RunSimulate(const CommonFlags& f, const std::vector<double>& means,
                const std::string& instance_file, double gap, int seed_index,
                bool checkpoints) {
  ExperimentConfig config = MakeConfig(f);
  config.record_checkpoints = checkpoints;
  const Instance instance = ChooseInstance(f, means, instance_file, gap);
  if (instance.num_arms() != config.k || instance.num_players() != config.m) {
    throw std::invalid_argument("instance does not match --k/--m");
  }
  std::string text = "instance: " + instance.ToString() + "\n";
  char buf[256];
  std::snprintf(buf, sizeof(buf), "gap: %.17g\nalgorithm: %s\nfeedback: %s\n",
                instance.Gap(), AlgorithmName(config.algorithm).c_str(),
                FeedbackKindName(config.feedback).c_str());
  text += buf;
  if (config.trials == 1) {
    const TrialResult r = RunTrial(config, instance, seed_index);
    text += FormatTrialResult(r);
    text += "trajectory:";
    for (const auto& [t, v] : r.trajectory) {
      std::snprintf(buf, sizeof(buf), " %lld:%.6g", static_cast<long long>(t), v);
      text += buf;
    }
    text += "\n";
  } else {
    const std::vector<TrialResult> results = RunTrials(config, instance);
    double sum = 0;
    double sum_sq = 0;
    std::int64_t collisions = 0;
    int path_bad = 0;
    for (const TrialResult& r : results) {
      sum += r.pseudo_regret;
      sum_sq += r.pseudo_regret * r.pseudo_regret;
      collisions += r.collisions;
      path_bad += r.path_violation_t >= 0;
    }
    const int n = static_cast<int>(results.size());
    const double mean = sum / n;
    const double var = std::max(0.0, (sum_sq - n * mean * mean) / (n - 1));
    std::snprintf(buf, sizeof(buf),
                  "trials: %d\nmean_pseudo_regret: %.17g\nstderr: %.17g\n"
                  "collisions: %lld\npath_violations: %d\n",
                  n, mean, std::sqrt(var / n), static_cast<long long>(collisions),
                  path_bad);
    text += buf;
  }
  Emit(f.out, text);
  return 0;
}

int RunSweep(const CommonFlags& f, const std::vector<double>& gaps,
             int instances) {
  const ExperimentConfig config = MakeConfig(f);
  const std::vector<SweepPoint> points = Sweep(config, gaps, instances);
  const std::string csv = FormatCsv(points);
  if (f.out.empty()) {
    std::cout << csv;
  } else {
    WriteFile(f.out + ".csv", csv);
    WriteFile(f.out + ".svg",
              FormatSvg(points, NormalizeSchedule(EffectiveDeltas(config))));
    std::cout << "wrote " << f.out << ".csv and " << f.out << ".svg\n";
  }
  return 0;
}

int RunObstruction(const CommonFlags& f, int n, double center_sum,
                   double radius, double perturbation, double gamma,
                   int window) {
  PointRing ring = CirclePoints(n, center_sum, radius, perturbation, f.seed);
  ring.gamma = gamma;
  ring.window = window;
  const ObstructionCertificate cert =
      VerifyObstruction(ring, f.threads > 0 ? f.threads : 1);
  std::string text = FormatCertificate(ring, cert);
  if (cert.counterexample) {
    const bool clean = !FindLoss(ring, *cert.counterexample, 0.0).has_value();
    text += std::string("counterexample_recheck: ") + (clean ? "ok" : "failed") + "\n";
  }
  Emit(f.out, text);
  return 0;
}

int RunTree(const CommonFlags& f, const std::string& vertex_text,
            const std::vector<int>& priority_one_based) {
  std::string text;
  char buf[256];
  const TreeCounts counts = CountTree(f.k, f.m);
  std::snprintf(buf, sizeof(buf), "k: %d\nm: %d\nleaves: %lld\ninner: %lld\nmax_depth: %d\n",
                f.k, f.m, static_cast<long long>(counts.leaves),
                static_cast<long long>(counts.inner), counts.max_depth);
  text += buf;
  if (!vertex_text.empty()) {
    const Dop p = Dop::Parse(vertex_text, f.m);
    if (p.num_arms() != f.k) throw std::invalid_argument("vertex does not match --k");
    std::vector<Arm> priority = IdentityPriority(f.k);
    if (!priority_one_based.empty()) {
      priority.clear();
      for (int a : priority_one_based) priority.push_back(a - 1);
    }
    ValidatePriority(priority, f.k);
    auto set_text = [](ArmMask set) {
      std::string s = "{";
      for (Arm a : ArmsOf(set)) s += (s.size() > 1 ? "," : "") + std::to_string(a + 1);
      return s + "}";
    };
    text += "vertex: " + p.ToString() + "\n";
    std::snprintf(buf, sizeof(buf), "depth: %d\nleaf: %s\n", p.depth(),
                  p.IsLeaf() ? "yes" : "no");
    text += buf;
    text += "a_set: " + set_text(p.ab_sets().a_set) + "\n";
    text += "b_set: " + set_text(p.ab_sets().b_set) + "\n";
    text += "parent: " + (p.Parent() ? p.Parent()->ToString() : std::string("none")) + "\n";
    text += "children: " + std::to_string(p.Children().size()) + "\n";
    text += "coloring:";
    for (Arm a : Color(p, priority)) text += " " + std::to_string(a + 1);
    text += "\n";
  }
  Emit(f.out, text);
  return 0;
}

int RunSchedule(const CommonFlags& f) {
  ExperimentConfig config = MakeConfig(f);
  const Schedule s = MakeSchedule(EffectiveDeltas(config), config.k,
                                  config.horizon, config.consts, config.shared_seed);
  std::string text;
  char buf[256];
  std::snprintf(buf, sizeof(buf), "k: %d\nT: %lld\nmode: %s\nwarmup: %lld\n",
                s.k, static_cast<long long>(s.horizon),
                s.consts.paper_mode ? "paper" : "desk",
                static_cast<long long>(s.warmup));
  text += buf;
  text += "phase gap start delta eps_at_start\n";
  for (std::size_t j = 0; j < s.deltas.size(); ++j) {
    std::snprintf(buf, sizeof(buf), "%zu %.6g %lld %.6g %.6g\n", j, s.deltas[j],
                  static_cast<long long>(s.phase_starts[j]), s.delta_values[j],
                  s.Epsilon(std::max<std::int64_t>(1, s.phase_starts[j])));
    text += buf;
  }
  text += "t eps_t\n";
  for (double t = 1; t <= static_cast<double>(s.horizon); t *= 10) {
    std::snprintf(buf, sizeof(buf), "%.0f %.6g\n", t, s.Epsilon(static_cast<std::int64_t>(t)));
    text += buf;
  }
  if (s.vacuous) text += "warning: last phase starts after the horizon\n";
  Emit(f.out, text);
  return 0;
}

}  // namespace
}  // namespace mpb

int main(int argc, char** argv) {
  using namespace mpb;
  CLI::App app{"Collision-free multi-player bandit experiments"};
  app.set_config("--config", "", "File with one key=value per line");
  app.fallthrough();
  app.require_subcommand(1);

  CommonFlags f;
  app.add_option("--k", f.k, "Number of arms")->capture_default_str();
  app.add_option("--m", f.m, "Number of players")->capture_default_str();
  app.add_option("--T", f.horizon, "Horizon")->capture_default_str();
  app.add_option("--deltas", f.middle_deltas,
                 "Schedule gaps strictly between 1 and T^-1/2; the endpoints "
                 "are always added")
      ->delimiter(',');
  app.add_option("--trials", f.trials, "Seeds per instance")->capture_default_str();
  app.add_option("--seed", f.seed, "Shared seed")->capture_default_str();
  app.add_option("--private-seed", f.private_seed, "Base of the private seeds")
      ->capture_default_str();
  app.add_option("--feedback", f.feedback,
                 "undetectable, weak, strong, full_info or adversarial")
      ->capture_default_str();
  app.add_option("--algorithm", f.algorithm,
                 "pareto, single_phase_baseline or naive_greedy")
      ->capture_default_str();
  app.add_flag("--paper-constants", f.paper_constants,
               "Use the analysis constants instead of the desk constants");
  app.add_option("--c-eps", f.c_eps, "Desk multiplier of eps_t")->capture_default_str();
  app.add_option("--c-t0", f.c_t0, "Desk multiplier of the warm-up length")
      ->capture_default_str();
  app.add_option("--threads", f.threads, "Worker threads (0: all cores)")
      ->capture_default_str();
  app.add_option("--out", f.out, "Output path (sweep: prefix for .csv/.svg)");

  CLI::App* simulate = app.add_subcommand("simulate", "Run trials on one instance");
  std::vector<double> means;
  std::string instance_file;
  double gap = 0.2;
  int seed_index = 0;
  bool checkpoints = false;
  simulate->add_option("--p", means, "Arm means")->delimiter(',');
  simulate->add_option("--instance", instance_file, "File with 'K m p1 ... pK'");
  simulate->add_option("--gap", gap, "Gap of the default two-level instance")
      ->capture_default_str();
  simulate->add_option("--seed-index", seed_index, "Seed index of a single trial")
      ->capture_default_str();
  simulate->add_flag("--checkpoints", checkpoints, "Record (n, q, N) snapshots");

  CLI::App* sweep = app.add_subcommand("sweep", "Regret over a grid of gaps");
  std::vector<double> gaps = {0.05, 0.1, 0.2, 0.5};
  int instances = 10;
  sweep->add_option("--gaps", gaps, "Gap grid")->delimiter(',');
  sweep->add_option("--instances", instances, "Instances per gap")->capture_default_str();

  CLI::App* obstruction =
      app.add_subcommand("obstruction", "Check the labeling obstruction on a ring");
  int n = 100;
  double center_sum = 1.5;
  double radius = 0.15;
  double perturbation = 0.001;
  double gamma = 0.01;
  int window = 2;
  obstruction->add_option("--n", n, "Points on the ring")->capture_default_str();
  obstruction->add_option("--center-sum", center_sum, "Coordinate sum of the plane")
      ->capture_default_str();
  obstruction->add_option("--radius", radius, "Ring radius")->capture_default_str();
  obstruction->add_option("--perturbation", perturbation, "Maximum displacement")
      ->capture_default_str();
  obstruction->add_option("--gamma", gamma, "Loss threshold")->capture_default_str();
  obstruction->add_option("--window", window, "Index distance of checked pairs")
      ->capture_default_str();

  CLI::App* tree = app.add_subcommand("tree", "Inspect the tree of vertices");
  std::string vertex;
  std::vector<int> priority;
  tree->add_option("--vertex", vertex, "Vertex to inspect, e.g. '[{1}>_1{2,3}]'");
  tree->add_option("--priority", priority, "1-based arm priority for the coloring")
      ->delimiter(',');

  CLI::App* schedule = app.add_subcommand("schedule", "Print the phase schedule");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*simulate) return RunSimulate(f, means, instance_file, gap, seed_index, checkpoints);
    if (*sweep) return RunSweep(f, gaps, instances);
    if (*obstruction) {
      return RunObstruction(f, n, center_sum, radius, perturbation, gamma, window);
    }
    if (*tree) return RunTree(f, vertex, priority);
    if (*schedule) return RunSchedule(f);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
