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

#ifndef MPB_OBSTRUCTION_H_
#define MPB_OBSTRUCTION_H_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mpb {

// Exact search for two-player, three-arm strategies that avoid losses on a
// ring of points around the diagonal x = y = z.

using Point3 = std::array<double, 3>;

// Arms played by the two players at a point (0-based, equal arms allowed).
struct Label {
  int first = 0;
  int second = 0;

  int Code() const { return 3 * first + second; }
  static Label FromCode(int code) { return {code / 3, code % 3}; }
  friend bool operator==(const Label&, const Label&) = default;
};

inline constexpr int kNumLabels = 9;

// Sum of the two largest coordinates.
double Value(const Point3& u);

// Expected reward when the first player sees u and the second sees another
// point labelled `label_v`: 0 if they pick the same arm, otherwise
// u[first of u] + u[second of v].
double Gain(Label label_u, Label label_v, const Point3& u);

// value(u) - gain >= gamma.
bool IsGammaLoss(const Point3& u, const Point3& v, Label label_u,
                 Label label_v, double gamma);

struct PointRing {
  std::vector<Point3> points;
  double gamma = 0.01;
  int window = 2;
  // Losses are counted only when value - gain >= gamma + margin, so an
  // "infeasible" verdict cannot hinge on rounding.
  double margin = 1e-12;

  double center_sum = 0.0;
  double radius = 0.0;
  double perturbation = 0.0;
  std::uint64_t seed = 0;
  // Preconditions of the obstruction statement that this ring violates.
  std::vector<std::string> warnings;

  int size() const { return static_cast<int>(points.size()); }
};

// n evenly spaced points on the circle of `radius` around the diagonal in the
// plane x + y + z = center_sum, each moved by an independent uniform vector
// in the ball of radius `perturbation`.
PointRing CirclePoints(int n, double center_sum, double radius,
                       double perturbation, std::uint64_t seed);

// Loss test used by the search: the margin-adjusted predicate.
bool RingLoss(const PointRing& ring, int j, int j_prime, Label label_j,
              Label label_j_prime);

struct DpStats {
  std::int64_t start_states = 0;
  std::int64_t states_per_layer = 0;
  std::int64_t transitions = 0;
  std::int64_t reachable_total = 0;
  std::int64_t feasible_starts = 0;
};

struct ObstructionCertificate {
  bool infeasible = false;
  // A labeling with no loss on any in-window ordered pair, when one exists.
  std::optional<std::vector<Label>> counterexample;
  DpStats stats;
};

// Decides whether some labeling of the ring avoids every loss on ordered
// pairs at cyclic distance 1..window. `threads` > 1 splits the start states.
ObstructionCertificate VerifyObstruction(const PointRing& ring,
                                         int threads = 1);

// Direct recheck of a labeling with the exact (margin-free) predicate.
// Returns the first offending ordered pair, if any.
std::optional<std::pair<int, int>> FindLoss(const PointRing& ring,
                                            const std::vector<Label>& labels,
                                            double margin);

std::string FormatCertificate(const PointRing& ring,
                              const ObstructionCertificate& cert);

}  // namespace mpb

#endif  // MPB_OBSTRUCTION_H_
