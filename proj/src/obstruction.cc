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

#include "mpb/obstruction.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "mpb/random.h"

namespace mpb {

double Value(const Point3& u) {
  return std::max({u[0] + u[1], u[0] + u[2], u[1] + u[2]});
}

double Gain(Label label_u, Label label_v, const Point3& u) {
  if (label_u.first == label_v.second) return 0.0;
  return u[label_u.first] + u[label_v.second];
}

bool IsGammaLoss(const Point3& u, const Point3& /*v*/, Label label_u,
                 Label label_v, double gamma) {
  return Value(u) - Gain(label_u, label_v, u) >= gamma;
}

PointRing CirclePoints(int n, double center_sum, double radius,
                       double perturbation, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("ring needs at least one point");
  if (!(radius >= 0.0) || !(perturbation >= 0.0)) {
    throw std::invalid_argument("radius and perturbation must be nonnegative");
  }
  PointRing ring;
  ring.center_sum = center_sum;
  ring.radius = radius;
  ring.perturbation = perturbation;
  ring.seed = seed;
  if (n < 100) ring.warnings.push_back("fewer than 100 points");
  if (radius < 0.1) ring.warnings.push_back("radius below 0.1");
  if (perturbation > 0.001) ring.warnings.push_back("perturbation above 0.001");

  const double s2 = std::sqrt(2.0);
  const double s6 = std::sqrt(6.0);
  const Point3 e1 = {1 / s2, -1 / s2, 0.0};
  const Point3 e2 = {1 / s6, 1 / s6, -2 / s6};
  SplitMix64 rng(seed);
  ring.points.resize(n);
  for (int j = 0; j < n; ++j) {
    const double theta = 2.0 * std::numbers::pi * j / n;
    Point3 dx = {0.0, 0.0, 0.0};
    if (perturbation > 0.0) {
      double norm2 = 0.0;
      do {
        for (double& v : dx) v = UniformDouble(rng, -1.0, 1.0);
        norm2 = dx[0] * dx[0] + dx[1] * dx[1] + dx[2] * dx[2];
      } while (norm2 > 1.0);
    }
    for (int i = 0; i < 3; ++i) {
      ring.points[j][i] = center_sum / 3.0 +
                          radius * (std::cos(theta) * e1[i] +
                                    std::sin(theta) * e2[i]) +
                          perturbation * dx[i];
    }
  }
  return ring;
}

bool RingLoss(const PointRing& ring, int j, int /*j_prime*/, Label label_j,
              Label label_j_prime) {
  const Point3& u = ring.points[j];
  return Value(u) - Gain(label_j, label_j_prime, u) >= ring.gamma + ring.margin;
}

namespace {

int Power(int base, int exp) {
  int v = 1;
  for (int i = 0; i < exp; ++i) v *= base;
  return v;
}

class Search {
 public:
  explicit Search(const PointRing& ring)
      : n_(ring.size()),
        w_(ring.window),
        states_(Power(kNumLabels, ring.window)),
        high_(Power(kNumLabels, ring.window - 1)) {
    // ok_[(j * w + (d - 1)) * 81 + a * 9 + b]: positions j and j + d (mod n)
    // labelled a and b create no loss in either order.
    ok_.resize(static_cast<std::size_t>(n_) * w_ * kNumLabels * kNumLabels);
    for (int j = 0; j < n_; ++j) {
      for (int d = 1; d <= w_; ++d) {
        const int jp = (j + d) % n_;
        for (int a = 0; a < kNumLabels; ++a) {
          for (int b = 0; b < kNumLabels; ++b) {
            const Label la = Label::FromCode(a);
            const Label lb = Label::FromCode(b);
            ok_[Index(j, d, a, b)] =
                !RingLoss(ring, j, jp, la, lb) && !RingLoss(ring, jp, j, lb, la);
          }
        }
      }
    }
  }

  int num_states() const { return states_; }

  // Label of the r-th oldest position held in `state`.
  int Digit(int state, int r) const {
    return (state / Power(kNumLabels, w_ - 1 - r)) % kNumLabels;
  }

  bool PairOk(int j, int d, int a, int b) const {
    return ok_[Index(j, d, a, b)] != 0;
  }

  // Labels of positions 0..w-1 must be consistent among themselves.
  bool StartOk(int state) const {
    for (int r = 0; r < w_; ++r) {
      for (int s = r + 1; s < w_; ++s) {
        if (!PairOk(r, s - r, Digit(state, r), Digit(state, s))) return false;
      }
    }
    return true;
  }

  struct Result {
    bool feasible = false;
    std::vector<Label> labels;
    std::int64_t transitions = 0;
    std::int64_t reachable = 0;
  };

  Result Run(int start) const {
    Result result;
    // parent[pos][state]: predecessor at pos - 1, or -1 if unreachable.
    std::vector<std::vector<int>> parent(n_, std::vector<int>(states_, -1));
    std::vector<char> current(states_, 0);
    current[start] = 1;
    result.reachable = 1;
    for (int pos = w_ - 1; pos + 1 < n_; ++pos) {
      std::vector<char> next(states_, 0);
      const int np = pos + 1;
      for (int s = 0; s < states_; ++s) {
        if (!current[s]) continue;
        const int shifted = (s % high_) * kNumLabels;
        for (int label = 0; label < kNumLabels; ++label) {
          ++result.transitions;
          bool ok = true;
          for (int d = 1; d <= w_ && ok; ++d) {
            ok = PairOk(np - d, d, Digit(s, w_ - d), label);
          }
          if (!ok) continue;
          const int t = shifted + label;
          if (!next[t]) {
            next[t] = 1;
            parent[np][t] = s;
            ++result.reachable;
          }
        }
      }
      current.swap(next);
    }
    for (int s = 0; s < states_; ++s) {
      if (!current[s] || !Closes(s, start)) continue;
      result.feasible = true;
      result.labels.assign(n_, Label());
      int state = s;
      for (int pos = n_ - 1; pos >= w_ - 1; --pos) {
        result.labels[pos] = Label::FromCode(Digit(state, w_ - 1));
        if (pos >= w_) state = parent[pos][state];
      }
      for (int r = 0; r < w_; ++r) {
        result.labels[r] = Label::FromCode(Digit(start, r));
      }
      break;
    }
    return result;
  }

 private:
  std::size_t Index(int j, int d, int a, int b) const {
    return ((static_cast<std::size_t>(j) * w_ + (d - 1)) * kNumLabels + a) *
               kNumLabels + b;
  }

  // Pairs that wrap around: last w positions against the first w.
  bool Closes(int last, int start) const {
    for (int r = 0; r < w_; ++r) {
      const int a = n_ - w_ + r;
      for (int s = 0; s < w_; ++s) {
        const int d = s + n_ - a;
        if (d > w_) continue;
        if (!PairOk(a, d, Digit(last, r), Digit(start, s))) return false;
      }
    }
    return true;
  }

  int n_;
  int w_;
  int states_;
  int high_;
  std::vector<char> ok_;
};

}  // namespace

ObstructionCertificate VerifyObstruction(const PointRing& ring, int threads) {
  if (ring.window < 1 || ring.window > 4) {
    throw std::invalid_argument("window must be in [1, 4]");
  }
  if (ring.size() <= 2 * ring.window) {
    throw std::invalid_argument("ring needs more than 2 * window points");
  }
  const Search search(ring);
  const int states = search.num_states();
  std::vector<int> starts;
  for (int s = 0; s < states; ++s) {
    if (search.StartOk(s)) starts.push_back(s);
  }
  std::vector<Search::Result> results(starts.size());
  threads = std::max(1, std::min<int>(threads, static_cast<int>(starts.size())));
  if (threads == 1) {
    for (std::size_t i = 0; i < starts.size(); ++i) {
      results[i] = search.Run(starts[i]);
    }
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w) {
      pool.emplace_back([&, w]() {
        for (std::size_t i = w; i < starts.size(); i += threads) {
          results[i] = search.Run(starts[i]);
        }
      });
    }
    for (std::thread& t : pool) t.join();
  }

  ObstructionCertificate cert;
  cert.stats.start_states = static_cast<std::int64_t>(starts.size());
  cert.stats.states_per_layer = states;
  for (const Search::Result& r : results) {
    cert.stats.transitions += r.transitions;
    cert.stats.reachable_total += r.reachable;
    if (r.feasible) {
      ++cert.stats.feasible_starts;
      if (!cert.counterexample) cert.counterexample = r.labels;
    }
  }
  cert.infeasible = !cert.counterexample.has_value();
  return cert;
}

std::optional<std::pair<int, int>> FindLoss(const PointRing& ring,
                                            const std::vector<Label>& labels,
                                            double margin) {
  const int n = ring.size();
  if (static_cast<int>(labels.size()) != n) {
    throw std::invalid_argument("one label per point required");
  }
  for (int j = 0; j < n; ++j) {
    for (int d = -ring.window; d <= ring.window; ++d) {
      if (d == 0) continue;
      const int jp = ((j + d) % n + n) % n;
      if (jp == j) continue;
      const Point3& u = ring.points[j];
      if (Value(u) - Gain(labels[j], labels[jp], u) >= ring.gamma + margin) {
        return std::make_pair(j, jp);
      }
    }
  }
  return std::nullopt;
}

std::string FormatCertificate(const PointRing& ring,
                              const ObstructionCertificate& cert) {
  char buf[256];
  std::string out;
  out += std::string("status: ") +
         (cert.infeasible ? "infeasible" : "counterexample") + "\n";
  std::snprintf(buf, sizeof(buf),
                "n: %d\nwindow: %d\ngamma: %.17g\ncenter_sum: %.17g\n"
                "radius: %.17g\nperturbation: %.17g\nperturbation_seed: %llu\n",
                ring.size(), ring.window, ring.gamma, ring.center_sum,
                ring.radius, ring.perturbation,
                static_cast<unsigned long long>(ring.seed));
  out += buf;
  std::snprintf(buf, sizeof(buf),
                "start_states: %lld\nstates_per_layer: %lld\n"
                "transitions: %lld\nreachable_states: %lld\n"
                "feasible_starts: %lld\n",
                static_cast<long long>(cert.stats.start_states),
                static_cast<long long>(cert.stats.states_per_layer),
                static_cast<long long>(cert.stats.transitions),
                static_cast<long long>(cert.stats.reachable_total),
                static_cast<long long>(cert.stats.feasible_starts));
  out += buf;
  for (const std::string& w : ring.warnings) out += "warning: " + w + "\n";
  if (cert.counterexample) {
    out += "labels:";
    for (const Label& l : *cert.counterexample) {
      out += " (" + std::to_string(l.first + 1) + "," +
             std::to_string(l.second + 1) + ")";
    }
    out += "\n";
  }
  return out;
}

}  // namespace mpb
