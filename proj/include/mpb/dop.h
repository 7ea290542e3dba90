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

#ifndef MPB_DOP_H_
#define MPB_DOP_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "mpb/arms.h"

namespace mpb {

// Arms already fixed in the top m (a_set) and arms still to be split (b_set).
struct ArmSetPair {
  ArmMask a_set = 0;
  ArmMask b_set = 0;

  ArmMask relevant() const { return a_set | b_set; }
  friend bool operator==(const ArmSetPair&, const ArmSetPair&) = default;
};

// A doubly ordered partition of the K arms: an ordered list of blocks
// S_1 > S_2 > ... > S_j whose inequality signs carry the order in which they
// were inserted. Only vertices of the top-m identification tree can be
// constructed; the tree itself is never materialized.
//
// Blocks are stored as bitmasks, so structural equality is DOP equality.
class Dop {
 public:
  using Blocks = boost::container::small_vector<ArmMask, 6>;
  using Inequalities = boost::container::small_vector<std::uint8_t, 6>;

  // The single-block vertex. Requires 1 <= m < k <= kMaxArms.
  static Dop Root(int k, int m);

  // Builds a vertex from explicit blocks and inequality indices, where
  // inequalities[i] is the insertion index (1-based) of the sign between
  // blocks i and i+1. Throws std::invalid_argument unless the result is a
  // vertex of the tree.
  static Dop FromBlocks(int k, int m, std::span<const ArmMask> blocks,
                        std::span<const int> inequalities);

  // Parses the rendering produced by ToString(), e.g. "[{1,3}>_1{2}]".
  // The arm count is inferred from the text.
  static Dop Parse(std::string_view text, int m);

  int num_arms() const { return k_; }
  int num_players() const { return m_; }
  int num_blocks() const { return static_cast<int>(blocks_.size()); }
  int depth() const { return num_blocks() - 1; }
  ArmMask block(int i) const { return blocks_[i]; }
  int inequality(int i) const { return inequalities_[i]; }
  const Blocks& blocks() const { return blocks_; }

  bool IsRoot() const { return blocks_.size() == 1; }
  bool IsLeaf() const { return Size(ab_sets().a_set) == m_; }

  ArmSetPair ab_sets() const;

  // Position of the most recently inserted inequality: it separates blocks
  // last_cut() and last_cut() + 1. Requires !IsRoot().
  int last_cut() const;

  // Child obtained by splitting b_set into `upper` > (b_set \ upper).
  // `upper` must be a nonempty proper subset of b_set.
  Dop Split(ArmMask upper) const;

  // Lazily visits all 2^|B| - 2 children; stops early when `visit` returns
  // false.
  void ForEachChild(const std::function<bool(const Dop&)>& visit) const;
  std::vector<Dop> Children() const;

  std::optional<Dop> Parent() const;

  // Ancestor at the given depth (0 <= depth <= this->depth()).
  Dop Ancestor(int depth) const;

  // True iff this vertex is an ancestor of `other` or equal to it.
  bool IsAncestorOf(const Dop& other) const;

  std::string ToString() const;
  std::uint64_t Hash() const;

  friend bool operator==(const Dop&, const Dop&) = default;

 private:
  Dop(int k, int m) : k_(k), m_(m) {}

  friend class PartitionBuilder;
  friend Dop TopMSplit(std::span<const double> x, int m);

  int k_ = 0;
  int m_ = 0;
  Blocks blocks_;
  Inequalities inequalities_;
};

// Graph distance in the tree.
int TreeDistance(const Dop& p, const Dop& q);

// Spread of x over b_set. Throws std::invalid_argument on a leaf.
double RangeOf(const Dop& p, std::span<const double> x);

// Cut size of the last inserted inequality: min of x over the block above it
// minus max of x over the block below it. Throws on the root.
double GapOf(const Dop& p, std::span<const double> x);

// [{top m arms of x} >_1 {rest}], ties broken by ascending arm index.
Dop TopMSplit(std::span<const double> x, int m);

// All m-subsets consistent with p: a_set plus any (m - |a_set|)-subset of
// b_set. Exponential; meant for small k.
std::vector<ArmMask> FeasibleSets(const Dop& p);

// Depth-first walk over every vertex up to max_depth (inclusive).
void ForEachVertex(int k, int m, int max_depth,
                   const std::function<void(const Dop&)>& visit);

struct TreeCounts {
  std::int64_t leaves = 0;
  std::int64_t inner = 0;
  int max_depth = 0;
};

TreeCounts CountTree(int k, int m);

}  // namespace mpb

#endif  // MPB_DOP_H_
