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

#include "mpb/dop.h"

#include <algorithm>
#include <cctype>
#include <limits>
#include <stdexcept>

#include "mpb/random.h"

namespace mpb {

std::vector<Arm> SortedArms(std::span<const double> x) {
  return SortedArms(x, FullMask(static_cast<int>(x.size())));
}

std::vector<Arm> SortedArms(std::span<const double> x, ArmMask subset) {
  std::vector<Arm> arms = ArmsOf(subset);
  std::stable_sort(arms.begin(), arms.end(),
                   [&x](Arm a, Arm b) { return x[a] > x[b]; });
  return arms;
}

namespace {

void CheckPlayers(int k, int m) {
  if (k < 2 || k > kMaxArms) {
    throw std::invalid_argument("arm count must be in [2, 64]");
  }
  if (m < 1 || m >= k) {
    throw std::invalid_argument("player count must satisfy 1 <= m < k");
  }
}

}  // namespace

Dop Dop::Root(int k, int m) {
  CheckPlayers(k, m);
  Dop root(k, m);
  root.blocks_.push_back(FullMask(k));
  return root;
}

Dop Dop::FromBlocks(int k, int m, std::span<const ArmMask> blocks,
                    std::span<const int> inequalities) {
  CheckPlayers(k, m);
  if (blocks.empty()) throw std::invalid_argument("no blocks");
  if (inequalities.size() + 1 != blocks.size()) {
    throw std::invalid_argument("need exactly one inequality between blocks");
  }
  ArmMask seen = 0;
  for (ArmMask b : blocks) {
    if (b == 0) throw std::invalid_argument("empty block");
    if (b & seen) throw std::invalid_argument("blocks overlap");
    seen |= b;
  }
  if (seen != FullMask(k)) {
    throw std::invalid_argument("blocks do not cover all arms");
  }
  const int j = static_cast<int>(inequalities.size());
  std::vector<bool> used(j + 1, false);
  for (int v : inequalities) {
    if (v < 1 || v > j || used[v]) {
      throw std::invalid_argument("inequality indices must be a permutation");
    }
    used[v] = true;
  }

  Dop p(k, m);
  p.blocks_.assign(blocks.begin(), blocks.end());
  for (int v : inequalities) p.inequalities_.push_back(static_cast<std::uint8_t>(v));

  // Walk to the root, checking that every inequality split the undecided set
  // of its parent.
  Dop cur = p;
  while (!cur.IsRoot()) {
    const int c = cur.last_cut();
    const ArmMask merged = cur.blocks_[c] | cur.blocks_[c + 1];
    Dop parent = *cur.Parent();
    if (parent.ab_sets().b_set != merged) {
      throw std::invalid_argument("not a vertex of the tree: " + p.ToString());
    }
    cur = std::move(parent);
  }
  return p;
}

Dop Dop::Parse(std::string_view text, int m) {
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  }
  auto fail = [&text]() {
    return std::invalid_argument("cannot parse vertex: " + std::string(text));
  };
  std::size_t pos = 0;
  auto expect = [&](char ch) {
    if (pos >= s.size() || s[pos] != ch) throw fail();
    ++pos;
  };
  auto number = [&]() {
    if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos]))) {
      throw fail();
    }
    int v = 0;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      v = v * 10 + (s[pos] - '0');
      if (v > 1000) throw fail();
      ++pos;
    }
    return v;
  };

  std::vector<ArmMask> blocks;
  std::vector<int> inequalities;
  int total = 0;
  int max_arm = 0;
  expect('[');
  while (true) {
    expect('{');
    ArmMask block = 0;
    while (true) {
      const int arm = number();
      if (arm < 1 || arm > kMaxArms) throw fail();
      if (Contains(block, arm - 1)) throw fail();
      block |= ArmBit(arm - 1);
      ++total;
      max_arm = std::max(max_arm, arm);
      if (pos < s.size() && s[pos] == ',') {
        ++pos;
        continue;
      }
      break;
    }
    expect('}');
    blocks.push_back(block);
    if (pos < s.size() && s[pos] == '>') {
      ++pos;
      expect('_');
      inequalities.push_back(number());
      continue;
    }
    break;
  }
  expect(']');
  if (pos != s.size()) throw fail();
  if (max_arm != total) throw fail();
  return FromBlocks(total, m, blocks, inequalities);
}

ArmSetPair Dop::ab_sets() const {
  ArmSetPair sets;
  int count = 0;
  for (ArmMask b : blocks_) {
    const int size = Size(b);
    if (count + size > m_) {
      if (count < m_) sets.b_set = b;
      return sets;
    }
    count += size;
    sets.a_set |= b;
  }
  return sets;
}

int Dop::last_cut() const {
  if (IsRoot()) throw std::invalid_argument("the root has no inequality");
  const auto it = std::max_element(inequalities_.begin(), inequalities_.end());
  return static_cast<int>(it - inequalities_.begin());
}

Dop Dop::Split(ArmMask upper) const {
  const ArmMask b = ab_sets().b_set;
  if (upper == 0 || upper == b || (upper & ~b) != 0) {
    throw std::invalid_argument("split must be a nonempty proper subset of B");
  }
  int index = 0;
  while (blocks_[index] != b) ++index;
  Dop child = *this;
  child.blocks_[index] = upper;
  child.blocks_.insert(child.blocks_.begin() + index + 1, b & ~upper);
  child.inequalities_.insert(child.inequalities_.begin() + index,
                             static_cast<std::uint8_t>(depth() + 1));
  return child;
}

void Dop::ForEachChild(const std::function<bool(const Dop&)>& visit) const {
  const ArmMask b = ab_sets().b_set;
  if (b == 0) return;
  // Proper nonempty submasks of b, largest first.
  for (ArmMask sub = (b - 1) & b; sub != 0; sub = (sub - 1) & b) {
    if (!visit(Split(sub))) return;
  }
}

std::vector<Dop> Dop::Children() const {
  std::vector<Dop> children;
  ForEachChild([&children](const Dop& child) {
    children.push_back(child);
    return true;
  });
  return children;
}

std::optional<Dop> Dop::Parent() const {
  if (IsRoot()) return std::nullopt;
  const int c = last_cut();
  Dop parent = *this;
  parent.blocks_[c] |= parent.blocks_[c + 1];
  parent.blocks_.erase(parent.blocks_.begin() + c + 1);
  parent.inequalities_.erase(parent.inequalities_.begin() + c);
  return parent;
}

Dop Dop::Ancestor(int target_depth) const {
  if (target_depth < 0 || target_depth > depth()) {
    throw std::out_of_range("ancestor depth out of range");
  }
  if (target_depth == depth()) return *this;
  Dop a(k_, m_);
  ArmMask acc = blocks_[0];
  for (int i = 0; i < depth(); ++i) {
    if (inequalities_[i] <= target_depth) {
      a.blocks_.push_back(acc);
      a.inequalities_.push_back(inequalities_[i]);
      acc = blocks_[i + 1];
    } else {
      acc |= blocks_[i + 1];
    }
  }
  a.blocks_.push_back(acc);
  return a;
}

bool Dop::IsAncestorOf(const Dop& other) const {
  if (k_ != other.k_ || m_ != other.m_ || depth() > other.depth()) {
    return false;
  }
  return other.Ancestor(depth()) == *this;
}

std::string Dop::ToString() const {
  std::string out = "[";
  for (int i = 0; i < num_blocks(); ++i) {
    if (i > 0) {
      out += ">_";
      out += std::to_string(inequalities_[i - 1]);
    }
    out += '{';
    bool first = true;
    for (Arm a : ArmsOf(blocks_[i])) {
      if (!first) out += ',';
      out += std::to_string(a + 1);
      first = false;
    }
    out += '}';
  }
  out += ']';
  return out;
}

std::uint64_t Dop::Hash() const {
  std::uint64_t h = Mix64(static_cast<std::uint64_t>(k_) << 8 | m_);
  for (ArmMask b : blocks_) h = Mix64(h ^ b);
  for (std::uint8_t v : inequalities_) h = Mix64(h ^ v);
  return h;
}

int TreeDistance(const Dop& p, const Dop& q) {
  if (p.num_arms() != q.num_arms() || p.num_players() != q.num_players()) {
    throw std::invalid_argument("vertices belong to different trees");
  }
  const int shallow = std::min(p.depth(), q.depth());
  int lca = 0;
  for (int d = 1; d <= shallow; ++d) {
    if (p.Ancestor(d) != q.Ancestor(d)) break;
    lca = d;
  }
  return p.depth() + q.depth() - 2 * lca;
}

double RangeOf(const Dop& p, std::span<const double> x) {
  const ArmMask b = p.ab_sets().b_set;
  if (b == 0) throw std::invalid_argument("range is undefined on a leaf");
  double hi = -std::numeric_limits<double>::infinity();
  double lo = std::numeric_limits<double>::infinity();
  for (Arm a : ArmsOf(b)) {
    hi = std::max(hi, x[a]);
    lo = std::min(lo, x[a]);
  }
  return hi - lo;
}

double GapOf(const Dop& p, std::span<const double> x) {
  const int c = p.last_cut();
  double above = std::numeric_limits<double>::infinity();
  double below = -std::numeric_limits<double>::infinity();
  for (Arm a : ArmsOf(p.block(c))) above = std::min(above, x[a]);
  for (Arm a : ArmsOf(p.block(c + 1))) below = std::max(below, x[a]);
  return above - below;
}

Dop TopMSplit(std::span<const double> x, int m) {
  const int k = static_cast<int>(x.size());
  CheckPlayers(k, m);
  const std::vector<Arm> order = SortedArms(x);
  ArmMask top = 0;
  for (int i = 0; i < m; ++i) top |= ArmBit(order[i]);
  Dop p(k, m);
  p.blocks_.push_back(top);
  p.blocks_.push_back(FullMask(k) & ~top);
  p.inequalities_.push_back(1);
  return p;
}

std::vector<ArmMask> FeasibleSets(const Dop& p) {
  const ArmSetPair sets = p.ab_sets();
  const int quota = p.num_players() - Size(sets.a_set);
  std::vector<ArmMask> out;
  if (quota == 0) {
    out.push_back(sets.a_set);
    return out;
  }
  const ArmMask b = sets.b_set;
  for (ArmMask sub = b;; sub = (sub - 1) & b) {
    if (Size(sub) == quota) out.push_back(sets.a_set | sub);
    if (sub == 0) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

void Visit(const Dop& p, int max_depth,
           const std::function<void(const Dop&)>& visit) {
  visit(p);
  if (p.depth() >= max_depth) return;
  p.ForEachChild([&](const Dop& child) {
    Visit(child, max_depth, visit);
    return true;
  });
}

}  // namespace

void ForEachVertex(int k, int m, int max_depth,
                   const std::function<void(const Dop&)>& visit) {
  Visit(Dop::Root(k, m), max_depth, visit);
}

TreeCounts CountTree(int k, int m) {
  TreeCounts counts;
  ForEachVertex(k, m, k, [&counts](const Dop& p) {
    if (p.IsLeaf()) {
      ++counts.leaves;
    } else {
      ++counts.inner;
    }
    counts.max_depth = std::max(counts.max_depth, p.depth());
  });
  return counts;
}

}  // namespace mpb
