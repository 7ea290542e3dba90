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

#include <set>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "mpb/random.h"

namespace mpb {
namespace {

ArmMask Arms(std::initializer_list<int> one_based) {
  ArmMask mask = 0;
  for (int a : one_based) mask |= ArmBit(a - 1);
  return mask;
}

TEST_CASE("root vertex") {
  const Dop root = Dop::Root(3, 2);
  CHECK(root.ToString() == "[{1,2,3}]");
  CHECK(root.IsRoot());
  CHECK_FALSE(root.IsLeaf());
  CHECK(root.ab_sets().a_set == 0);
  CHECK(root.ab_sets().b_set == Arms({1, 2, 3}));
  CHECK_FALSE(root.Parent().has_value());
  CHECK_THROWS_AS(Dop::Root(2, 2), std::invalid_argument);
  CHECK_THROWS_AS(Dop::Root(3, 0), std::invalid_argument);
}

TEST_CASE("children of the root of T(3,2)") {
  const Dop root = Dop::Root(3, 2);
  const std::vector<Dop> children = root.Children();
  CHECK(children.size() == 6);
  std::set<std::string> names;
  for (const Dop& c : children) {
    names.insert(c.ToString());
    CHECK(c.Parent() == root);
    CHECK(c.depth() == 1);
  }
  CHECK(names.size() == 6);
  CHECK(names.count("[{1}>_1{2,3}]") == 1);
  CHECK(names.count("[{2,3}>_1{1}]") == 1);
}

TEST_CASE("tree membership follows the undecided block") {
  CHECK_NOTHROW(Dop::Parse("[{4,8}>_2{2,6,7}>_1{1,3,5}]", 2));
  CHECK_THROWS_AS(Dop::Parse("[{4,8}>_1{2,6,7}>_2{1,3,5}]", 2),
                  std::invalid_argument);
}

TEST_CASE("parent merges the newest inequality") {
  const Dop p = Dop::Parse("[{1,3,5}>_1{2,6,7}>_2{4}]", 4);
  CHECK(p.Parent()->ToString() == "[{1,3,5}>_1{2,4,6,7}]");
  CHECK(p.last_cut() == 1);
}

TEST_CASE("parse rejects malformed text") {
  for (const char* bad : {"", "[]", "[{1,2}", "[{1,2}>{3}]", "[{1,1}>_1{2}]",
                          "[{1,3}>_1{4}]", "[{1}>_2{2,3}]", "[{1,2,3}] x"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(Dop::Parse(bad, 2), std::invalid_argument);
  }
  CHECK(Dop::Parse(" [ {2} >_1 {1, 3} ] ", 2).ToString() == "[{2}>_1{1,3}]");
}

TEST_CASE("a and b sets") {
  const Dop p = Dop::Parse("[{1}>_1{2,3}]", 2);
  CHECK(p.ab_sets().a_set == Arms({1}));
  CHECK(p.ab_sets().b_set == Arms({2, 3}));
  const Dop leaf = Dop::Parse("[{1,2}>_1{3}]", 2);
  CHECK(leaf.IsLeaf());
  CHECK(leaf.ab_sets().a_set == Arms({1, 2}));
  CHECK(leaf.ab_sets().b_set == 0);
  CHECK(leaf.Children().empty());
  // Upper block too big: it becomes the undecided set.
  const Dop big = Dop::Parse("[{1,2,3}>_1{4}]", 2);
  CHECK(big.ab_sets().a_set == 0);
  CHECK(big.ab_sets().b_set == Arms({1, 2, 3}));
}

TEST_CASE("range and gap") {
  const std::vector<double> x = {0.9, 0.5, 0.2};
  CHECK(RangeOf(Dop::Root(3, 2), x) == doctest::Approx(0.7));
  const std::vector<double> flat = {0.4, 0.4, 0.4};
  CHECK(RangeOf(Dop::Root(3, 2), flat) == 0.0);
  CHECK(RangeOf(Dop::Parse("[{1}>_1{2,3}]", 2), x) == doctest::Approx(0.3));
  CHECK(GapOf(Dop::Parse("[{1}>_1{2,3}]", 2), x) == doctest::Approx(0.4));
  CHECK(GapOf(Dop::Parse("[{1,2}>_1{3}]", 2), x) == doctest::Approx(0.3));
  CHECK(GapOf(Dop::Parse("[{2}>_1{1,3}]", 2), x) == doctest::Approx(-0.4));
  CHECK_THROWS_AS(GapOf(Dop::Root(3, 2), x), std::invalid_argument);
  CHECK_THROWS_AS(RangeOf(Dop::Parse("[{1,2}>_1{3}]", 2), x),
                  std::invalid_argument);
}

TEST_CASE("top-m split") {
  const std::vector<double> x = {0.9, 0.5, 0.2};
  CHECK(TopMSplit(x, 2).ToString() == "[{1,2}>_1{3}]");
  const std::vector<double> tied = {0.5, 0.5, 0.5};
  CHECK(TopMSplit(tied, 2).ToString() == "[{1,2}>_1{3}]");
  SplitMix64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> y(5);
    for (double& v : y) v = UniformDouble(rng);
    const std::vector<Arm> order = SortedArms(y);
    CHECK(GapOf(TopMSplit(y, 3), y) == y[order[2]] - y[order[3]]);
  }
}

TEST_CASE("feasible sets") {
  const std::vector<ArmMask> root = FeasibleSets(Dop::Root(3, 2));
  CHECK(root == std::vector<ArmMask>{Arms({1, 2}), Arms({1, 3}), Arms({2, 3})});
  CHECK(FeasibleSets(Dop::Parse("[{1,2}>_1{3}]", 2)).size() == 1);
  const std::vector<ArmMask> one = FeasibleSets(Dop::Parse("[{1}>_1{2,3}]", 2));
  CHECK(one == std::vector<ArmMask>{Arms({1, 2}), Arms({1, 3})});
}

TEST_CASE("tree distance") {
  const Dop root = Dop::Root(4, 2);
  const std::vector<Dop> kids = root.Children();
  CHECK(TreeDistance(root, root) == 0);
  CHECK(TreeDistance(root, kids[0]) == 1);
  CHECK(TreeDistance(kids[0], kids[1]) == 2);
  const Dop deep = Dop::Parse("[{1}>_1{2}>_2{3,4}]", 2);
  CHECK(TreeDistance(deep, root) == 2);
  CHECK(TreeDistance(deep, Dop::Parse("[{1}>_1{2,3,4}]", 2)) == 1);
  CHECK(TreeDistance(deep, Dop::Parse("[{2}>_1{1,3,4}]", 2)) == 3);
}

TEST_CASE("T(3,2) has 9 leaves and 4 inner vertices") {
  const TreeCounts counts = CountTree(3, 2);
  CHECK(counts.leaves == 9);
  CHECK(counts.inner == 4);
}

TEST_CASE("structural properties over small trees") {
  for (int k = 3; k <= 5; ++k) {
    for (int m = 1; m < k; ++m) {
      ForEachVertex(k, m, k, [&](const Dop& p) {
        const ArmSetPair sets = p.ab_sets();
        CHECK((sets.a_set & sets.b_set) == 0);
        if (p.IsLeaf()) {
          CHECK(Size(sets.a_set) == m);
          CHECK(sets.b_set == 0);
        } else {
          CHECK(Size(sets.a_set) < m);
          CHECK(Size(sets.b_set) >= 2);
          CHECK(p.Children().size() == (std::size_t{1} << Size(sets.b_set)) - 2);
        }
        for (const Dop& c : p.Children()) CHECK(c.Parent() == p);
        if (!p.IsRoot()) {
          CHECK(Dop::Parse(p.ToString(), m) == p);
          CHECK(p.Parent()->IsAncestorOf(p));
          CHECK_FALSE(p.IsAncestorOf(*p.Parent()));
          std::vector<ArmMask> blocks(p.blocks().begin(), p.blocks().end());
          std::vector<int> ineq;
          for (int i = 0; i < p.depth(); ++i) ineq.push_back(p.inequality(i));
          CHECK(Dop::FromBlocks(k, m, blocks, ineq) == p);
        }
      });
    }
  }
}

TEST_CASE("some prefix gap covers range over K at every internal vertex") {
  SplitMix64 rng(11);
  for (int k = 3; k <= 5; ++k) {
    for (int m = 1; m < k; ++m) {
      for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> x(k);
        for (double& v : x) v = UniformDouble(rng);
        ForEachVertex(k, m, k, [&](const Dop& p) {
          if (p.IsLeaf()) return;
          const std::vector<Arm> order = SortedArms(x, p.ab_sets().b_set);
          double best = -1.0;
          ArmMask upper = 0;
          for (std::size_t j = 0; j + 1 < order.size(); ++j) {
            upper |= ArmBit(order[j]);
            best = std::max(best, GapOf(p.Split(upper), x));
          }
          CHECK(best >= RangeOf(p, x) / k);
        });
      }
    }
  }
}

}  // namespace
}  // namespace mpb
