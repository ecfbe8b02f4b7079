#include "ksplit/error.hpp"
#include "ksplit/lattice.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

using namespace ksplit;

namespace {

IdealLattice chain() { return IdealLattice({"0", "J", "A"}, {{"0", "J"}, {"J", "A"}}); }

IdealLattice diamond() {
  return IdealLattice({"0", "I1", "I2", "A"}, {{"0", "I1"}, {"0", "I2"}, {"I1", "A"}, {"I2", "A"}});
}

IdealLattice m3() {
  return IdealLattice({"0", "x", "y", "z", "A"},
                      {{"0", "x"}, {"0", "y"}, {"0", "z"}, {"x", "A"}, {"y", "A"}, {"z", "A"}});
}

IdealLattice n5() {
  return IdealLattice({"0", "a", "b", "c", "A"}, {{"0", "a"}, {"a", "b"}, {"b", "A"}, {"0", "c"}, {"c", "A"}});
}

/// Lattice of down-sets of a random poset on `k` points, ids are bitmasks.
IdealLattice downsets(std::mt19937& rng, int k) {
  std::vector<std::vector<bool>> below(k, std::vector<bool>(k, false));
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      if (rng() % 3 == 0) below[i][j] = true;  // i < j
  for (int m = 0; m < k; ++m)
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j)
        if (below[i][m] && below[m][j]) below[i][j] = true;
  std::vector<int> sets;
  for (int s = 0; s < (1 << k); ++s) {
    bool down = true;
    for (int j = 0; j < k; ++j)
      for (int i = 0; i < k; ++i)
        if ((s >> j & 1) && below[i][j] && !(s >> i & 1)) down = false;
    if (down) sets.push_back(s);
  }
  auto name = [](int s) { return "S" + std::to_string(s); };
  std::vector<std::string> nodes;
  std::vector<Cover> covers;
  for (int s : sets) nodes.push_back(name(s));
  for (int s : sets)
    for (int t : sets)
      if (s != t && (s & t) == s && __builtin_popcount(t) == __builtin_popcount(s) + 1) covers.push_back({name(s), name(t)});
  return IdealLattice(nodes, covers);
}

}  // namespace

TEST(Lattice, RejectsMalformedGraphs) {
  EXPECT_THROW(IdealLattice({"a", "a"}, {}), Error);
  EXPECT_THROW(IdealLattice({"a"}, {{"a", "b"}}), Error);
  EXPECT_THROW(IdealLattice({"a", "b"}, {{"a", "b"}, {"b", "a"}}), Error);
  EXPECT_THROW(IdealLattice({"a"}, {{"a", "a"}}), Error);
}

TEST(Lattice, OrderAndBounds) {
  const auto d = diamond();
  EXPECT_TRUE(d.leq("0", "A"));
  EXPECT_FALSE(d.leq("I1", "I2"));
  EXPECT_EQ(d.bottom(), "0");
  EXPECT_EQ(d.top(), "A");
  EXPECT_EQ(d.join("I1", "I2"), "A");
  EXPECT_EQ(d.meet("I1", "I2"), "0");
  EXPECT_TRUE(d.is_lattice());
  EXPECT_FALSE(IdealLattice({"a", "b"}, {}).is_lattice());
}

TEST(Lattice, MaximalSubideals) {
  EXPECT_TRUE(diamond().maximal_subideals("0").empty());
  EXPECT_EQ(chain().maximal_subideals("A"), (std::vector<std::string>{"J"}));
  EXPECT_EQ(diamond().maximal_subideals("A"), (std::vector<std::string>{"I1", "I2"}));
  EXPECT_THROW(diamond().maximal_subideals("nope"), Error);
}

TEST(Lattice, NextIdeal) {
  const auto d = diamond();
  EXPECT_EQ(d.next_ideal({}), "0");
  EXPECT_EQ(d.next_ideal({"0", "I1", "I2", "A"}), std::nullopt);
  EXPECT_EQ(d.next_ideal({"0"}), "I1");
  EXPECT_EQ(d.next_ideal({"0", "I1"}), "I2");
  try {
    d.next_ideal({"I1"});
    FAIL() << "expected NotHereditary";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotHereditary);
  }
}

TEST(Lattice, Comaximal) {
  EXPECT_TRUE(diamond().is_comaximal_family("A", {"A"}));
  EXPECT_TRUE(diamond().is_comaximal_family("A", {"I1", "I2"}));
  const IdealLattice c({"0", "J1", "J2", "A"}, {{"0", "J1"}, {"J1", "J2"}, {"J2", "A"}});
  EXPECT_FALSE(c.is_comaximal_family("A", {"J1", "J2"}));
  try {
    c.is_comaximal_family("J1", {"J2"});
    FAIL() << "expected NotBelow";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotBelow);
  }
}

TEST(Lattice, Distributivity) {
  EXPECT_FALSE(diamond().distributivity_violation());
  EXPECT_FALSE(chain().distributivity_violation());
  EXPECT_TRUE(m3().distributivity_violation());
  EXPECT_TRUE(n5().distributivity_violation());
  EXPECT_TRUE(m3().is_lattice());
}

TEST(LatticeProperty, TraversalVisitsEveryNodeOnceThroughHereditaryPrefixes) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const IdealLattice lat = downsets(rng, 1 + trial % 4);
    std::set<std::string> done;
    while (auto next = lat.next_ideal(done)) {
      EXPECT_FALSE(done.count(*next));
      for (const auto& below : lat.strictly_below(*next)) EXPECT_TRUE(done.count(below));
      done.insert(*next);
      EXPECT_TRUE(lat.is_hereditary(done));
    }
    EXPECT_EQ(done.size(), lat.size());
  }
}

TEST(LatticeProperty, DownsetLatticesAreDistributiveWithComaximalSubideals) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const IdealLattice lat = downsets(rng, 1 + trial % 4);
    ASSERT_TRUE(lat.is_lattice());
    EXPECT_FALSE(lat.distributivity_violation());
    for (const auto& id : lat.nodes()) {
      const auto parts = lat.maximal_subideals(id);
      if (parts.size() > 1) EXPECT_TRUE(lat.is_comaximal_family(id, parts));
    }
  }
}
