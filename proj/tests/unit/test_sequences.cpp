#include "ksplit/error.hpp"
#include "ksplit/sequences.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

using namespace ksplit;

namespace {

FgGroup grp(std::vector<long> f, std::size_t free = 0) {
  std::vector<Integer> v(f.begin(), f.end());
  return FgGroup(v, free);
}

GroupHom hom(const FgGroup& a, const FgGroup& b, Matrix m) { return GroupHom(a, b, std::move(m)); }

bool restricts_to(const GroupHom& sigma, const SubgroupMap& tau) {
  for (std::size_t l = 0; l < tau.domain().generators().size(); ++l)
    if (sigma.apply(tau.domain().generators()[l]) != tau.generator_images()[l]) return false;
  return true;
}

}  // namespace

TEST(Exactness, SpecExamples) {
  FgGroup g = grp({2, 4}, 1);
  Complex id{{g, g}, {GroupHom::identity(g)}};
  EXPECT_TRUE(is_exact(id));

  FgGroup z = grp({}, 1), z2 = grp({2}), z4 = grp({4});
  Complex times_two{{z, z, z2}, {GroupHom::multiplication(z, 2), hom(z, z2, Matrix{{1}})}};
  EXPECT_TRUE(is_exact(times_two));

  Complex wrong{{z, z, z4}, {GroupHom::multiplication(z, 2), hom(z, z4, Matrix{{1}})}};
  EXPECT_TRUE(is_exact(wrong, 0));
  EXPECT_FALSE(is_exact(wrong, 1));
  EXPECT_TRUE(is_exact(wrong, 2));
  EXPECT_THROW(is_exact(wrong, 3), Error);
}

TEST(Exactness, ShortExactRejectsNonExact) {
  FgGroup z = grp({}, 1), z4 = grp({4});
  EXPECT_THROW(ShortExact(GroupHom::multiplication(z, 2), hom(z, z4, Matrix{{1}})), Error);
}

TEST(PureExact, SpecExamples) {
  FgGroup z = grp({}, 1), z2 = grp({2}), b = grp({2}, 1);
  ShortExact summand(hom(z2, b, Matrix{{1}, {0}}), hom(b, z, Matrix{{0, 1}}));
  EXPECT_TRUE(is_pure_exact(summand));
  ShortExact doubling(GroupHom::multiplication(z, 2), hom(z, z2, Matrix{{1}}));
  EXPECT_FALSE(is_pure_exact(doubling));
}

TEST(PureExact, ShuffledDirectSumsArePure) {
  // A + C with generators mixed by a random automorphism of the sum.
  std::mt19937_64 rng(21);
  const std::vector<FgGroup> parts{grp({2}), grp({4}), grp({2, 4}), grp({}, 1), grp({3})};
  for (int t = 0; t < 60; ++t) {
    FgGroup a = parts[rng() % parts.size()], c = parts[rng() % parts.size()];
    DirectSum ds = direct_sum({a, c});
    // Shear by a random hom C -> A and compose.
    GroupHom twist = GroupHom::identity(ds.group);
    for (int tries = 0; tries < 10; ++tries) {
      Matrix m(a.rank(), c.rank());
      for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = static_cast<long>(rng() % 5);
      try {
        GroupHom u(c, a, m);
        twist = GroupHom::identity(ds.group) + ds.injections[0].after(u).after(ds.projections[1]);
        break;
      } catch (const Error&) {
      }
    }
    Subgroup h = image(twist.after(ds.injections[0]));
    EXPECT_TRUE(is_pure_exact(extension_of(h)));
  }
}

TEST(Enumerate, SpecExamples) {
  FgGroup z2 = grp({2}), z4 = grp({4}), v = grp({2, 2});
  FgGroup zero;
  ShortExact to_zero(GroupHom::identity(z2), GroupHom::zero(z2, zero));
  EXPECT_EQ(enumerate_splittings(to_zero).size(), 1u);

  ShortExact nonsplit(hom(z2, z4, Matrix{{2}}), hom(z4, z2, Matrix{{1}}));
  EXPECT_TRUE(enumerate_splittings(nonsplit).empty());
  EXPECT_FALSE(find_splitting(nonsplit).has_value());

  ShortExact split(hom(z2, v, Matrix{{1}, {0}}), hom(v, z2, Matrix{{0, 1}}));
  auto all = enumerate_splittings(split);
  ASSERT_EQ(all.size(), 2u);
  for (const auto& s : all) EXPECT_TRUE(is_splitting(split, s));
}

TEST(Enumerate, BoundIsEnforced) {
  FgGroup big = grp({2, 2, 2, 2, 2, 2, 2, 2, 2});
  ShortExact s(GroupHom::zero(FgGroup(), big), GroupHom::identity(big));
  EXPECT_THROW(enumerate_splittings(s), Error);
  EXPECT_EQ(enumerate_splittings(s, 512).size(), 1u);
}

TEST(Constrained, FullAndEmptyPartial) {
  FgGroup z2 = grp({2}), v = grp({2, 2});
  ShortExact split(hom(z2, v, Matrix{{1}, {0}}), hom(v, z2, Matrix{{0, 1}}));
  auto all = enumerate_splittings(split);
  for (const auto& sigma : all) {
    SubgroupMap tau = SubgroupMap::restriction(Subgroup::whole(split.quotient()), sigma);
    auto got = find_splitting_constrained(split, tau);
    ASSERT_TRUE(got.has_value());
    EXPECT_EQ(*got, sigma);
  }
  auto first = find_splitting(split);
  ASSERT_TRUE(first.has_value());
  EXPECT_EQ(*first, all.front());
}

TEST(Constrained, RejectsNonSplittingPartial) {
  FgGroup z2 = grp({2}), v = grp({2, 2});
  ShortExact split(hom(z2, v, Matrix{{1}, {0}}), hom(v, z2, Matrix{{0, 1}}));
  SubgroupMap bad(Subgroup::whole(z2), v, {{1, 0}});
  EXPECT_THROW(find_splitting_constrained(split, bad), Error);
}

TEST(Constrained, GreedyFailsWhereSolverSucceeds) {
  FgGroup g = grp({2, 4, 4});
  ShortExact s = extension_of(Subgroup(g, {{1, 0, 0}}));
  ASSERT_EQ(s.quotient(), grp({4, 4}));
  Subgroup d(s.quotient(), {{2, 1}, {0, 2}});
  SubgroupMap tau(d, g, {{1, 2, 1}, {0, 0, 2}});
  EXPECT_FALSE(greedy_splitting(s, tau).has_value());
  auto sigma = find_splitting_constrained(s, tau);
  ASSERT_TRUE(sigma.has_value());
  EXPECT_TRUE(is_splitting(s, *sigma));
  EXPECT_TRUE(restricts_to(*sigma, tau));
  auto all = enumerate_splittings(s);
  EXPECT_NE(std::find(all.begin(), all.end(), *sigma), all.end());
}

TEST(Constrained, SolverMatchesEnumerationOnAllExtensions) {
  // Every quotient of small groups, with partials taken from restricting
  // each splitting to every subgroup of C.
  for (const oracle::Vec& inv : std::vector<oracle::Vec>{{2, 4}, {2, 2, 4}, {4, 4}, {3, 6}}) {
    FgGroup g(std::vector<Integer>(inv.begin(), inv.end()), 0);
    oracle::for_each_subgroup(inv, [&](const std::vector<oracle::Vec>& rows) {
      std::vector<Vector> gens(rows.size());
      for (std::size_t i = 0; i < rows.size(); ++i) gens[i].assign(rows[i].begin(), rows[i].end());
      ShortExact s = extension_of(Subgroup(g, gens));
      auto all = enumerate_splittings(s);
      auto solved = find_splitting(s);
      ASSERT_EQ(solved.has_value(), !all.empty());
      if (!solved) return;
      EXPECT_EQ(*solved, all.front());
      for (const auto& sigma : {all.front(), all.back()}) {
        std::vector<Integer> cf = s.quotient().invariant_factors();
        oracle::for_each_subgroup(oracle::Vec(cf.begin(), cf.end()), [&](const std::vector<oracle::Vec>& r2) {
          std::vector<Vector> g2(r2.size());
          for (std::size_t i = 0; i < r2.size(); ++i) g2[i].assign(r2[i].begin(), r2[i].end());
          SubgroupMap tau = SubgroupMap::restriction(Subgroup(s.quotient(), g2), sigma);
          auto ext = find_splitting_constrained(s, tau);
          ASSERT_TRUE(ext.has_value());
          EXPECT_TRUE(restricts_to(*ext, tau));
          // Lexicographically first member of the filtered enumeration.
          auto it = std::find_if(all.begin(), all.end(), [&](const GroupHom& x) { return restricts_to(x, tau); });
          EXPECT_EQ(*ext, *it);
        });
      }
    });
  }
}
