#include "ksplit/error.hpp"
#include "ksplit/fgab.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace ksplit;

namespace {

FgGroup grp(std::vector<long> f, std::size_t free = 0) {
  std::vector<Integer> v(f.begin(), f.end());
  return FgGroup(v, free);
}

}  // namespace

TEST(FgGroup, RejectsBrokenChains) {
  EXPECT_THROW(grp({2, 3}), Error);
  EXPECT_THROW(grp({1}), Error);
  EXPECT_THROW(grp({0}), Error);
  EXPECT_NO_THROW(grp({2, 4, 8}, 2));
}

TEST(FgGroup, ArithmeticReduces) {
  FgGroup g = grp({4}, 1);
  EXPECT_EQ(g.add({3, 5}, {2, -7}), (Vector{1, -2}));
  EXPECT_EQ(g.element_order({2, 0}), 2);
  EXPECT_EQ(g.element_order({1, 1}), 0);
  EXPECT_EQ(grp({2, 6}).elements().size(), 12u);
}

TEST(GroupHom, RejectsRelationViolations) {
  // Z/2 -> Z/4 sending 1 to 1 is not a homomorphism; to 2 it is.
  EXPECT_THROW(GroupHom(grp({2}), grp({4}), Matrix{{1}}), Error);
  EXPECT_NO_THROW(GroupHom(grp({2}), grp({4}), Matrix{{2}}));
  // Torsion cannot land in a free summand.
  EXPECT_THROW(GroupHom(grp({2}), grp({}, 1), Matrix{{1}}), Error);
  EXPECT_THROW(GroupHom(grp({2}), grp({4}), Matrix{{1, 0}}), Error);
}

TEST(Presentation, SpecExamples) {
  EXPECT_EQ(group_from_presentation(Matrix{{2, 0}, {0, 0}}, 2).group, grp({2}, 1));
  EXPECT_EQ(group_from_presentation(Matrix(0, 3), 3).group, grp({}, 3));
  EXPECT_EQ(group_from_relations(Matrix{{4, 2}, {2, 4}}), grp({2, 6}));
}

TEST(Presentation, CoordinateChangeIsConsistent) {
  Matrix rel{{4, 2}, {2, 4}};
  Presentation p = group_from_presentation(rel, 2);
  // Relations vanish, and from_canonical lifts the basis.
  for (const auto& r : rel.row_list()) EXPECT_TRUE(is_zero(p.group.reduce(p.to_canonical * r)));
  Matrix round = p.to_canonical * p.from_canonical;
  for (std::size_t i = 0; i < p.group.rank(); ++i)
    EXPECT_EQ(p.group.reduce(round.column(i)), p.group.basis_vector(i));
}

TEST(KernelImageQuotient, SpecExamples) {
  FgGroup z4 = grp({4});
  EXPECT_TRUE(kernel(GroupHom::zero(z4, z4)).is_whole());
  FgGroup z = grp({}, 1);
  Subgroup im = image(GroupHom::multiplication(z, 2));
  EXPECT_EQ(im, Subgroup(z, {{2}}));
  FgGroup g = grp({2}, 1);  // Z/2 + Z, torsion first
  Quotient q = quotient(g, Subgroup(g, {{1, 1}}));
  EXPECT_EQ(q.group, grp({2}));
  EXPECT_EQ(kernel(q.projection), Subgroup(g, {{1, 1}}));
  EXPECT_THROW(quotient(z4, Subgroup::whole(z)), Error);
}

TEST(KernelImageQuotient, QuotientMatchesCosetCount) {
  // Every subgroup of Z/2 + Z/4 + Z/4: the quotient's invariants agree with
  // the counting oracle.
  oracle::SmallGroup sg{{2, 4, 4}};
  FgGroup g = grp({2, 4, 4});
  oracle::for_each_subgroup(sg.moduli, [&](const std::vector<oracle::Vec>& rows) {
    std::vector<Vector> gens;
    for (const auto& r : rows) gens.emplace_back(r.begin(), r.end());
    Subgroup h(g, gens);
    Quotient q = quotient(g, h);
    oracle::ElementSet hs = oracle::generated(sg, rows);
    oracle::Vec want = oracle::quotient_invariants(sg, hs);
    std::vector<Integer> got = q.group.invariant_factors();
    ASSERT_EQ(got.size(), want.size());
    for (std::size_t i = 0; i < want.size(); ++i) EXPECT_EQ(got[i], want[i]);
    EXPECT_EQ(h.order(), oracle::count(hs));
    EXPECT_EQ(kernel(q.projection), h);
  });
}

TEST(MeetJoin, SpecExamples) {
  FgGroup z = grp({}, 1);
  Subgroup two(z, {{2}}), three(z, {{3}});
  EXPECT_EQ(meet(two, Subgroup::whole(z)), two);
  EXPECT_TRUE(join(two, three).is_whole());
  EXPECT_EQ(meet(two, three), Subgroup(z, {{6}}));
  EXPECT_THROW(meet(two, Subgroup::whole(grp({2}))), Error);
}

TEST(MeetJoin, AbsorptionOnRandomPairs) {
  std::mt19937_64 rng(5);
  FgGroup g = grp({2, 12}, 1);
  for (int t = 0; t < 200; ++t) {
    auto rnd = [&] {
      std::vector<Vector> gens;
      const int n = static_cast<int>(rng() % 3);
      for (int i = 0; i < n; ++i)
        gens.push_back(g.reduce({Integer(rng() % 2), Integer(rng() % 12), Integer(static_cast<long>(rng() % 7) - 3)}));
      return Subgroup(g, gens);
    };
    Subgroup h = rnd(), k = rnd();
    EXPECT_EQ(join(h, meet(h, k)), h);
    EXPECT_EQ(meet(h, join(h, k)), h);
    EXPECT_TRUE(join(h, k).contains(h));
    EXPECT_TRUE(h.contains(meet(h, k)));
  }
}

TEST(Tensor, SpecExamples) {
  EXPECT_TRUE(tensor_zmod(grp({4}, 1), 1).group.is_trivial());
  EXPECT_EQ(tensor_zmod(grp({4}, 1), 6).group, grp({2, 6}));
  EXPECT_TRUE(tensor_zmod(grp({3}), 2).group.is_trivial());
}

TEST(Torsion, SpecExamples) {
  EXPECT_TRUE(n_torsion(grp({}, 1), 5).is_trivial());
  FgGroup g = grp({12});  // Z/4 + Z/3 in invariant-factor form
  Subgroup t2 = n_torsion(g, 2);
  EXPECT_EQ(t2.order(), 2);
  EXPECT_TRUE(t2.contains(Vector{6}));
  EXPECT_TRUE(n_torsion(grp({2, 4}), 1).is_trivial());
  EXPECT_EQ(torsion(grp({2, 4}, 3)).order(), 8);
}

TEST(Purity, SpecExamples) {
  FgGroup z = grp({}, 1);
  EXPECT_FALSE(is_pure(Subgroup(z, {{2}})));
  FgGroup g = grp({2, 4}, 2);
  EXPECT_TRUE(is_pure(torsion(g)));
  FgGroup h = grp({2}, 1);
  EXPECT_TRUE(is_pure(Subgroup(h, {{1, 1}})));
  EXPECT_FALSE(is_pure(Subgroup(grp({4}), {{2}})));
}

TEST(Purity, AgreesWithDefinitionOnSmallGroups) {
  for (std::int64_t order : {8, 12, 16, 18, 24, 27, 32}) {
    for (const auto& inv : oracle::abelian_groups_of_order(order)) {
      oracle::SmallGroup sg{inv};
      std::vector<Integer> f(inv.begin(), inv.end());
      FgGroup g(f, 0);
      oracle::for_each_subgroup(inv, [&](const std::vector<oracle::Vec>& rows) {
        std::vector<Vector> gens;
        for (const auto& r : rows) gens.emplace_back(r.begin(), r.end());
        const bool want = oracle::is_pure_by_definition(sg, oracle::generated(sg, rows));
        ASSERT_EQ(is_pure(Subgroup(g, gens)), want) << g.to_string();
      });
    }
  }
}

TEST(ExtendHom, SpecExamples) {
  FgGroup z4 = grp({4}), z2 = grp({2});
  Subgroup h(z4, {{2}});
  EXPECT_FALSE(extend_hom(h, z2, {{1}}).has_value());
  auto zero = extend_hom(h, z2, {{0}});
  ASSERT_TRUE(zero.has_value());
  EXPECT_TRUE(zero->is_zero());
  Subgroup whole = Subgroup::whole(z4);
  auto f = extend_hom(whole, z2, {{1}});
  ASSERT_TRUE(f.has_value());
  EXPECT_EQ(f->matrix(), (Matrix{{1}}));
}

TEST(ExtendHom, ExtensionRestrictsCorrectly) {
  FgGroup g = grp({2, 4}, 1);
  Subgroup h(g, {{1, 2, 0}, {0, 0, 3}});
  FgGroup t = grp({2, 2});
  std::vector<Vector> imgs{{1, 0}, {0, 1}};
  auto f = extend_hom(h, t, imgs);
  ASSERT_TRUE(f.has_value());
  for (std::size_t l = 0; l < h.generators().size(); ++l) {
    SubgroupMap m(h, t, imgs);
    EXPECT_EQ(f->apply(h.generators()[l]), m.generator_images()[l]);
  }
}

TEST(SubgroupMap, RejectsInconsistentImages) {
  FgGroup g = grp({4});
  Subgroup h(g, {{2}});  // order 2
  EXPECT_THROW(SubgroupMap(h, grp({4}), {{1}}), Error);
  EXPECT_NO_THROW(SubgroupMap(h, grp({4}), {{2}}));
}

TEST(Functors, IdentityAndComposition) {
  std::mt19937_64 rng(3);
  FgGroup a = grp({2, 4}, 1), b = grp({4}, 1), c = grp({2, 8});
  auto rnd_hom = [&](const FgGroup& x, const FgGroup& y) {
    for (;;) {
      Matrix m(y.rank(), x.rank());
      for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = static_cast<long>(rng() % 9) - 4;
      try {
        return GroupHom(x, y, m);
      } catch (const Error&) {
      }
    }
  };
  for (int t = 0; t < 50; ++t) {
    GroupHom f = rnd_hom(a, b), g = rnd_hom(b, c);
    for (Integer n : {2, 4, 6}) {
      EXPECT_EQ(tensor_hom(g.after(f), n), tensor_hom(g, n).after(tensor_hom(f, n)));
      EXPECT_EQ(n_torsion_hom(g.after(f), n), n_torsion_hom(g, n).after(n_torsion_hom(f, n)));
      EXPECT_EQ(tensor_hom(GroupHom::identity(a), n), GroupHom::identity(tensor_zmod(a, n).group));
      EXPECT_EQ(n_torsion_hom(GroupHom::identity(a), n), GroupHom::identity(n_torsion(a, n).structure().group));
    }
  }
}
