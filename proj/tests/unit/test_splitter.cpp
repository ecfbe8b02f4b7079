#include "ksplit/error.hpp"
#include "ksplit/fixtures.hpp"
#include "ksplit/splitter.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace ksplit;

namespace {

// Down-sets of two incomparable points x, y.
LatticeSpec diamond_spec() {
  LatticeSpec spec;
  spec.nodes = {"0", "I_x", "I_y", "A"};
  spec.covers = {{"0", "I_x"}, {"0", "I_y"}, {"I_x", "A"}, {"I_y", "A"}};
  spec.k0_coords = {{"0", {}}, {"I_x", {0}}, {"I_y", {1}}, {"A", {0, 1}}};
  spec.k1_coords = {{"0", {}}, {"I_x", {0}}, {"I_y", {1}}, {"A", {0, 1}}};
  return spec;
}

KunnethInstance diamond(std::uint64_t twist_seed = 0) {
  auto inst = direct_sum_instance(FgGroup::free(2), FgGroup({2, 4}, 0), 4, diamond_spec());
  if (twist_seed == 0) return inst;
  Rng rng(twist_seed);
  const auto t = torsion_structure(inst.data.K1, inst.n());
  return shear_instance(inst, random_hom(t.group, inst.coeff.rho_tilde.domain(), rng));
}

bool is_section(const KunnethInstance& inst, const SubgroupMap& s) {
  for (const auto& g : s.domain().generators())
    if (inst.coeff.beta_tilde.apply(s.apply(g)) != inst.data.K1.reduce(g)) return false;
  return true;
}

bool contains_top(const std::vector<GroupHom>& all, const GroupHom& f) {
  return std::find(all.begin(), all.end(), f) != all.end();
}

}  // namespace

TEST(Gamma, ComplexOfCoordinateParts) {
  const FgGroup h({2, 2}, 0);
  const std::vector<Subgroup> parts{Subgroup(h, {{1, 0}}), Subgroup(h, {{0, 1}})};
  const auto gc = gamma_complex(parts);
  EXPECT_EQ(gc.parts_sum.group, FgGroup({2, 2}, 0));
  EXPECT_TRUE(gc.overlaps_sum.group.is_trivial());
  EXPECT_TRUE(image(gc.gamma0).is_whole());
  EXPECT_TRUE(kernel(gc.gamma0).is_trivial());
  ASSERT_EQ(gc.pairs.size(), 1u);
}

TEST(Gamma, OverlapsMapIntoKernel) {
  const FgGroup h({2, 4}, 1);
  const std::vector<std::vector<Subgroup>> families{
      {Subgroup(h, {{1, 0, 0}, {0, 2, 0}}), Subgroup(h, {{0, 1, 0}})},
      {Subgroup(h, {{1, 1, 0}}), Subgroup(h, {{0, 2, 0}, {0, 0, 2}}), Subgroup(h, {{1, 0, 1}})},
      {Subgroup(h, {{0, 1, 3}}), Subgroup(h, {{0, 1, 3}}), Subgroup(h, {{1, 3, 0}})}};
  for (const auto& parts : families) {
    const auto gc = gamma_complex(parts);
    EXPECT_TRUE(gc.gamma0.after(gc.gamma1).is_zero());
    EXPECT_EQ(gc.pairs.size(), parts.size() * (parts.size() - 1) / 2);
    // With intersections as overlaps the complex is exact in the middle.
    EXPECT_EQ(kernel(gc.gamma0), image(gc.gamma1));
    EXPECT_EQ(gamma0(parts), gc.gamma0);
    EXPECT_EQ(gamma1(parts), gc.gamma1);
  }
}

TEST(Gamma, ExplicitOverlapsMustSitInsideParts) {
  const FgGroup h({4}, 0);
  const std::vector<Subgroup> parts{Subgroup(h, {{2}}), Subgroup(h, {{2}})};
  EXPECT_NO_THROW(gamma_complex(parts, {Subgroup::trivial(h)}));
  EXPECT_THROW(gamma_complex(parts, {Subgroup::whole(h)}), Error);
  EXPECT_THROW(gamma_complex({Subgroup(h, {{2}}), Subgroup::whole(FgGroup({2}, 0))}), Error);
}

TEST(Gamma, CheckOnDiamond) {
  const auto inst = diamond();
  EXPECT_TRUE(check_gamma_exact(inst, "A", {"I_x", "I_y"}).exact);
  // One part is vacuously comaximal but does not cover K1(A)[n].
  EXPECT_EQ(check_gamma_exact(inst, "A", {"I_x"}).failure, "gamma0-not-surjective");
  EXPECT_TRUE(check_gamma_exact(inst, "I_x", {"I_x"}).exact);
  try {
    check_gamma_exact(inst, "A", {"I_x", "0"});
    FAIL() << "expected NotComaximal";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotComaximal);
  }
}

TEST(Gamma, CheckReportsFailures) {
  auto lost = diamond();
  lost.ideals.at("I_y").K1 = Subgroup::trivial(lost.data.K1);
  const auto a = check_gamma_exact(lost, "A", {"I_x", "I_y"});
  EXPECT_FALSE(a.exact);
  EXPECT_EQ(a.failure, "gamma0-not-surjective");
  ASSERT_TRUE(a.witness.has_value());
  EXPECT_TRUE(lost.k1_torsion("A").contains(*a.witness));

  auto fat = diamond();
  fat.ideals.at("I_x").K1 = Subgroup::whole(fat.data.K1);
  fat.ideals.at("I_y").K1 = Subgroup::whole(fat.data.K1);
  const auto b = check_gamma_exact(fat, "A", {"I_x", "I_y"});
  EXPECT_FALSE(b.exact);
  EXPECT_EQ(b.failure, "kernel-not-image");
  EXPECT_TRUE(b.witness.has_value());
}

TEST(Extend, FromTopIsIdentityOnTau) {
  const auto inst = diamond(3);
  const auto fam = build_ideal_splitting(inst);
  const auto& top = fam.at("A");
  EXPECT_EQ(extend_splitting(inst, "A", "A", top), top);
}

TEST(Extend, TorsionFreeK1GivesZero) {
  LatticeSpec spec = diamond_spec();
  const auto inst = direct_sum_instance(FgGroup::free(2), FgGroup::free(2), 3, spec);
  const auto fam = build_ideal_splitting(inst);
  for (const auto& [id, s] : fam.sigma) {
    EXPECT_TRUE(s.domain().is_trivial()) << id;
    EXPECT_TRUE(s.image().is_trivial());
  }
  EXPECT_TRUE(verify_ideal_splitting(inst, fam).ok());
}

TEST(Extend, AgreesWithEnumerationAlongChain) {
  const auto inst = dp_truncation(2, 2, 1);
  const auto fam = build_ideal_splitting(inst);
  const auto all = enumerate_ideal_splittings(inst, 1 << 12);
  EXPECT_EQ(all.size(), 2u);
  const auto ext = extend_splitting(inst, "I_1", fam.at("I_1"));
  EXPECT_TRUE(is_section(inst, ext));
  EXPECT_EQ(ext.apply(inst.data.K1.basis_vector(0)), fam.at("I_1").apply(inst.data.K1.basis_vector(0)));
  EXPECT_THROW(extend_splitting(inst, "I_1", "I_0", fam.at("I_0")), Error);
}

TEST(Extend, RejectsNonSectionTau) {
  const auto inst = diamond();
  const auto dom = inst.k1_torsion("I_x");
  const auto zero = SubgroupMap::zero(dom, inst.coeff.Kn);
  try {
    extend_splitting(inst, "A", "I_x", zero);
    FAIL() << "expected InvalidTau";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidTau);
  }
}

TEST(Glue, DiamondAssemblyMatchesParts) {
  for (std::uint64_t seed : {0u, 1u, 2u, 9u}) {
    const auto inst = diamond(seed);
    const auto fam = build_ideal_splitting(inst);
    const std::vector<SubgroupMap> parts{fam.at("I_x"), fam.at("I_y")};
    const auto glued = glue_comaximal(inst, "A", {"I_x", "I_y"}, parts);
    EXPECT_TRUE(is_section(inst, glued));
    for (std::size_t i = 0; i < 2; ++i)
      for (const auto& g : parts[i].domain().generators()) EXPECT_EQ(glued.apply(g), parts[i].apply(g));
    EXPECT_EQ(glue_comaximal(inst, "A", {"I_x", "I_y"}, parts, true), glued);
  }
}

TEST(Glue, DisagreeingPartsAreRejected) {
  // Parts sharing a torsion coordinate but sent to different lifts.
  LatticeSpec spec;
  spec.nodes = {"0", "I_c", "I_x", "I_y", "A"};
  spec.covers = {{"0", "I_c"}, {"I_c", "I_x"}, {"I_c", "I_y"}, {"I_x", "A"}, {"I_y", "A"}};
  spec.k0_coords = {{"0", {}}, {"I_c", {0}}, {"I_x", {0, 1}}, {"I_y", {0, 2}}, {"A", {0, 1, 2}}};
  spec.k1_coords = {{"0", {}}, {"I_c", {0}}, {"I_x", {0}}, {"I_y", {0}}, {"A", {0}}};
  const auto inst = direct_sum_instance(FgGroup::free(3), FgGroup({2}, 0), 2, spec);
  ASSERT_TRUE(validate_instance(inst).ok());
  const auto fam = build_ideal_splitting(inst);
  const auto& sx = fam.at("I_x");
  const auto& sy = fam.at("I_y");
  std::vector<Vector> shifted;
  const auto bump = inst.coeff.rho_tilde.apply(inst.coeff.rho_tilde.domain().basis_vector(1));
  for (const auto& img : sx.generator_images()) shifted.push_back(inst.coeff.Kn.add(img, bump));
  const SubgroupMap sx2(sx.domain(), sx.codomain(), shifted);
  try {
    glue_comaximal(inst, "A", {"I_x", "I_y"}, {sx2, sy});
    FAIL() << "expected WellDefinednessViolation";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::WellDefinednessViolation);
  }
}

TEST(Builder, TruncationCorridor) {
  for (long p : {2, 3})
    for (long m = 1; m <= 3; ++m)
      for (long k = 0; k < m; ++k) {
        const auto inst = dp_truncation(p, m, k);
        SplitDiagnostics diag;
        const auto fam = build_ideal_splitting(inst, {}, &diag);
        EXPECT_TRUE(verify_ideal_splitting(inst, fam).ok()) << p << " " << m << " " << k;
        EXPECT_EQ(diag.order.size(), inst.lattice.size());
        EXPECT_EQ(diag.steps.size(), diag.order.size());
      }
  const auto bad = dp_truncation(2, 2, 2);
  try {
    build_ideal_splitting(bad);
    FAIL() << "expected InvalidInstance";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidInstance);
  }
}

TEST(Builder, DiagnosticsNameTheSteps) {
  SplitDiagnostics diag;
  build_ideal_splitting(diamond(4), {}, &diag);
  ASSERT_EQ(diag.order.back(), "A");
  EXPECT_EQ(diag.steps.back().rfind("glue", 0), 0u) << diag.steps.back();
  EXPECT_EQ(diag.order.front(), "0");
  EXPECT_EQ(diag.steps.front(), "base");
}

TEST(Builder, DeterministicAndInFeasibleSet) {
  int checked = 0;
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const auto inst = random_instance(seed);
    SplitDiagnostics diag;
    const auto fam = build_ideal_splitting(inst, {Strategy::Both, false, false}, &diag);
    EXPECT_TRUE(diag.strategy_disagreements.empty()) << "seed " << seed;
    const auto again = build_ideal_splitting(inst);
    EXPECT_EQ(top_map(inst, fam), top_map(inst, again)) << "seed " << seed;
    EXPECT_TRUE(verify_ideal_splitting(inst, fam).ok()) << "seed " << seed;
    if (inst.coeff.Kn.order() > 256) continue;
    const auto all = enumerate_ideal_splittings(inst, 256);
    ASSERT_FALSE(all.empty());
    EXPECT_TRUE(contains_top(all, top_map(inst, fam))) << "seed " << seed;
    const auto global = find_global_ideal_splitting(inst);
    ASSERT_TRUE(global.has_value());
    EXPECT_EQ(*global, all.front()) << "seed " << seed;
    ++checked;
  }
  EXPECT_GE(checked, 30);
}

TEST(Builder, EnumerationRespectsBound) {
  const auto inst = dp_truncation(3, 3, 0);
  try {
    enumerate_ideal_splittings(inst, 100);
    FAIL() << "expected SizeBoundExceeded";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SizeBoundExceeded);
  }
}

TEST(Verify, PerturbedTopFailsContainment) {
  const auto inst = dp_truncation(2, 2, 1);
  const auto fam = build_ideal_splitting(inst);
  const auto top = top_map(inst, fam);
  // Shift by rho_tilde of a K0 coordinate that is not in Kn(I_1).
  bool caught = false;
  for (std::size_t j = 0; j < inst.coeff.rho_tilde.domain().rank() && !caught; ++j) {
    const auto y = inst.coeff.rho_tilde.apply(inst.coeff.rho_tilde.domain().basis_vector(j));
    Matrix mat = top.matrix();
    for (std::size_t r = 0; r < mat.rows(); ++r) mat(r, 0) += y[r];
    const GroupHom moved(top.domain(), top.codomain(), mat);
    const auto rep = verify_ideal_splitting(inst, family_from_top(inst, moved));
    if (rep.ok()) continue;
    EXPECT_EQ(rep.failed(), std::vector<std::string>{"containment"});
    caught = true;
  }
  EXPECT_TRUE(caught);
  EXPECT_TRUE(verify_ideal_splitting(inst, family_from_top(inst, top)).ok());
}

TEST(Verify, WrongDomainIsReported) {
  const auto inst = diamond();
  auto fam = build_ideal_splitting(inst);
  fam.sigma.at("I_x") = fam.sigma.at("I_y");
  const auto rep = verify_ideal_splitting(inst, fam);
  EXPECT_FALSE(rep.ok());
  const auto failed = rep.failed();
  EXPECT_NE(std::find(failed.begin(), failed.end(), "domains"), failed.end());
}

TEST(Lift, IdentityLiftsToIdentity) {
  const auto inst = diamond(5);
  std::map<std::string, std::string> pairing;
  for (const auto& id : inst.lattice.nodes()) pairing[id] = id;
  const auto iso = lift_isomorphism(inst, inst, GroupHom::identity(inst.data.K0), GroupHom::identity(inst.data.K1),
                                    pairing);
  EXPECT_EQ(iso.phi, GroupHom::identity(inst.coeff.Kn));
}

TEST(Lift, TransportedCopy) {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    const auto a = random_instance(seed);
    Rng rng(seed * 7919);
    const auto phi0 = random_automorphism(a.data.K0, rng);
    const auto phi1 = random_automorphism(a.data.K1, rng);
    const auto psi = random_automorphism(a.coeff.Kn, rng);
    const auto b = transport_instance(a, phi0, phi1, psi);
    std::map<std::string, std::string> pairing;
    for (const auto& id : a.lattice.nodes()) pairing[id] = id;
    const auto iso = lift_isomorphism(a, b, phi0, phi1, pairing);
    EXPECT_TRUE(is_isomorphism(iso.phi));
    EXPECT_EQ(b.coeff.beta_tilde.after(iso.phi), phi1.after(a.coeff.beta_tilde)) << "seed " << seed;
    for (const auto& id : a.lattice.nodes())
      EXPECT_EQ(image(iso.phi, a.ideal(id).Kn), b.ideal(id).Kn) << "seed " << seed << " " << id;
  }
}

TEST(Lift, SwappedDiamond) {
  // Exchanging the two points needs equal K1 summands.
  const auto sym = direct_sum_instance(FgGroup::free(2), FgGroup({4, 4}, 0), 4, diamond_spec());
  const GroupHom swap0(sym.data.K0, sym.data.K0, Matrix{{0, 1}, {1, 0}});
  const GroupHom swap1(sym.data.K1, sym.data.K1, Matrix{{0, 1}, {1, 0}});
  const std::map<std::string, std::string> pairing{{"0", "0"}, {"I_x", "I_y"}, {"I_y", "I_x"}, {"A", "A"}};
  const auto iso = lift_isomorphism(sym, sym, swap0, swap1, pairing);
  EXPECT_EQ(image(iso.phi, sym.ideal("I_x").Kn), sym.ideal("I_y").Kn);

  const std::map<std::string, std::string> straight{{"0", "0"}, {"I_x", "I_x"}, {"I_y", "I_y"}, {"A", "A"}};
  try {
    lift_isomorphism(sym, sym, swap0, swap1, straight);
    FAIL() << "expected PairingNotRespected";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::PairingNotRespected);
  }
}

TEST(Lift, NonInvertibleInputsAreRejected) {
  const auto inst = diamond();
  std::map<std::string, std::string> pairing;
  for (const auto& id : inst.lattice.nodes()) pairing[id] = id;
  try {
    lift_isomorphism(inst, inst, GroupHom::multiplication(inst.data.K0, 2), GroupHom::identity(inst.data.K1), pairing);
    FAIL() << "expected InvalidHom";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidHom);
  }
}

TEST(Strategy, Names) {
  for (auto s : {Strategy::Solver, Strategy::Greedy, Strategy::Both}) EXPECT_EQ(strategy_from_string(to_string(s)), s);
  EXPECT_THROW(strategy_from_string("guess"), Error);
}
