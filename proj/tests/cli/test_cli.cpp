#include "cli.hpp"

#include "ksplit/fixtures.hpp"
#include "ksplit/io.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace ksplit;
using ksplit::cli::run_cli;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) { return ::testing::TempDir() + "ksplit_cli_" + name; }

std::string save(const std::string& name, const KunnethInstance& inst) {
  const auto path = temp_path(name);
  write_file_atomic(path, serialize(instance_to_json(inst)));
  return path;
}

std::string save_json(const std::string& name, const Json& j) {
  const auto path = temp_path(name);
  write_file_atomic(path, serialize(j));
  return path;
}

LatticeSpec diamond_spec() {
  LatticeSpec spec;
  spec.nodes = {"0", "I_x", "I_y", "A"};
  spec.covers = {{"0", "I_x"}, {"0", "I_y"}, {"I_x", "A"}, {"I_y", "A"}};
  spec.k0_coords = {{"0", {}}, {"I_x", {0}}, {"I_y", {1}}, {"A", {0, 1}}};
  spec.k1_coords = {{"0", {}}, {"I_x", {0}}, {"I_y", {1}}, {"A", {0, 1}}};
  return spec;
}

Json identity_iso(const KunnethInstance& inst) {
  IsoInput in{GroupHom::identity(inst.data.K0), GroupHom::identity(inst.data.K1), {}};
  for (const auto& id : inst.lattice.nodes()) in.pairing[id] = id;
  return iso_input_to_json(in);
}

}  // namespace

TEST(Cli, ValidateExitCodes) {
  const auto good = save("aligned.json", random_instance(2, [] {
                           RandomBounds b;
                           b.twist = false;
                           return b;
                         }()));
  EXPECT_EQ(run({"validate", good}).code, 0);

  const auto deep = save("dp211.json", dp_truncation(2, 1, 1));
  const auto r = run({"validate", deep});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("FAIL ideal-exactness"), std::string::npos);
  const auto rj = run({"validate", deep, "--format", "json"});
  EXPECT_EQ(rj.code, 1);
  EXPECT_FALSE(parse_json(rj.out).at("ok").get<bool>());

  Json bad = instance_to_json(dp_truncation(2, 1, 0));
  bad["maps"]["beta_tilde"]["cols"] = 7;
  EXPECT_EQ(run({"validate", save_json("badshape.json", bad)}).code, 2);
  EXPECT_EQ(run({"validate", temp_path("missing.json")}).code, 2);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"validate", "x.json", "--format", "yaml"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, SplitTorsionFreeGivesZeroFamily) {
  const auto inst = direct_sum_instance(FgGroup::free(2), FgGroup::free(2), 4, diamond_spec());
  const auto out = temp_path("tf_family.json");
  const auto r = run({"split", save("tf.json", inst), "-o", out, "--oracle"});
  EXPECT_EQ(r.code, 0) << r.err;
  const auto fam = splitting_from_json(parse_json(read_file(out)), inst);
  for (const auto& [id, s] : fam.sigma) EXPECT_TRUE(s.image().is_trivial()) << id;
}

TEST(Cli, SplitTruncationRespectsCorridor) {
  const auto inst = dp_truncation(2, 2, 1);
  const auto out = temp_path("dp221_family.json");
  const auto r = run({"split", save("dp221.json", inst), "-o", out, "--oracle", "--strategy", "both"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("oracle: 2 feasible, agrees"), std::string::npos) << r.out;
  const auto fam = splitting_from_json(parse_json(read_file(out)), inst);
  // Top image lies in {c_i = 0, |i| <= 1}.
  EXPECT_TRUE(inst.ideal("I_1").Kn.contains(fam.at("A").image()));
  EXPECT_TRUE(verify_ideal_splitting(inst, fam).ok());
}

TEST(Cli, SplitRefusesInvalidUnlessForced) {
  const auto path = save("dp221_bad.json", dp_truncation(2, 2, 2));
  const auto r = run({"split", path});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("invalid-instance"), std::string::npos);
  const auto forced = run({"split", path, "--force", "--format", "json"});
  EXPECT_NE(forced.code, 0);
  EXPECT_NE(forced.code, 2);
}

TEST(Cli, SplitJsonSummary) {
  const auto r = run({"split", save("seed5.json", random_instance(5)), "--format", "json", "--oracle", "--bound", "4096"});
  EXPECT_EQ(r.code, 0) << r.err;
  const auto j = parse_json(r.out);
  EXPECT_TRUE(j.at("ok").get<bool>());
  EXPECT_TRUE(j.at("verify").at("ok").get<bool>());
  EXPECT_TRUE(j.contains("family"));
}

TEST(Cli, LiftIdentity) {
  const auto inst = random_instance(11);
  const auto path = save("lift_a.json", inst);
  const auto iso = save_json("lift_id.json", identity_iso(inst));
  const auto out = temp_path("lift_out.json");
  const auto r = run({"lift", path, path, iso, "-o", out});
  EXPECT_EQ(r.code, 0) << r.err;
  const auto j = parse_json(read_file(out));
  EXPECT_EQ(matrix_from_json(j.at("phi"), inst.coeff.Kn.rank(), inst.coeff.Kn.rank()),
            Matrix::identity(inst.coeff.Kn.rank()));
}

TEST(Cli, LiftBlockSwap) {
  const auto sym = direct_sum_instance(FgGroup::free(2), FgGroup({4, 4}, 0), 4, diamond_spec());
  const auto path = save("sym.json", sym);
  IsoInput in{GroupHom(sym.data.K0, sym.data.K0, Matrix{{0, 1}, {1, 0}}),
              GroupHom(sym.data.K1, sym.data.K1, Matrix{{0, 1}, {1, 0}}),
              {{"0", "0"}, {"I_x", "I_y"}, {"I_y", "I_x"}, {"A", "A"}}};
  const auto r = run({"lift", path, path, save_json("swap.json", iso_input_to_json(in))});
  EXPECT_EQ(r.code, 0) << r.err;
  const auto j = parse_json(r.out);
  const Matrix phi = matrix_from_json(j.at("phi"), sym.coeff.Kn.rank(), sym.coeff.Kn.rank());
  const GroupHom f(sym.coeff.Kn, sym.coeff.Kn, phi);
  EXPECT_EQ(f.after(f), GroupHom::identity(sym.coeff.Kn));
  EXPECT_EQ(image(f, sym.ideal("I_x").Kn), sym.ideal("I_y").Kn);

  in.pairing = {{"0", "0"}, {"I_x", "I_x"}, {"I_y", "I_y"}, {"A", "A"}};
  const auto bad = run({"lift", path, path, save_json("swap_bad.json", iso_input_to_json(in))});
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.err.find("I_x"), std::string::npos) << bad.err;
}

TEST(Cli, GenIsDeterministic) {
  const auto dp = run({"gen", "dp", "--p", "2", "--m", "1", "--k", "0"});
  EXPECT_EQ(dp.code, 0);
  EXPECT_EQ(dp.out, serialize(instance_to_json(dp_truncation(2, 1, 0))));
  const auto a = run({"gen", "twisted", "--seed", "7"});
  const auto b = run({"gen", "twisted", "--seed", "7"});
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out, run({"gen", "twisted", "--seed", "8"}).out);
  // Generated fixtures are byte-stable under parse and serialize.
  for (const auto& text : {dp.out, a.out, run({"gen", "aligned", "--seed", "3"}).out})
    EXPECT_EQ(serialize(instance_to_json(instance_from_json(parse_json(text)))), text);
  EXPECT_EQ(run({"gen", "dp", "--p", "4"}).code, 1);
}

TEST(Cli, GenDefects) {
  LatticeSpec spec;
  spec.nodes = {"0", "J", "A"};
  spec.covers = {{"0", "J"}, {"J", "A"}};
  spec.k0_coords = {{"0", {}}, {"J", {0}}, {"A", {0}}};
  spec.k1_coords = {{"0", {}}, {"J", {0}}, {"A", {0}}};
  const auto tf = save("tf_chain.json", direct_sum_instance(FgGroup::free(1), FgGroup::free(1), 2, spec));
  const auto r = run({"gen", "defect", "--kind", "break-purity", "--base", tf});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("defect-not-applicable"), std::string::npos);

  const auto d = run({"gen", "defect", "--kind", "break-distributivity", "--seed", "4"});
  ASSERT_EQ(d.code, 0) << d.err;
  const auto v = run({"validate", save_json("m3.json", parse_json(d.out))});
  EXPECT_EQ(v.code, 1);
  EXPECT_NE(v.out.find("FAIL distributivity"), std::string::npos);
}

TEST(Cli, GammaCheck) {
  const auto inst = direct_sum_instance(FgGroup::free(2), FgGroup({2, 4}, 0), 4, diamond_spec());
  const auto path = save("diamond.json", inst);
  EXPECT_EQ(run({"gamma-check", path}).code, 0);
  EXPECT_EQ(run({"gamma-check", path, "--ideal", "A", "--parts", "I_x,I_y"}).code, 0);
  const auto one = run({"gamma-check", path, "--ideal", "A", "--parts", "I_x", "--format", "json"});
  EXPECT_EQ(one.code, 1);
  EXPECT_EQ(parse_json(one.out).at("results")[0].at("failure"), "gamma0-not-surjective");
  EXPECT_EQ(run({"gamma-check", path, "--ideal", "A", "--parts", "I_x,0"}).code, 1);
}

TEST(Cli, CoherenceCheck) {
  auto inst = dp_truncation(2, 1, 0);
  const auto bare = save("bare.json", inst);
  EXPECT_EQ(run({"coherence-check", bare}).code, 1);
  const auto gen = run({"gen", "dp", "--p", "2", "--m", "1", "--k", "0", "--family", "2,4,8"});
  ASSERT_EQ(gen.code, 0) << gen.err;
  const auto path = save_json("with_family.json", parse_json(gen.out));
  EXPECT_EQ(run({"coherence-check", path}).code, 0);
  EXPECT_EQ(run({"validate", path}).code, 0);

  Json broken = parse_json(gen.out);
  for (auto& k : broken["coherent_family"]["kappa"])
    if (k["m"] == 2 && k["n"] == 4) k["matrix"]["data"][0][0] = 1 - k["matrix"]["data"][0][0].get<int>();
  const auto r = run({"coherence-check", save_json("broken_family.json", broken)});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("FAIL"), std::string::npos);
}
