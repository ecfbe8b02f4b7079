#include "ksplit/io.hpp"

#include "ksplit/error.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace ksplit {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw Error(ErrorKind::ParseError, msg); }

const Json& field(const Json& j, const std::string& key) {
  if (!j.is_object()) fail("expected an object holding '" + key + "'");
  auto it = j.find(key);
  if (it == j.end()) fail("missing field '" + key + "'");
  return *it;
}

const Json& array_field(const Json& j, const std::string& key) {
  const Json& a = field(j, key);
  if (!a.is_array()) fail("field '" + key + "' must be an array");
  return a;
}

std::string string_of(const Json& j, const std::string& what) {
  if (!j.is_string()) fail(what + " must be a string");
  return j.get<std::string>();
}

// Library errors raised while assembling parsed data become parse errors.
template <class F>
auto guarded(const std::string& what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ParseError) throw;
    fail(what + ": " + e.what());
  }
}

Json vector_to_json(const Vector& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(integer_to_json(x));
  return a;
}

Vector vector_from_json(const Json& j, std::size_t len, const std::string& what) {
  if (!j.is_array() || j.size() != len)
    fail(what + ": expected a vector of length " + std::to_string(len));
  Vector v;
  v.reserve(len);
  for (const auto& x : j) v.push_back(integer_from_json(x));
  return v;
}

Json vectors_to_json(const std::vector<Vector>& vs) {
  Json a = Json::array();
  for (const auto& v : vs) a.push_back(vector_to_json(v));
  return a;
}

std::vector<Vector> vectors_from_json(const Json& j, std::size_t len, const std::string& what) {
  if (!j.is_array()) fail(what + " must be a list of vectors");
  std::vector<Vector> out;
  for (const auto& v : j) out.push_back(vector_from_json(v, len, what));
  return out;
}

Subgroup subgroup_from_json(const Json& j, const FgGroup& ambient, const std::string& what) {
  auto gens = vectors_from_json(j, ambient.rank(), what);
  for (auto& g : gens) g = ambient.reduce(g);
  return guarded(what, [&] { return Subgroup(ambient, gens); });
}

void check_schema(const Json& j) {
  if (!j.is_object()) fail("document must be a JSON object");
  if (string_of(field(j, "schema_version"), "schema_version") != kSchemaVersion)
    fail("unsupported schema_version (expected \"1\")");
}

Json family_to_json(const CoherentFamily& fam) {
  Json j;
  Json coeffs = Json::array();
  Json levels = Json::array();
  for (const auto& [n, lv] : fam.levels) {
    coeffs.push_back(integer_to_json(n));
    levels.push_back({{"n", integer_to_json(n)},
                      {"Kn", group_to_json(lv.Kn)},
                      {"rho_tilde", matrix_to_json(lv.rho_tilde.matrix())},
                      {"beta_tilde", matrix_to_json(lv.beta_tilde.matrix())}});
  }
  auto pair_maps = [](const std::map<std::pair<Integer, Integer>, GroupHom>& maps) {
    Json a = Json::array();
    for (const auto& [key, f] : maps)
      a.push_back({{"m", integer_to_json(key.first)}, {"n", integer_to_json(key.second)}, {"matrix", matrix_to_json(f.matrix())}});
    return a;
  };
  Json sigmas = Json::array();
  for (const auto& [n, s] : fam.sigmas) sigmas.push_back({{"n", integer_to_json(n)}, {"matrix", matrix_to_json(s.matrix())}});
  j["coefficients"] = coeffs;
  j["levels"] = levels;
  j["kappa"] = pair_maps(fam.kappa);
  j["lambda"] = pair_maps(fam.lambda);
  j["sigma"] = sigmas;
  return j;
}

CoherentFamily family_from_json(const Json& j, const KData& data) {
  CoherentFamily fam;
  std::map<Integer, FgGroup> torsion;
  for (const auto& lj : array_field(j, "levels")) {
    const Integer n = integer_from_json(field(lj, "n"));
    if (n < 2) fail("coefficient levels must be at least 2");
    const FgGroup kn = group_from_json(field(lj, "Kn"));
    const FgGroup k0n = guarded("level", [&] { return tensor_zmod(data.K0, n).group; });
    CoeffGroup lv{n, kn, hom_from_json(field(lj, "rho_tilde"), k0n, kn),
                  hom_from_json(field(lj, "beta_tilde"), kn, data.K1)};
    if (!fam.levels.emplace(n, std::move(lv)).second) fail("duplicate coefficient level");
    torsion.emplace(n, guarded("level", [&] { return torsion_structure(data.K1, n).group; }));
  }
  std::vector<Integer> listed;
  for (const auto& c : array_field(j, "coefficients")) listed.push_back(integer_from_json(c));
  if (listed != fam.coefficients()) fail("coefficients do not match the listed levels");

  auto level = [&](const Integer& n) -> const CoeffGroup& {
    auto it = fam.levels.find(n);
    if (it == fam.levels.end()) fail("map refers to an unknown coefficient");
    return it->second;
  };
  for (const auto& kj : array_field(j, "kappa")) {
    const Integer m = integer_from_json(field(kj, "m"));
    const Integer n = integer_from_json(field(kj, "n"));
    fam.kappa.emplace(std::make_pair(m, n), hom_from_json(field(kj, "matrix"), level(n).Kn, level(m).Kn));
  }
  for (const auto& lj : array_field(j, "lambda")) {
    const Integer m = integer_from_json(field(lj, "m"));
    const Integer n = integer_from_json(field(lj, "n"));
    if (!fam.levels.count(m) || !fam.levels.count(n)) fail("map refers to an unknown coefficient");
    fam.lambda.emplace(std::make_pair(m, n), hom_from_json(field(lj, "matrix"), torsion.at(n), torsion.at(m)));
  }
  for (const auto& sj : array_field(j, "sigma")) {
    const Integer n = integer_from_json(field(sj, "n"));
    const FgGroup& kn = level(n).Kn;
    fam.sigmas.emplace(n, hom_from_json(field(sj, "matrix"), torsion.at(n), kn));
  }
  return fam;
}

std::string status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Skipped: return "skipped";
  }
  return "fail";
}

}  // namespace

Json integer_to_json(const Integer& x) {
  if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max())
    return Json(static_cast<std::int64_t>(x));
  return Json(x.str());
}

Integer integer_from_json(const Json& j) {
  if (j.is_number_unsigned()) return Integer(j.get<std::uint64_t>());
  if (j.is_number_integer()) return Integer(j.get<std::int64_t>());
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    const std::size_t start = (!s.empty() && s[0] == '-') ? 1 : 0;
    if (s.size() == start || s.find_first_not_of("0123456789", start) != std::string::npos)
      fail("'" + s + "' is not an integer");
    return Integer(s);
  }
  fail("expected an integer");
}

Json group_to_json(const FgGroup& g) {
  Json f = Json::array();
  for (const auto& d : g.invariant_factors()) f.push_back(integer_to_json(d));
  return {{"invariant_factors", f}, {"free_rank", g.free_rank()}};
}

FgGroup group_from_json(const Json& j) {
  std::vector<Integer> factors;
  for (const auto& d : array_field(j, "invariant_factors")) factors.push_back(integer_from_json(d));
  const Json& r = field(j, "free_rank");
  if (!r.is_number_integer() || r.get<std::int64_t>() < 0) fail("free_rank must be a non-negative integer");
  return guarded("group", [&] { return FgGroup(factors, r.get<std::size_t>()); });
}

Json matrix_to_json(const Matrix& m) {
  Json data = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) data.push_back(vector_to_json(m.row(r)));
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", data}};
}

Matrix matrix_from_json(const Json& j, std::size_t rows, std::size_t cols) {
  const Json& jr = field(j, "rows");
  const Json& jc = field(j, "cols");
  if (!jr.is_number_integer() || !jc.is_number_integer()) fail("matrix dimensions must be integers");
  if (jr.get<std::int64_t>() != static_cast<std::int64_t>(rows) || jc.get<std::int64_t>() != static_cast<std::int64_t>(cols))
    fail("malformed matrix shape: declared " + jr.dump() + "x" + jc.dump() + ", expected " + std::to_string(rows) + "x" +
         std::to_string(cols));
  const Json& data = array_field(j, "data");
  if (data.size() != rows) fail("malformed matrix shape: row count differs from 'rows'");
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) m.set_row(r, vector_from_json(data[r], cols, "matrix row"));
  return m;
}

Json hom_to_json(const GroupHom& f) { return matrix_to_json(f.matrix()); }

GroupHom hom_from_json(const Json& j, const FgGroup& domain, const FgGroup& codomain) {
  Matrix m = matrix_from_json(j, codomain.rank(), domain.rank());
  return guarded("homomorphism", [&] { return GroupHom(domain, codomain, std::move(m)); });
}

Json instance_to_json(const KunnethInstance& inst) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["n"] = integer_to_json(inst.n());
  j["groups"] = {{"K0", group_to_json(inst.data.K0)},
                 {"K1", group_to_json(inst.data.K1)},
                 {"Kn", group_to_json(inst.coeff.Kn)}};
  j["maps"] = {{"rho_tilde", hom_to_json(inst.coeff.rho_tilde)}, {"beta_tilde", hom_to_json(inst.coeff.beta_tilde)}};
  Json covers = Json::array();
  for (const auto& c : inst.lattice.covers()) covers.push_back({c.lower, c.upper});
  j["lattice"] = {{"nodes", inst.lattice.nodes()}, {"covers", covers}};
  Json ideals = Json::object();
  for (const auto& [id, node] : inst.ideals)
    ideals[id] = {{"K0", vectors_to_json(node.K0.generators())},
                  {"K1", vectors_to_json(node.K1.generators())},
                  {"Kn", vectors_to_json(node.Kn.generators())}};
  j["ideals"] = ideals;
  if (inst.family) j["coherent_family"] = family_to_json(*inst.family);
  return j;
}

KunnethInstance instance_from_json(const Json& j) {
  try {
    check_schema(j);
    KunnethInstance inst;
    const Integer n = integer_from_json(field(j, "n"));
    if (n < 2) fail("coefficient n must be at least 2");
    const Json& groups = field(j, "groups");
    inst.data.K0 = group_from_json(field(groups, "K0"));
    inst.data.K1 = group_from_json(field(groups, "K1"));
    const FgGroup kn = group_from_json(field(groups, "Kn"));
    const FgGroup k0n = guarded("K0 (x) Z/n", [&] { return tensor_zmod(inst.data.K0, n).group; });
    const Json& maps = field(j, "maps");
    inst.coeff = CoeffGroup{n, kn, hom_from_json(field(maps, "rho_tilde"), k0n, kn),
                            hom_from_json(field(maps, "beta_tilde"), kn, inst.data.K1)};

    const Json& lat = field(j, "lattice");
    std::vector<std::string> nodes;
    for (const auto& x : array_field(lat, "nodes")) nodes.push_back(string_of(x, "lattice node"));
    std::vector<Cover> covers;
    for (const auto& c : array_field(lat, "covers")) {
      if (!c.is_array() || c.size() != 2) fail("a cover is a pair [lower, upper]");
      covers.push_back({string_of(c[0], "cover endpoint"), string_of(c[1], "cover endpoint")});
    }
    inst.lattice = guarded("lattice", [&] { return IdealLattice(nodes, covers); });

    const Json& ideals = field(j, "ideals");
    if (!ideals.is_object()) fail("'ideals' must be an object keyed by node id");
    for (const auto& [id, node] : ideals.items()) {
      if (!inst.lattice.contains(id)) fail("ideal '" + id + "' is not a lattice node");
      inst.ideals.emplace(id, IdealNode{id, subgroup_from_json(field(node, "K0"), inst.data.K0, "K0(" + id + ")"),
                                        subgroup_from_json(field(node, "K1"), inst.data.K1, "K1(" + id + ")"),
                                        subgroup_from_json(field(node, "Kn"), inst.coeff.Kn, "Kn(" + id + ")")});
    }
    for (const auto& id : inst.lattice.nodes())
      if (!inst.ideals.count(id)) fail("lattice node '" + id + "' has no ideal data");

    if (j.contains("coherent_family")) inst.family = family_from_json(j.at("coherent_family"), inst.data);
    return inst;
  } catch (const Json::exception& e) {
    fail(std::string("malformed instance: ") + e.what());
  }
}

Json splitting_to_json(const SplittingFamily& fam) {
  Json sigma = Json::object();
  for (const auto& [id, s] : fam.sigma)
    sigma[id] = {{"domain", vectors_to_json(s.domain().generators())}, {"images", vectors_to_json(s.generator_images())}};
  return {{"schema_version", kSchemaVersion}, {"n", integer_to_json(fam.n)}, {"sigma", sigma}};
}

SplittingFamily splitting_from_json(const Json& j, const KunnethInstance& inst) {
  try {
    check_schema(j);
    SplittingFamily fam;
    fam.n = integer_from_json(field(j, "n"));
    if (fam.n != inst.n()) fail("splitting coefficient differs from the instance's");
    const Json& sigma = field(j, "sigma");
    if (!sigma.is_object()) fail("'sigma' must be an object keyed by ideal id");
    for (const auto& [id, s] : sigma.items()) {
      const Subgroup dom = subgroup_from_json(field(s, "domain"), inst.data.K1, "domain of sigma(" + id + ")");
      auto images = vectors_from_json(field(s, "images"), inst.coeff.Kn.rank(), "images of sigma(" + id + ")");
      if (images.size() != dom.generators().size()) fail("sigma(" + id + "): one image per domain generator");
      fam.sigma.emplace(id, guarded("sigma(" + id + ")", [&] { return SubgroupMap(dom, inst.coeff.Kn, images); }));
    }
    return fam;
  } catch (const Json::exception& e) {
    fail(std::string("malformed splitting file: ") + e.what());
  }
}

Json iso_input_to_json(const IsoInput& in) {
  return {{"schema_version", kSchemaVersion},
          {"phi0", hom_to_json(in.phi0)},
          {"phi1", hom_to_json(in.phi1)},
          {"pairing", in.pairing}};
}

IsoInput iso_input_from_json(const Json& j, const KunnethInstance& a, const KunnethInstance& b) {
  try {
    check_schema(j);
    IsoInput in;
    in.phi0 = hom_from_json(field(j, "phi0"), a.data.K0, b.data.K0);
    in.phi1 = hom_from_json(field(j, "phi1"), a.data.K1, b.data.K1);
    const Json& p = field(j, "pairing");
    if (!p.is_object()) fail("'pairing' must map ideal ids of the first instance to the second");
    for (const auto& [from, to] : p.items()) in.pairing[from] = string_of(to, "pairing target");
    return in;
  } catch (const Json::exception& e) {
    fail(std::string("malformed isomorphism file: ") + e.what());
  }
}

Json complex_iso_to_json(const ComplexIso& iso) {
  return {{"schema_version", kSchemaVersion},
          {"phi0", hom_to_json(iso.phi0)},
          {"phi", hom_to_json(iso.phi)},
          {"phi1", hom_to_json(iso.phi1)},
          {"pairing", iso.pairing}};
}

Json report_to_json(const ValidationReport& rep) {
  Json checks = Json::array();
  for (const auto& c : rep.checks)
    checks.push_back({{"name", c.name},
                      {"status", status_name(c.status)},
                      {"detail", c.detail},
                      {"where", c.where},
                      {"witness", c.witness ? vector_to_json(*c.witness) : Json(nullptr)}});
  return {{"ok", rep.ok()}, {"checks", checks}};
}

std::string report_to_text(const ValidationReport& rep) {
  std::ostringstream out;
  for (const auto& c : rep.checks) {
    out << (c.status == CheckStatus::Pass ? "PASS" : c.status == CheckStatus::Fail ? "FAIL" : "SKIP") << ' ' << c.name;
    if (c.status != CheckStatus::Pass) {
      if (!c.where.empty()) out << " at " << c.where;
      if (!c.detail.empty()) out << ": " << c.detail;
      if (c.witness) {
        out << " (witness";
        for (const auto& x : *c.witness) out << ' ' << x;
        out << ')';
      }
    }
    out << '\n';
  }
  return out.str();
}

std::string serialize(const Json& j) { return j.dump(2) + "\n"; }

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    fail(std::string("invalid JSON: ") + e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file_atomic(const std::string& path, const std::string& text) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::BadParameter, "cannot write '" + tmp + "'");
    out << text;
    if (!out.flush()) throw Error(ErrorKind::BadParameter, "write to '" + tmp + "' failed");
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw Error(ErrorKind::BadParameter, "cannot move '" + tmp + "' to '" + path + "'");
  }
}

}  // namespace ksplit
