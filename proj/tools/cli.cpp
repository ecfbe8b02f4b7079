#include "cli.hpp"

#include "ksplit/error.hpp"
#include "ksplit/fixtures.hpp"
#include "ksplit/io.hpp"
#include "ksplit/splitter.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <optional>
#include <ostream>
#include <sstream>

namespace ksplit::cli {

namespace {

struct Common {
  std::string format = "text";
  bool json() const { return format == "json"; }
};

void add_format(CLI::App* sub, Common& c) {
  sub->add_option("--format", c.format, "Report format")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
}

KunnethInstance load_instance(const std::string& path) { return instance_from_json(parse_json(read_file(path))); }

void write_doc(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-")
    out << text;
  else
    write_file_atomic(path, text);
}

std::string join_list(const std::vector<std::string>& xs) {
  std::string s;
  for (const auto& x : xs) s += (s.empty() ? "" : ", ") + x;
  return s;
}

// Coherence checks appended to a report when the instance carries a family.
void add_family_checks(const KData& data, const CoherentFamily& fam, ValidationReport& rep) {
  const auto coh = check_coherence(data, fam);
  rep.checks.insert(rep.checks.end(), coh.checks.begin(), coh.checks.end());
  if (fam.sigmas.empty()) return;
  CheckResult c;
  c.name = "family-coherence";
  if (const auto v = family_coherence_violation(data, fam)) {
    c.status = CheckStatus::Fail;
    c.where = "(" + v->m.str() + ", " + v->n.str() + ")";
    c.detail = "sigma_m lambda_{m,n} differs from kappa_{m,n} sigma_n";
    c.witness = v->element;
  }
  rep.checks.push_back(std::move(c));
}

// ------------------------------------------------------------------ validate

struct ValidateArgs {
  Common common;
  std::string path;
};

int cmd_validate(const ValidateArgs& a, std::ostream& out) {
  const auto inst = load_instance(a.path);
  auto rep = validate_instance(inst);
  if (inst.family) add_family_checks(inst.data, *inst.family, rep);
  out << (a.common.json() ? serialize(report_to_json(rep)) : report_to_text(rep));
  return rep.ok() ? kSuccess : kSemanticFailure;
}

// --------------------------------------------------------------------- split

struct SplitArgs {
  Common common;
  std::string path;
  std::string output;
  std::string strategy = "solver";
  bool oracle = false;
  long bound = 256;
  bool force = false;
  bool global_fallback = false;
};

int cmd_split(const SplitArgs& a, std::ostream& out, std::ostream& err) {
  const auto inst = load_instance(a.path);
  SplitOptions opts;
  opts.strategy = strategy_from_string(a.strategy);
  opts.force = a.force;
  opts.global_fallback = a.global_fallback;

  SplitDiagnostics diag;
  std::optional<SplittingFamily> fam;
  std::string blocking, failure;
  try {
    fam = build_ideal_splitting(inst, opts, &diag);
  } catch (const NoExtensionError& e) {
    blocking = e.ideal();
    failure = e.what();
  }

  std::optional<ValidationReport> verify;
  if (fam) verify = verify_ideal_splitting(inst, *fam);

  Json oracle = nullptr;
  bool disagree = false;
  if (a.oracle) {
    try {
      const auto all = enumerate_ideal_splittings(inst, a.bound);
      bool member = false;
      if (fam) member = std::find(all.begin(), all.end(), top_map(inst, *fam)) != all.end();
      const bool agree = fam ? (!all.empty() && member) : all.empty();
      disagree = !agree;
      oracle = {{"ran", true}, {"feasible", all.size()}, {"builder_in_feasible_set", member}, {"agree", agree}};
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::SizeBoundExceeded) throw;
      oracle = {{"ran", false}, {"reason", e.what()}};
    }
  }

  const bool verified = verify && verify->ok();
  if (fam && !a.output.empty()) write_doc(a.output, serialize(splitting_to_json(*fam)), out);

  if (a.common.json()) {
    Json j{{"ok", verified && !disagree},
           {"strategy", a.strategy},
           {"order", diag.order},
           {"steps", diag.steps},
           {"strategy_disagreements", diag.strategy_disagreements},
           {"used_global_fallback", diag.used_global_fallback},
           {"oracle", oracle}};
    if (verify) j["verify"] = report_to_json(*verify);
    if (!fam) j["blocking_ideal"] = blocking;
    if (!fam) j["error"] = failure;
    if (fam && a.output.empty()) j["family"] = splitting_to_json(*fam);
    out << serialize(j);
  } else {
    for (std::size_t i = 0; i < diag.order.size(); ++i) out << diag.order[i] << ": " << diag.steps[i] << '\n';
    if (!fam) out << "no extension at ideal " << blocking << '\n';
    if (verify) out << report_to_text(*verify);
    if (opts.strategy == Strategy::Both)
      out << (diag.strategy_disagreements.empty() ? "strategies agree\n"
                                                  : "strategies disagree at " + join_list(diag.strategy_disagreements) + '\n');
    if (!oracle.is_null()) {
      if (oracle["ran"].get<bool>())
        out << "oracle: " << oracle["feasible"].get<std::size_t>() << " feasible, "
            << (oracle["agree"].get<bool>() ? "agrees" : "DISAGREES") << '\n';
      else
        out << "oracle skipped: " << oracle["reason"].get<std::string>() << '\n';
    }
    if (fam && a.output.empty()) out << serialize(splitting_to_json(*fam));
  }

  if (disagree) {
    err << "oracle disagreement\n";
    return kOracleDisagreement;
  }
  if (!fam) {
    err << failure << '\n';
    return kSemanticFailure;
  }
  if (!verified) {
    err << "constructed family failed verification: " << join_list(verify->failed()) << '\n';
    return kOracleDisagreement;
  }
  return kSuccess;
}

// ---------------------------------------------------------------------- lift

struct LiftArgs {
  Common common;
  std::string a, b, iso, output;
  std::string strategy = "solver";
};

int cmd_lift(const LiftArgs& args, std::ostream& out, std::ostream& err) {
  const auto a = load_instance(args.a);
  const auto b = load_instance(args.b);
  const auto in = iso_input_from_json(parse_json(read_file(args.iso)), a, b);
  for (const auto& [inst, name] : {std::pair{&a, &args.a}, std::pair{&b, &args.b}}) {
    const auto rep = validate_instance(*inst);
    if (!rep.ok()) {
      err << "instance " << *name << " fails " << join_list(rep.failed()) << '\n';
      return kSemanticFailure;
    }
  }
  SplitOptions opts;
  opts.strategy = strategy_from_string(args.strategy);
  const auto iso = lift_isomorphism(a, b, in.phi0, in.phi1, in.pairing, opts);
  const std::string doc = serialize(complex_iso_to_json(iso));
  if (!args.output.empty()) write_doc(args.output, doc, out);
  if (args.common.json())
    out << (args.output.empty() ? doc : serialize(Json{{"ok", true}, {"output", args.output}}));
  else if (args.output.empty())
    out << doc;
  else
    out << "lifted isomorphism written to " << args.output << '\n';
  return kSuccess;
}

// ----------------------------------------------------------------------- gen

struct GenArgs {
  std::string kind;
  std::uint64_t seed = 0;
  long p = 2, m = 1, k = 0;
  std::string defect = "none";
  std::string base;
  std::vector<long> family;
  std::string output;
};

int cmd_gen(const GenArgs& a, std::ostream& out, std::ostream& err) {
  KunnethInstance inst;
  if (a.kind == "aligned") {
    RandomBounds b;
    b.twist = false;
    inst = random_instance(a.seed, b);
  } else if (a.kind == "twisted") {
    inst = random_instance(a.seed);
  } else if (a.kind == "dp") {
    inst = dp_truncation(a.p, a.m, a.k);
  } else {
    const auto base = a.base.empty() ? random_instance(a.seed) : load_instance(a.base);
    auto planted = plant_defect(base, defect_from_string(a.defect));
    if (!planted.where.empty()) err << "planted " << a.defect << " at " << planted.where << '\n';
    inst = std::move(planted.instance);
  }
  if (!a.family.empty()) {
    std::vector<Integer> coeffs(a.family.begin(), a.family.end());
    if (std::find(coeffs.begin(), coeffs.end(), inst.n()) == coeffs.end())
      throw Error(ErrorKind::BadParameter, "--family must include the instance coefficient " + inst.n().str());
    inst.family = aligned_coherent_family(inst.data, coeffs);
  }
  write_doc(a.output, serialize(instance_to_json(inst)), out);
  return kSuccess;
}

// --------------------------------------------------------------- gamma-check

struct GammaArgs {
  Common common;
  std::string path;
  std::string ideal;
  std::vector<std::string> parts;
};

int cmd_gamma(const GammaArgs& a, std::ostream& out) {
  const auto inst = load_instance(a.path);
  std::vector<std::pair<std::string, std::vector<std::string>>> configs;
  if (!a.ideal.empty()) {
    if (a.parts.empty()) throw Error(ErrorKind::BadParameter, "--parts is required with --ideal");
    configs.emplace_back(a.ideal, a.parts);
  } else {
    for (const auto& id : inst.lattice.nodes()) {
      auto subs = inst.lattice.maximal_subideals(id);
      if (subs.size() >= 2) configs.emplace_back(id, std::move(subs));
    }
  }
  bool all_exact = true;
  Json results = Json::array();
  std::ostringstream text;
  for (const auto& [ideal, parts] : configs) {
    const auto r = check_gamma_exact(inst, ideal, parts);
    all_exact = all_exact && r.exact;
    results.push_back({{"ideal", ideal},
                       {"parts", parts},
                       {"exact", r.exact},
                       {"failure", r.failure},
                       {"witness", nullptr}});
    if (r.witness) {
      Json w = Json::array();
      for (const auto& x : *r.witness) w.push_back(integer_to_json(x));
      results.back()["witness"] = w;
    }
    text << (r.exact ? "EXACT " : "NOT EXACT ") << ideal << " <- {" << join_list(parts) << "}";
    if (!r.exact) {
      text << ": " << r.failure;
      if (r.witness) {
        text << " (witness";
        for (const auto& x : *r.witness) text << ' ' << x;
        text << ')';
      }
    }
    text << '\n';
  }
  if (configs.empty()) text << "no comaximal families to check\n";
  out << (a.common.json() ? serialize(Json{{"ok", all_exact}, {"results", results}}) : text.str());
  return all_exact ? kSuccess : kSemanticFailure;
}

// ----------------------------------------------------------- coherence-check

struct CoherenceArgs {
  Common common;
  std::string path;
};

int cmd_coherence(const CoherenceArgs& a, std::ostream& out) {
  const auto inst = load_instance(a.path);
  if (!inst.family) throw Error(ErrorKind::MissingMap, "instance has no coherent_family block");
  ValidationReport rep;
  add_family_checks(inst.data, *inst.family, rep);
  out << (a.common.json() ? serialize(report_to_json(rep)) : report_to_text(rep));
  return rep.ok() ? kSuccess : kSemanticFailure;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Ideal-preserving Kunneth splittings over finite ideal lattices", "ksplit"};
  app.require_subcommand(1);

  ValidateArgs va;
  auto* validate = app.add_subcommand("validate", "Check the structural hypotheses of an instance file");
  validate->add_option("instance", va.path)->required();
  add_format(validate, va.common);

  SplitArgs sa;
  auto* split = app.add_subcommand("split", "Build an ideal-preserving splitting family");
  split->add_option("instance", sa.path)->required();
  split->add_option("-o,--output", sa.output, "Where to write the splitting family");
  split->add_option("--strategy", sa.strategy)->check(CLI::IsMember({"solver", "greedy", "both"}))->capture_default_str();
  split->add_flag("--oracle", sa.oracle, "Cross-check against exhaustive enumeration");
  split->add_option("--bound", sa.bound, "Largest |Kn| the oracle enumerates")->capture_default_str();
  split->add_flag("--force", sa.force, "Attempt the construction on an invalid instance");
  split->add_flag("--global-fallback", sa.global_fallback, "Retry a failed step with one global solve");
  add_format(split, sa.common);

  LiftArgs la;
  auto* lift = app.add_subcommand("lift", "Lift (phi0, phi1) to an ideal-preserving isomorphism");
  lift->add_option("instance_a", la.a)->required();
  lift->add_option("instance_b", la.b)->required();
  lift->add_option("iso", la.iso, "File with phi0, phi1 and the ideal pairing")->required();
  lift->add_option("-o,--output", la.output);
  lift->add_option("--strategy", la.strategy)->check(CLI::IsMember({"solver", "greedy", "both"}))->capture_default_str();
  add_format(lift, la.common);

  GenArgs ga;
  auto* gen = app.add_subcommand("gen", "Generate a fixture instance");
  gen->add_option("fixture", ga.kind, "aligned, twisted, dp or defect")->required()->check(CLI::IsMember({"aligned", "twisted", "dp", "defect"}));
  gen->add_option("--seed", ga.seed)->capture_default_str();
  gen->add_option("--p", ga.p)->capture_default_str();
  gen->add_option("--m", ga.m)->capture_default_str();
  gen->add_option("--k", ga.k)->capture_default_str();
  gen->add_option("--kind", ga.defect, "Defect to plant (defect fixtures)")->capture_default_str();
  gen->add_option("--base", ga.base, "Instance file to plant the defect in (default: twisted --seed)");
  gen->add_option("--family", ga.family, "Attach the natural coherent family for these coefficients")->delimiter(',');
  gen->add_option("-o,--output", ga.output);

  GammaArgs gma;
  auto* gamma = app.add_subcommand("gamma-check", "Exactness of the gamma complex of a comaximal family");
  gamma->add_option("instance", gma.path)->required();
  gamma->add_option("--ideal", gma.ideal, "Ideal to resolve (default: every ideal with two or more maximal subideals)");
  gamma->add_option("--parts", gma.parts, "Comaximal family below the ideal")->delimiter(',');
  add_format(gamma, gma.common);

  CoherenceArgs ca;
  auto* coherence = app.add_subcommand("coherence-check", "Coefficient relations of the coherent family block");
  coherence->add_option("instance", ca.path)->required();
  add_format(coherence, ca.common);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kParseFailure;
  }

  try {
    if (validate->parsed()) return cmd_validate(va, out);
    if (split->parsed()) return cmd_split(sa, out, err);
    if (lift->parsed()) return cmd_lift(la, out, err);
    if (gen->parsed()) return cmd_gen(ga, out, err);
    if (gamma->parsed()) return cmd_gamma(gma, out);
    if (coherence->parsed()) return cmd_coherence(ca, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.kind() == ErrorKind::ParseError ? kParseFailure : kSemanticFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kSemanticFailure;
  }
  return kParseFailure;
}

}  // namespace ksplit::cli
