#include "ksplit/kunneth.hpp"

#include "ksplit/error.hpp"

#include <functional>

namespace ksplit {

namespace {

/// First generator of `a` that is not in `b`.
std::optional<Vector> escapee(const Subgroup& a, const Subgroup& b) {
  for (const auto& g : a.generators())
    if (!b.contains(g)) return g;
  return std::nullopt;
}

/// First basis vector on which two maps with the same domain differ.
std::optional<Vector> disagreement(const GroupHom& f, const GroupHom& g) {
  for (std::size_t j = 0; j < f.domain().rank(); ++j) {
    if (f.matrix().column(j) != g.matrix().column(j)) return f.domain().basis_vector(j);
  }
  return std::nullopt;
}

struct Failure {
  std::string detail;
  std::string where;
  std::optional<Vector> witness;
};

using Probe = std::function<std::optional<Failure>()>;

CheckResult run_check(const std::string& name, const Probe& probe) {
  CheckResult r;
  r.name = name;
  try {
    if (auto f = probe()) {
      r.status = CheckStatus::Fail;
      r.detail = std::move(f->detail);
      r.where = std::move(f->where);
      r.witness = std::move(f->witness);
    }
  } catch (const Error& e) {
    r.status = CheckStatus::Fail;
    r.detail = std::string("could not evaluate: ") + e.what();
  }
  return r;
}

CheckResult skipped(const std::string& name, const std::string& why) {
  CheckResult r;
  r.name = name;
  r.status = CheckStatus::Skipped;
  r.detail = why;
  return r;
}

std::optional<Failure> sequence_exactness(const KData& data, const CoeffGroup& level) {
  const std::string tag = "n=" + level.n.str();
  if (!data.K0.is_torsion_free()) return Failure{"K0 has torsion", tag, std::nullopt};
  if (level.n < 2) return Failure{"coefficient must be at least 2", tag, std::nullopt};
  const Quotient red = tensor_zmod(data.K0, level.n);
  if (!(level.rho_tilde.domain() == red.group) || !(level.rho_tilde.codomain() == level.Kn))
    return Failure{"rho_tilde must map K0 (x) Z/n into Kn", tag, std::nullopt};
  if (!(level.beta_tilde.domain() == level.Kn) || !(level.beta_tilde.codomain() == data.K1))
    return Failure{"beta_tilde must map Kn into K1", tag, std::nullopt};
  const Subgroup ker_rho = kernel(level.rho_tilde);
  if (!ker_rho.is_trivial()) return Failure{"rho_tilde is not injective", tag, ker_rho.generators().front()};
  const Subgroup k1n = n_torsion(data.K1, level.n);
  const Subgroup im_beta = image(level.beta_tilde);
  if (auto w = escapee(im_beta, k1n)) return Failure{"beta_tilde leaves K1[n]", tag, *w};
  if (auto w = escapee(k1n, im_beta)) return Failure{"beta_tilde misses part of K1[n]", tag, *w};
  const Subgroup ker_beta = kernel(level.beta_tilde);
  const Subgroup im_rho = image(level.rho_tilde);
  if (auto w = escapee(ker_beta, im_rho)) return Failure{"ker beta_tilde is larger than im rho_tilde", tag, *w};
  if (auto w = escapee(im_rho, ker_beta)) return Failure{"beta_tilde o rho_tilde is not zero", tag, *w};
  return std::nullopt;
}

/// Some x in H ∩ kG outside kH, searching k up to a bound that covers every
/// possible failure for finitely generated G.
std::optional<std::pair<Integer, Vector>> purity_witness(const Subgroup& h) {
  if (is_pure(h)) return std::nullopt;
  const FgGroup& g = h.ambient();
  const Integer bound = quotient(g, h).group.torsion_exponent() * g.torsion_exponent();
  const Subgroup whole = Subgroup::whole(g);
  for (Integer k = 2; k <= bound; ++k) {
    const Subgroup lhs = meet(h, multiple(whole, k));
    if (auto w = escapee(lhs, multiple(h, k))) return std::make_pair(k, *w);
  }
  return std::make_pair(Integer(0), g.zero());
}

}  // namespace

std::vector<Integer> CoherentFamily::coefficients() const {
  std::vector<Integer> out;
  for (const auto& [n, level] : levels) out.push_back(n);
  return out;
}

const IdealNode& KunnethInstance::ideal(const std::string& id) const {
  auto it = ideals.find(id);
  if (it == ideals.end()) throw Error(ErrorKind::UnknownNode, "no ideal named '" + id + "'");
  return it->second;
}

Quotient KunnethInstance::k0_mod_n() const { return tensor_zmod(data.K0, coeff.n); }

Subgroup KunnethInstance::k1_torsion(const std::string& id) const {
  return meet(ideal(id).K1, n_torsion(data.K1, coeff.n));
}

Subgroup KunnethInstance::rho_image(const std::string& id) const { return image(mod_reduction(*this), ideal(id).K0); }

Embedding torsion_structure(const FgGroup& g, const Integer& n) { return n_torsion(g, n).structure(); }

GroupHom mod_reduction(const KData& data, const CoeffGroup& level) {
  return level.rho_tilde.after(tensor_zmod(data.K0, level.n).projection);
}

GroupHom mod_reduction(const KunnethInstance& inst) { return mod_reduction(inst.data, inst.coeff); }

bool ValidationReport::ok() const {
  for (const auto& c : checks)
    if (!c.passed()) return false;
  return true;
}

std::vector<std::string> ValidationReport::failed() const {
  std::vector<std::string> out;
  for (const auto& c : checks)
    if (c.status == CheckStatus::Fail) out.push_back(c.name);
  return out;
}

const CheckResult* ValidationReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

ValidationReport validate_instance(const KunnethInstance& inst) {
  ValidationReport rep;
  const IdealLattice& lat = inst.lattice;
  const auto& ids = lat.nodes();

  rep.checks.push_back(run_check("top-exactness", [&] { return sequence_exactness(inst.data, inst.coeff); }));

  std::string why;
  const bool is_lattice = lat.is_lattice(&why);
  rep.checks.push_back(run_check("lattice-structure", [&]() -> std::optional<Failure> {
    for (const auto& id : ids) {
      if (!inst.ideals.count(id)) return Failure{"node has no subgroup data", id, std::nullopt};
      const IdealNode& node = inst.ideal(id);
      if (!(node.K0.ambient() == inst.data.K0) || !(node.K1.ambient() == inst.data.K1) ||
          !(node.Kn.ambient() == inst.coeff.Kn))
        return Failure{"subgroup lives in the wrong ambient group", id, std::nullopt};
    }
    for (const auto& [id, node] : inst.ideals)
      if (!lat.contains(id)) return Failure{"subgroup data for a node outside the lattice", id, std::nullopt};
    if (!is_lattice) return Failure{"order is not a lattice: " + why, "", std::nullopt};
    return std::nullopt;
  }));

  const auto bottom = lat.bottom();
  const auto top = lat.top();
  if (bottom && top) {
    rep.checks.push_back(run_check("bounds", [&]() -> std::optional<Failure> {
      const IdealNode& lo = inst.ideal(*bottom);
      for (const Subgroup* s : {&lo.K0, &lo.K1, &lo.Kn})
        if (!s->is_trivial()) return Failure{"bottom ideal carries a nonzero subgroup", *bottom, s->generators().front()};
      const IdealNode& hi = inst.ideal(*top);
      for (const Subgroup* s : {&hi.K0, &hi.K1, &hi.Kn}) {
        if (auto w = escapee(Subgroup::whole(s->ambient()), *s))
          return Failure{"top ideal does not carry the whole group", *top, *w};
      }
      return std::nullopt;
    }));
  } else {
    rep.checks.push_back(skipped("bounds", "no unique bottom and top"));
  }

  rep.checks.push_back(run_check("monotonicity", [&]() -> std::optional<Failure> {
    for (const auto& a : ids)
      for (const auto& b : ids) {
        if (a == b || !lat.leq(a, b)) continue;
        const IdealNode& x = inst.ideal(a);
        const IdealNode& y = inst.ideal(b);
        const std::string where = a + " <= " + b;
        if (auto w = escapee(x.K0, y.K0)) return Failure{"K0 not monotone", where, *w};
        if (auto w = escapee(x.K1, y.K1)) return Failure{"K1 not monotone", where, *w};
        if (auto w = escapee(x.Kn, y.Kn)) return Failure{"Kn not monotone", where, *w};
      }
    return std::nullopt;
  }));

  rep.checks.push_back(run_check("naturality", [&]() -> std::optional<Failure> {
    for (const auto& id : ids) {
      const IdealNode& node = inst.ideal(id);
      if (auto w = escapee(inst.rho_image(id), node.Kn)) return Failure{"rho_tilde leaves Kn(I)", id, *w};
      if (auto w = escapee(image(inst.coeff.beta_tilde, node.Kn), node.K1))
        return Failure{"beta_tilde leaves K1(I)", id, *w};
    }
    return std::nullopt;
  }));

  rep.checks.push_back(run_check("ideal-exactness", [&]() -> std::optional<Failure> {
    const Subgroup ker_beta = kernel(inst.coeff.beta_tilde);
    for (const auto& id : ids) {
      const IdealNode& node = inst.ideal(id);
      if (auto w = escapee(inst.k1_torsion(id), image(inst.coeff.beta_tilde, node.Kn)))
        return Failure{"beta_tilde restricted to Kn(I) is not onto K1(I)[n]", id, *w};
      if (auto w = escapee(meet(ker_beta, node.Kn), inst.rho_image(id)))
        return Failure{"kernel of beta_tilde on Kn(I) exceeds rho_tilde(K0(I))", id, *w};
    }
    return std::nullopt;
  }));

  rep.checks.push_back(run_check("purity", [&]() -> std::optional<Failure> {
    for (const auto& id : ids) {
      const IdealNode& node = inst.ideal(id);
      if (auto w = purity_witness(node.K0)) return Failure{"K0(I) not pure (k=" + w->first.str() + ")", id, w->second};
      if (auto w = purity_witness(node.K1)) return Failure{"K1(I) not pure (k=" + w->first.str() + ")", id, w->second};
    }
    return std::nullopt;
  }));

  if (is_lattice) {
    rep.checks.push_back(run_check("lattice-laws", [&]() -> std::optional<Failure> {
      for (std::size_t i = 0; i < ids.size(); ++i)
        for (std::size_t j = i + 1; j < ids.size(); ++j) {
          const IdealNode& a = inst.ideal(ids[i]);
          const IdealNode& b = inst.ideal(ids[j]);
          const IdealNode& lo = inst.ideal(lat.meet(ids[i], ids[j]));
          const IdealNode& hi = inst.ideal(lat.join(ids[i], ids[j]));
          const std::string where = ids[i] + ", " + ids[j];
          const std::pair<const char*, const Subgroup IdealNode::*> parts[] = {
              {"K0", &IdealNode::K0}, {"K1", &IdealNode::K1}, {"Kn", &IdealNode::Kn}};
          for (const auto& [label, field] : parts) {
            const Subgroup cap = meet(a.*field, b.*field);
            const Subgroup cup = join(a.*field, b.*field);
            const std::string l = label;
            if (auto w = escapee(cap, lo.*field)) return Failure{l + " of the meet is smaller than the intersection", where, *w};
            if (auto w = escapee(lo.*field, cap)) return Failure{l + " of the meet is larger than the intersection", where, *w};
            if (auto w = escapee(hi.*field, cup)) return Failure{l + " of the join is larger than the sum", where, *w};
            if (auto w = escapee(cup, hi.*field)) return Failure{l + " of the join is smaller than the sum", where, *w};
          }
        }
      return std::nullopt;
    }));
    rep.checks.push_back(run_check("distributivity", [&]() -> std::optional<Failure> {
      if (auto t = lat.distributivity_violation())
        return Failure{"I ^ (J v K) differs from (I ^ J) v (I ^ K)", (*t)[0] + ", " + (*t)[1] + ", " + (*t)[2],
                       std::nullopt};
      return std::nullopt;
    }));
  } else {
    rep.checks.push_back(skipped("lattice-laws", "order is not a lattice"));
    rep.checks.push_back(skipped("distributivity", "order is not a lattice"));
  }
  return rep;
}

// ---------------------------------------------------------------- coherence

Integer bockstein_scalar(const Integer& m, const Integer& n) { return n / gcd(n, m); }
Integer reduction_scalar(const Integer& m, const Integer& n) { return m / gcd(n, m); }
Integer composition_scalar(const Integer& k, const Integer& m, const Integer& n) {
  const Integer num = m * gcd(k, n);
  const Integer den = gcd(k, m) * gcd(m, n);
  if (num % den != 0) throw Error(ErrorKind::BadParameter, "composition scalar is not integral");
  return num / den;
}

namespace {

const CoeffGroup& level_of(const CoherentFamily& fam, const Integer& n) {
  auto it = fam.levels.find(n);
  if (it == fam.levels.end()) throw Error(ErrorKind::MissingMap, "no coefficient level " + n.str());
  return it->second;
}

std::string pair_tag(const Integer& m, const Integer& n) { return "(m=" + m.str() + ", n=" + n.str() + ")"; }

/// lambda_{m,n} expected from the relation: y -> n/(n,m) y on structure groups.
GroupHom natural_lambda(const FgGroup& k1, const Integer& m, const Integer& n) {
  const Embedding src = torsion_structure(k1, n);
  const Embedding dst = torsion_structure(k1, m);
  return corestrict(src.inclusion.scaled(bockstein_scalar(m, n)), dst);
}

}  // namespace

ValidationReport check_coherence(const KData& data, const CoherentFamily& fam) {
  // References to absent data are a precondition failure, not a report entry.
  for (const auto& [key, k] : fam.kappa) {
    level_of(fam, key.first);
    level_of(fam, key.second);
  }
  for (const auto& [key, l] : fam.lambda) {
    level_of(fam, key.first);
    level_of(fam, key.second);
  }
  for (const auto& [km, a] : fam.kappa)
    for (const auto& [mn, b] : fam.kappa) {
      if (km.second != mn.first) continue;
      if (!fam.kappa.count({km.first, mn.second}))
        throw Error(ErrorKind::MissingMap, "kappa composition needs kappa" + pair_tag(km.first, mn.second));
    }

  ValidationReport rep;
  rep.checks.push_back(run_check("level-exactness", [&]() -> std::optional<Failure> {
    for (const auto& [n, level] : fam.levels) {
      if (level.n != n) return Failure{"level keyed by a different coefficient", "n=" + n.str(), std::nullopt};
      if (auto f = sequence_exactness(data, level)) return f;
    }
    return std::nullopt;
  }));
  rep.checks.push_back(run_check("bockstein-compatibility", [&]() -> std::optional<Failure> {
    for (const auto& [key, k] : fam.kappa) {
      const auto& [m, n] = key;
      const GroupHom lhs = level_of(fam, m).beta_tilde.after(k);
      const GroupHom rhs = level_of(fam, n).beta_tilde.scaled(bockstein_scalar(m, n));
      if (auto w = disagreement(lhs, rhs)) return Failure{"beta_m kappa != n/(n,m) beta_n", pair_tag(m, n), *w};
    }
    return std::nullopt;
  }));
  rep.checks.push_back(run_check("reduction-compatibility", [&]() -> std::optional<Failure> {
    for (const auto& [key, k] : fam.kappa) {
      const auto& [m, n] = key;
      const GroupHom lhs = k.after(mod_reduction(data, level_of(fam, n)));
      const GroupHom rhs = mod_reduction(data, level_of(fam, m)).scaled(reduction_scalar(m, n));
      if (auto w = disagreement(lhs, rhs)) return Failure{"kappa rho_n != m/(n,m) rho_m", pair_tag(m, n), *w};
    }
    return std::nullopt;
  }));
  rep.checks.push_back(run_check("kappa-composition", [&]() -> std::optional<Failure> {
    for (const auto& [km, a] : fam.kappa)
      for (const auto& [mn, b] : fam.kappa) {
        if (km.second != mn.first) continue;
        const Integer& k = km.first;
        const Integer& m = km.second;
        const Integer& n = mn.second;
        const GroupHom lhs = a.after(b);
        const GroupHom rhs = fam.kappa.at({k, n}).scaled(composition_scalar(k, m, n));
        if (auto w = disagreement(lhs, rhs))
          return Failure{"kappa_{k,m} kappa_{m,n} != scalar kappa_{k,n}",
                         "(k=" + k.str() + ", m=" + m.str() + ", n=" + n.str() + ")", *w};
      }
    return std::nullopt;
  }));
  if (!fam.lambda.empty()) {
    rep.checks.push_back(run_check("lambda-compatibility", [&]() -> std::optional<Failure> {
      for (const auto& [key, l] : fam.lambda) {
        const auto& [m, n] = key;
        if (auto w = disagreement(l, natural_lambda(data.K1, m, n)))
          return Failure{"lambda is not n/(n,m) on K1[n]", pair_tag(m, n), *w};
      }
      return std::nullopt;
    }));
  }
  return rep;
}

std::optional<CoherenceViolation> family_coherence_violation(const KData& data, const CoherentFamily& fam) {
  for (const auto& [n, level] : fam.levels)
    if (!fam.sigmas.count(n)) throw Error(ErrorKind::MissingSigma, "no splitting for coefficient " + n.str());
  for (const auto& [key, k] : fam.kappa) {
    const auto& [m, n] = key;
    if (!fam.sigmas.count(m) || !fam.sigmas.count(n))
      throw Error(ErrorKind::MissingSigma, "no splitting for a coefficient of kappa" + pair_tag(m, n));
    auto l = fam.lambda.find(key);
    const GroupHom lambda = l != fam.lambda.end() ? l->second : natural_lambda(data.K1, m, n);
    const GroupHom lhs = fam.sigmas.at(m).after(lambda);
    const GroupHom rhs = k.after(fam.sigmas.at(n));
    if (auto w = disagreement(lhs, rhs)) return CoherenceViolation{m, n, *w};
  }
  return std::nullopt;
}

bool check_family_coherence(const KData& data, const CoherentFamily& fam) {
  return !family_coherence_violation(data, fam).has_value();
}

}  // namespace ksplit
