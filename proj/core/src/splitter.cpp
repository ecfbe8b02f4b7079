#include "ksplit/splitter.hpp"

#include "ksplit/error.hpp"

#include <set>

namespace ksplit {

namespace {

std::optional<Vector> escapee(const Subgroup& a, const Subgroup& b) {
  for (const auto& g : a.generators())
    if (!b.contains(g)) return g;
  return std::nullopt;
}

std::string join_ids(const std::vector<std::string>& ids) {
  std::string out;
  for (const auto& id : ids) out += (out.empty() ? "" : ", ") + id;
  return out;
}

Integer entry_step(const Integer& e, const Integer& d) {
  if (e == 0) return d == 0 ? 1 : 0;
  return d == 0 ? Integer(1) : e / gcd(d, e);
}

/// tau must be a splitting of the ideal's sequence.
void check_tau(const KunnethInstance& inst, const std::string& ideal, const SubgroupMap& tau) {
  if (!(tau.domain() == inst.k1_torsion(ideal)) || !(tau.codomain() == inst.coeff.Kn))
    throw Error(ErrorKind::InvalidTau, "splitting for " + ideal + " has the wrong domain or codomain");
  const Subgroup& kn = inst.ideal(ideal).Kn;
  const auto& gens = tau.domain().generators();
  for (std::size_t l = 0; l < gens.size(); ++l) {
    const Vector& img = tau.generator_images()[l];
    if (inst.coeff.beta_tilde.apply(img) != gens[l])
      throw Error(ErrorKind::InvalidTau, "splitting for " + ideal + " is not a section on " + to_string(gens[l]));
    if (!kn.contains(img))
      throw Error(ErrorKind::InvalidTau, "splitting for " + ideal + " leaves Kn(" + ideal + ")");
  }
}

}  // namespace

const SubgroupMap& SplittingFamily::at(const std::string& id) const {
  auto it = sigma.find(id);
  if (it == sigma.end()) throw Error(ErrorKind::UnknownNode, "no splitting for ideal '" + id + "'");
  return it->second;
}

// ---------------------------------------------------------------- gamma

GammaComplex gamma_complex(const std::vector<Subgroup>& parts, const std::vector<Subgroup>& overlaps) {
  if (parts.empty()) throw Error(ErrorKind::BadParameter, "gamma complex needs at least one part");
  const FgGroup& h = parts.front().ambient();
  for (const auto& p : parts)
    if (!(p.ambient() == h)) throw Error(ErrorKind::AmbientMismatch, "parts live in different groups");
  GammaComplex gc;
  for (std::size_t i = 0; i < parts.size(); ++i)
    for (std::size_t j = i + 1; j < parts.size(); ++j) gc.pairs.emplace_back(i, j);
  if (!overlaps.empty() && overlaps.size() != gc.pairs.size())
    throw Error(ErrorKind::ShapeMismatch, "need one overlap per pair of parts");
  for (const auto& p : parts) gc.parts.push_back(p.structure());
  for (std::size_t k = 0; k < gc.pairs.size(); ++k) {
    const auto [i, j] = gc.pairs[k];
    const Subgroup o = overlaps.empty() ? meet(parts[i], parts[j]) : overlaps[k];
    if (!(o.ambient() == h)) throw Error(ErrorKind::AmbientMismatch, "overlap lives in a different group");
    gc.overlaps.push_back(o.structure());
  }
  std::vector<FgGroup> pg, og;
  for (const auto& e : gc.parts) pg.push_back(e.group);
  for (const auto& e : gc.overlaps) og.push_back(e.group);
  gc.parts_sum = direct_sum(pg);
  gc.overlaps_sum = direct_sum(og);

  gc.gamma0 = GroupHom::zero(gc.parts_sum.group, h);
  for (std::size_t i = 0; i < parts.size(); ++i)
    gc.gamma0 = gc.gamma0 + gc.parts[i].inclusion.after(gc.parts_sum.projections[i]);

  gc.gamma1 = GroupHom::zero(gc.overlaps_sum.group, gc.parts_sum.group);
  for (std::size_t k = 0; k < gc.pairs.size(); ++k) {
    const auto [i, j] = gc.pairs[k];
    const GroupHom to_i = gc.parts_sum.injections[i].after(corestrict(gc.overlaps[k].inclusion, gc.parts[i]));
    const GroupHom to_j = gc.parts_sum.injections[j].after(corestrict(gc.overlaps[k].inclusion, gc.parts[j]));
    gc.gamma1 = gc.gamma1 + (to_i - to_j).after(gc.overlaps_sum.projections[k]);
  }
  return gc;
}

GroupHom gamma0(const std::vector<Subgroup>& parts) { return gamma_complex(parts).gamma0; }
GroupHom gamma1(const std::vector<Subgroup>& parts) { return gamma_complex(parts).gamma1; }

GammaCheck check_gamma_exact(const KunnethInstance& inst, const std::string& ideal,
                             const std::vector<std::string>& parts) {
  if (parts.empty()) throw Error(ErrorKind::NotComaximal, "empty family");
  if (!inst.lattice.is_comaximal_family(ideal, parts))
    throw Error(ErrorKind::NotComaximal, "{" + join_ids(parts) + "} is not comaximal under " + ideal);
  std::vector<Subgroup> gs, overlaps;
  for (const auto& p : parts) gs.push_back(inst.k1_torsion(p));
  for (std::size_t i = 0; i < parts.size(); ++i)
    for (std::size_t j = i + 1; j < parts.size(); ++j)
      overlaps.push_back(inst.k1_torsion(inst.lattice.meet(parts[i], parts[j])));
  const Subgroup target = inst.k1_torsion(ideal);

  GammaCheck out;
  GammaComplex gc;
  try {
    gc = gamma_complex(gs, overlaps);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotContained) throw;
    out.exact = false;
    out.failure = "overlap-outside-part";
    return out;
  }
  const Subgroup im0 = image(gc.gamma0);
  if (auto w = escapee(target, im0)) return GammaCheck{false, "gamma0-not-surjective", *w};
  if (auto w = escapee(im0, target)) return GammaCheck{false, "gamma0-leaves-target", *w};
  if (auto w = escapee(kernel(gc.gamma0), image(gc.gamma1))) return GammaCheck{false, "kernel-not-image", *w};
  return out;
}

// ---------------------------------------------------------------- steps

std::string to_string(Strategy s) {
  switch (s) {
    case Strategy::Solver: return "solver";
    case Strategy::Greedy: return "greedy";
    case Strategy::Both: return "both";
  }
  return "solver";
}

Strategy strategy_from_string(const std::string& name) {
  for (auto s : {Strategy::Solver, Strategy::Greedy, Strategy::Both})
    if (to_string(s) == name) return s;
  throw Error(ErrorKind::BadParameter, "unknown strategy '" + name + "'");
}

IdealSequence ideal_sequence(const KunnethInstance& inst, const std::string& ideal) {
  Embedding middle = inst.ideal(ideal).Kn.structure();
  Embedding quot = inst.k1_torsion(ideal).structure();
  GroupHom right;
  try {
    right = corestrict(inst.coeff.beta_tilde.after(middle.inclusion), quot);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotContained) throw;
    throw Error(ErrorKind::InvalidInstance, "beta_tilde maps Kn(" + ideal + ") outside K1(" + ideal + ")[n]");
  }
  const Embedding ker = kernel(right).structure();
  try {
    return IdealSequence{middle, quot, ShortExact(ker.inclusion, right)};
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotExact) throw;
    throw Error(ErrorKind::InvalidInstance, "sequence of ideal " + ideal + " is not exact");
  }
}

SubgroupMap extend_splitting(const KunnethInstance& inst, const std::string& target, const std::string& source,
                             const SubgroupMap& tau, Strategy strategy, std::vector<std::string>* disagreements) {
  if (!inst.lattice.leq(source, target))
    throw Error(ErrorKind::NotBelow, source + " is not below " + target);
  check_tau(inst, source, tau);
  if (source == target) return tau;

  const IdealSequence is = ideal_sequence(inst, target);
  const Subgroup sub = inst.k1_torsion(source);
  std::vector<Vector> coords;
  for (const auto& g : sub.generators()) coords.push_back(*is.quotient.coordinates_of(g));
  const Subgroup local(is.quotient.group, coords);
  std::vector<Vector> images;
  for (const auto& g : local.generators()) {
    auto c = is.middle.coordinates_of(tau.apply(is.quotient.inclusion.apply(g)));
    if (!c) throw Error(ErrorKind::InvalidTau, "splitting for " + source + " leaves Kn(" + target + ")");
    images.push_back(std::move(*c));
  }
  const SubgroupMap partial(local, is.middle.group, images);

  std::optional<GroupHom> found;
  if (strategy != Strategy::Greedy) found = find_splitting_constrained(is.sequence, partial);
  if (strategy != Strategy::Solver) {
    auto greedy = greedy_splitting(is.sequence, partial);
    if (strategy == Strategy::Greedy) found = std::move(greedy);
    else if (greedy.has_value() != found.has_value() && disagreements) disagreements->push_back(target);
  }
  if (!found)
    throw NoExtensionError(target, "no splitting of " + target + " extends the one on " + source + " (" +
                                       to_string(strategy) + ")");
  std::vector<Vector> out;
  const Subgroup dom = inst.k1_torsion(target);
  for (const auto& g : dom.generators())
    out.push_back(is.middle.inclusion.apply(found->apply(*is.quotient.coordinates_of(g))));
  return SubgroupMap(dom, inst.coeff.Kn, std::move(out));
}

SubgroupMap extend_splitting(const KunnethInstance& inst, const std::string& source, const SubgroupMap& tau,
                             Strategy strategy) {
  const auto top = inst.lattice.top();
  if (!top) throw Error(ErrorKind::InvalidLattice, "lattice has no top");
  return extend_splitting(inst, *top, source, tau, strategy);
}

SubgroupMap glue_comaximal(const KunnethInstance& inst, const std::string& ideal, const std::vector<std::string>& parts,
                           const std::vector<SubgroupMap>& sigmas, bool alternate_preimage) {
  if (parts.empty() || !inst.lattice.is_comaximal_family(ideal, parts))
    throw Error(ErrorKind::NotComaximal, "{" + join_ids(parts) + "} is not comaximal under " + ideal);
  if (sigmas.size() != parts.size()) throw Error(ErrorKind::ShapeMismatch, "need one splitting per part");
  for (std::size_t i = 0; i < parts.size(); ++i) check_tau(inst, parts[i], sigmas[i]);

  std::vector<Subgroup> gs;
  for (const auto& s : sigmas) gs.push_back(s.domain());
  const GammaComplex gc = gamma_complex(gs);
  const FgGroup& kn = inst.coeff.Kn;
  // Sum of the part splittings on the direct sum.
  GroupHom total = GroupHom::zero(gc.parts_sum.group, kn);
  for (std::size_t i = 0; i < sigmas.size(); ++i)
    total = total + sigmas[i].on_structure().after(gc.parts_sum.projections[i]);

  const Subgroup ker = kernel(gc.gamma0);
  for (const auto& z : ker.generators())
    if (!is_zero(total.apply(z)))
      throw Error(ErrorKind::WellDefinednessViolation,
                  "splittings disagree on the overlap element " + to_string(z) + " of the parts of " + ideal);
  Vector shift = gc.parts_sum.group.zero();
  if (alternate_preimage)
    for (const auto& z : ker.generators()) shift = gc.parts_sum.group.add(shift, z);

  const Subgroup dom = inst.k1_torsion(ideal);
  const Subgroup& kn_i = inst.ideal(ideal).Kn;
  std::vector<Vector> images;
  for (const auto& y : dom.generators()) {
    auto pre = solve_preimage(gc.gamma0, y);
    if (!pre) throw Error(ErrorKind::GammaNotSurjective, to_string(y) + " is not a sum over the parts of " + ideal);
    Vector img = total.apply(gc.parts_sum.group.add(*pre, shift));
    if (inst.coeff.beta_tilde.apply(img) != y || !kn_i.contains(img))
      throw Error(ErrorKind::InvalidInstance, "glued map on " + ideal + " is not a splitting into Kn(" + ideal + ")");
    images.push_back(std::move(img));
  }
  return SubgroupMap(dom, kn, std::move(images));
}

SplittingFamily build_ideal_splitting(const KunnethInstance& inst, const SplitOptions& options,
                                      SplitDiagnostics* diagnostics) {
  if (!options.force) {
    const ValidationReport rep = validate_instance(inst);
    if (!rep.ok()) throw Error(ErrorKind::InvalidInstance, "instance fails validation: " + join_ids(rep.failed()));
  }
  SplitDiagnostics local;
  SplitDiagnostics& diag = diagnostics ? *diagnostics : local;
  SplittingFamily fam{inst.n(), {}};
  std::set<std::string> done;
  try {
    while (auto next = inst.lattice.next_ideal(done)) {
      const std::string& id = *next;
      const auto parts = inst.lattice.maximal_subideals(id);
      SubgroupMap sigma;
      if (parts.empty()) {
        // Base of the induction: extend the empty map inside the ideal itself.
        const Subgroup dom = inst.k1_torsion(id);
        if (dom.is_trivial()) {
          sigma = SubgroupMap::zero(dom, inst.coeff.Kn);
        } else {
          const IdealSequence is = ideal_sequence(inst, id);
          auto s = find_splitting(is.sequence);
          if (!s) throw NoExtensionError(id, "the sequence of " + id + " does not split");
          std::vector<Vector> out;
          for (const auto& g : dom.generators())
            out.push_back(is.middle.inclusion.apply(s->apply(*is.quotient.coordinates_of(g))));
          sigma = SubgroupMap(dom, inst.coeff.Kn, std::move(out));
        }
        diag.steps.push_back("base");
      } else if (parts.size() == 1) {
        sigma = extend_splitting(inst, id, parts.front(), fam.sigma.at(parts.front()), options.strategy,
                                 &diag.strategy_disagreements);
        diag.steps.push_back("extend from " + parts.front());
      } else {
        std::vector<SubgroupMap> sigmas;
        for (const auto& p : parts) sigmas.push_back(fam.sigma.at(p));
        sigma = glue_comaximal(inst, id, parts, sigmas);
        diag.steps.push_back("glue " + join_ids(parts));
      }
      fam.sigma.emplace(id, std::move(sigma));
      diag.order.push_back(id);
      done.insert(id);
    }
  } catch (const NoExtensionError&) {
    if (!options.global_fallback) throw;
    auto top = find_global_ideal_splitting(inst);
    if (!top) throw;
    diag.used_global_fallback = true;
    return family_from_top(inst, *top);
  }
  return fam;
}

// ---------------------------------------------------------------- verification

ValidationReport verify_ideal_splitting(const KunnethInstance& inst, const SplittingFamily& fam) {
  ValidationReport rep;
  auto run = [&](const std::string& name, auto&& probe) {
    CheckResult r;
    r.name = name;
    try {
      probe(r);
    } catch (const Error& e) {
      r.status = CheckStatus::Fail;
      r.detail = std::string("could not evaluate: ") + e.what();
    }
    rep.checks.push_back(std::move(r));
  };
  auto fail = [](CheckResult& r, std::string detail, std::string where, std::optional<Vector> w) {
    r.status = CheckStatus::Fail;
    r.detail = std::move(detail);
    r.where = std::move(where);
    r.witness = std::move(w);
  };
  const auto& ids = inst.lattice.nodes();
  bool domains_ok = true;
  run("domains", [&](CheckResult& r) {
    if (fam.n != inst.n()) return fail(r, "family is for another coefficient", "", std::nullopt);
    for (const auto& id : ids) {
      auto it = fam.sigma.find(id);
      if (it == fam.sigma.end()) return fail(r, "no map for this ideal", id, std::nullopt);
      if (!(it->second.domain() == inst.k1_torsion(id)) || !(it->second.codomain() == inst.coeff.Kn))
        return fail(r, "map is not defined on K1(I)[n] with values in Kn", id, std::nullopt);
    }
    for (const auto& [id, s] : fam.sigma)
      if (!inst.lattice.contains(id)) return fail(r, "map for an ideal outside the lattice", id, std::nullopt);
  });
  domains_ok = rep.checks.back().passed();
  auto skip = [&](const std::string& name) {
    CheckResult r;
    r.name = name;
    r.status = CheckStatus::Skipped;
    r.detail = "domains do not match the instance";
    rep.checks.push_back(std::move(r));
  };
  if (!domains_ok) {
    skip("splitting-identity");
    skip("containment");
    skip("coherence");
    return rep;
  }
  run("splitting-identity", [&](CheckResult& r) {
    for (const auto& id : ids) {
      const SubgroupMap& s = fam.sigma.at(id);
      for (const auto& g : s.domain().generators())
        if (inst.coeff.beta_tilde.apply(s.apply(g)) != g) return fail(r, "beta_tilde o sigma_I is not the identity", id, g);
    }
  });
  run("containment", [&](CheckResult& r) {
    for (const auto& id : ids) {
      const SubgroupMap& s = fam.sigma.at(id);
      const Subgroup& kn = inst.ideal(id).Kn;
      for (const auto& g : s.domain().generators())
        if (!kn.contains(s.apply(g))) return fail(r, "sigma_I leaves Kn(I)", id, g);
    }
  });
  run("coherence", [&](CheckResult& r) {
    for (const auto& lo : ids)
      for (const auto& hi : ids) {
        if (lo == hi || !inst.lattice.leq(lo, hi)) continue;
        const SubgroupMap& a = fam.sigma.at(lo);
        const SubgroupMap& b = fam.sigma.at(hi);
        for (const auto& g : a.domain().generators()) {
          if (!b.domain().contains(g)) return fail(r, "K1(I)[n] not inside K1(J)[n]", lo + " <= " + hi, g);
          if (a.apply(g) != b.apply(g)) return fail(r, "sigma_J does not restrict to sigma_I", lo + " <= " + hi, g);
        }
      }
  });
  return rep;
}

GroupHom top_map(const KunnethInstance& inst, const SplittingFamily& fam) {
  const auto top = inst.lattice.top();
  if (!top) throw Error(ErrorKind::InvalidLattice, "lattice has no top");
  const Embedding t = torsion_structure(inst.data.K1, inst.n());
  const SubgroupMap& s = fam.at(*top);
  std::vector<Vector> cols;
  for (std::size_t j = 0; j < t.group.rank(); ++j) cols.push_back(s.apply(t.inclusion.apply(t.group.basis_vector(j))));
  return GroupHom(t.group, inst.coeff.Kn, Matrix::from_columns(cols, inst.coeff.Kn.rank()));
}

SplittingFamily family_from_top(const KunnethInstance& inst, const GroupHom& top) {
  const Embedding t = torsion_structure(inst.data.K1, inst.n());
  if (!(top.domain() == t.group) || !(top.codomain() == inst.coeff.Kn))
    throw Error(ErrorKind::ShapeMismatch, "top splitting must map K1[n] into Kn");
  SplittingFamily fam{inst.n(), {}};
  for (const auto& id : inst.lattice.nodes()) {
    const Subgroup dom = inst.k1_torsion(id);
    std::vector<Vector> images;
    for (const auto& g : dom.generators()) images.push_back(top.apply(*t.coordinates_of(g)));
    fam.sigma.emplace(id, SubgroupMap(dom, inst.coeff.Kn, std::move(images)));
  }
  return fam;
}

std::optional<GroupHom> find_global_ideal_splitting(const KunnethInstance& inst) {
  const Embedding t = torsion_structure(inst.data.K1, inst.n());
  const FgGroup& b = inst.coeff.Kn;
  const FgGroup& c = t.group;
  const GroupHom beta = corestrict(inst.coeff.beta_tilde, t);
  const std::size_t kb = b.rank(), kc = c.rank();
  const Vector& mb = b.moduli();
  const Vector& mc = c.moduli();

  Matrix step(kb, kc);
  for (std::size_t i = 0; i < kb; ++i)
    for (std::size_t j = 0; j < kc; ++j) step(i, j) = entry_step(mb[i], mc[j]);
  const std::size_t nx = kb * kc;

  // Equations: rows over the X unknowns plus per-equation membership
  // columns; slack columns for moduli are appended at assembly.
  struct Equation {
    Vector x;
    std::vector<std::pair<std::size_t, Integer>> extra;
    Integer rhs;
    Integer modulus;
  };
  std::vector<Equation> eqs;
  std::size_t nextra = 0;
  for (std::size_t r = 0; r < kc; ++r)
    for (std::size_t j = 0; j < kc; ++j) {
      Equation e{Vector(nx), {}, r == j ? mod(Integer(1), mc[r]) : Integer(0), mc[r]};
      for (std::size_t i = 0; i < kb; ++i) e.x[j * kb + i] = beta.matrix()(r, i) * step(i, j);
      eqs.push_back(std::move(e));
    }
  for (const auto& id : inst.lattice.nodes()) {
    const auto& hs = inst.ideal(id).Kn.generators();
    const Subgroup k1n = inst.k1_torsion(id);
    for (const auto& g : k1n.generators()) {
      const Vector cg = *t.coordinates_of(g);
      const std::size_t base = nextra;
      nextra += hs.size();
      for (std::size_t i = 0; i < kb; ++i) {
        Equation e{Vector(nx), {}, Integer(0), mb[i]};
        for (std::size_t j = 0; j < kc; ++j) e.x[j * kb + i] = step(i, j) * cg[j];
        for (std::size_t s = 0; s < hs.size(); ++s)
          if (hs[s][i] != 0) e.extra.emplace_back(nx + base + s, -hs[s][i]);
        eqs.push_back(std::move(e));
      }
    }
  }
  std::size_t nslack = 0;
  for (const auto& e : eqs)
    if (e.modulus != 0) ++nslack;
  Matrix system(eqs.size(), nx + nextra + nslack);
  Vector rhs(eqs.size());
  for (std::size_t r = 0, sc = 0; r < eqs.size(); ++r) {
    for (std::size_t v = 0; v < nx; ++v) system(r, v) = eqs[r].x[v];
    for (const auto& [col, val] : eqs[r].extra) system(r, col) = val;
    if (eqs[r].modulus != 0) system(r, nx + nextra + sc++) = eqs[r].modulus;
    rhs[r] = eqs[r].rhs;
  }
  auto sol = solve_integer(system, rhs);
  if (!sol) return std::nullopt;

  Vector moduli(nx), x(nx);
  for (std::size_t j = 0; j < kc; ++j)
    for (std::size_t i = 0; i < kb; ++i) {
      moduli[j * kb + i] = mb[i];
      x[j * kb + i] = step(i, j) * sol->particular[j * kb + i];
    }
  std::vector<Vector> lattice;
  for (const auto& kv : sol->kernel) {
    Vector w(nx);
    for (std::size_t j = 0; j < kc; ++j)
      for (std::size_t i = 0; i < kb; ++i) w[j * kb + i] = step(i, j) * kv[j * kb + i];
    if (!is_zero(w)) lattice.push_back(std::move(w));
  }
  x = canonical_representative(std::move(x), lattice, moduli);
  Matrix m(kb, kc);
  for (std::size_t j = 0; j < kc; ++j)
    for (std::size_t i = 0; i < kb; ++i) m(i, j) = x[j * kb + i];
  return GroupHom(c, b, std::move(m));
}

std::vector<GroupHom> enumerate_ideal_splittings(const KunnethInstance& inst, long bound) {
  const FgGroup& kn = inst.coeff.Kn;
  if (!kn.is_finite() || kn.order() > bound)
    throw Error(ErrorKind::SizeBoundExceeded, "|Kn| exceeds the enumeration bound " + std::to_string(bound));
  const Embedding t = torsion_structure(inst.data.K1, inst.n());
  const GroupHom right = corestrict(inst.coeff.beta_tilde, t);
  const ShortExact seq(kernel(right).structure().inclusion, right);
  std::vector<std::pair<Vector, const Subgroup*>> constraints;
  for (const auto& id : inst.lattice.nodes()) {
    const Subgroup k1n = inst.k1_torsion(id);
    for (const auto& g : k1n.generators()) constraints.emplace_back(*t.coordinates_of(g), &inst.ideal(id).Kn);
  }
  std::vector<GroupHom> out;
  for (auto& s : enumerate_splittings(seq, bound)) {
    bool ok = true;
    for (const auto& [c, kn_i] : constraints)
      if (!kn_i->contains(s.apply(c))) {
        ok = false;
        break;
      }
    if (ok) out.push_back(std::move(s));
  }
  return out;
}

// ---------------------------------------------------------------- lifting

ComplexIso lift_isomorphism(const KunnethInstance& a, const KunnethInstance& b, const GroupHom& phi0,
                            const GroupHom& phi1, const std::map<std::string, std::string>& pairing,
                            const SplitOptions& options) {
  if (a.n() != b.n()) throw Error(ErrorKind::BadParameter, "instances use different coefficients");
  if (!(phi0.domain() == a.data.K0) || !(phi0.codomain() == b.data.K0) || !is_isomorphism(phi0))
    throw Error(ErrorKind::InvalidHom, "phi0 is not an isomorphism K0(A) -> K0(B)");
  if (!(phi1.domain() == a.data.K1) || !(phi1.codomain() == b.data.K1) || !is_isomorphism(phi1))
    throw Error(ErrorKind::InvalidHom, "phi1 is not an isomorphism K1(A) -> K1(B)");

  // The pairing must be an order isomorphism of the two lattices.
  std::set<std::string> hit;
  for (const auto& id : a.lattice.nodes()) {
    auto it = pairing.find(id);
    if (it == pairing.end()) throw Error(ErrorKind::PairingNotRespected, "ideal " + id + " is not paired");
    if (!b.lattice.contains(it->second))
      throw Error(ErrorKind::PairingNotRespected, "ideal " + id + " is paired with unknown " + it->second);
    hit.insert(it->second);
  }
  if (pairing.size() != a.lattice.size() || hit.size() != b.lattice.size())
    throw Error(ErrorKind::PairingNotRespected, "pairing is not a bijection of ideals");
  for (const auto& x : a.lattice.nodes())
    for (const auto& y : a.lattice.nodes())
      if (a.lattice.leq(x, y) != b.lattice.leq(pairing.at(x), pairing.at(y)))
        throw Error(ErrorKind::PairingNotRespected, "pairing does not preserve the order at " + x + ", " + y);
  for (const auto& id : a.lattice.nodes()) {
    const IdealNode& na = a.ideal(id);
    const IdealNode& nb = b.ideal(pairing.at(id));
    if (!(image(phi0, na.K0) == nb.K0))
      throw Error(ErrorKind::PairingNotRespected, "phi0 does not carry K0(" + id + ") onto K0(" + nb.id + ")");
    if (!(image(phi1, na.K1) == nb.K1))
      throw Error(ErrorKind::PairingNotRespected, "phi1 does not carry K1(" + id + ") onto K1(" + nb.id + ")");
  }

  SplittingFamily sa, sb;
  try {
    sa = build_ideal_splitting(a, options);
    sb = build_ideal_splitting(b, options);
  } catch (const Error& e) {
    throw Error(ErrorKind::SplittingConstructionFailure, std::string("no ideal splitting: ") + e.what());
  }
  const SubgroupMap& sigma = sa.at(*a.lattice.top());
  const SubgroupMap& tau = sb.at(*b.lattice.top());
  const Quotient qa = a.k0_mod_n();
  const Quotient qb = b.k0_mod_n();
  const GroupHom phi0t = tensor_hom(phi0, qa, qb);

  std::vector<Vector> cols;
  const FgGroup& kna = a.coeff.Kn;
  for (std::size_t j = 0; j < kna.rank(); ++j) {
    const Vector x = kna.basis_vector(j);
    const Vector v = a.coeff.beta_tilde.apply(x);
    auto u = solve_preimage(a.coeff.rho_tilde, kna.add(x, kna.negate(sigma.apply(v))));
    if (!u) throw Error(ErrorKind::SplittingConstructionFailure, "x - sigma(beta x) is not in the image of rho_tilde");
    cols.push_back(b.coeff.Kn.add(b.coeff.rho_tilde.apply(phi0t.apply(*u)), tau.apply(phi1.apply(v))));
  }
  ComplexIso iso{phi0, GroupHom(kna, b.coeff.Kn, Matrix::from_columns(cols, b.coeff.Kn.rank())), phi1, pairing};

  if (!(iso.phi.after(a.coeff.rho_tilde) == b.coeff.rho_tilde.after(phi0t)))
    throw Error(ErrorKind::SplittingConstructionFailure, "lift does not commute with rho_tilde");
  if (!(b.coeff.beta_tilde.after(iso.phi) == phi1.after(a.coeff.beta_tilde)))
    throw Error(ErrorKind::SplittingConstructionFailure, "lift does not commute with beta_tilde");
  if (!is_isomorphism(iso.phi)) throw Error(ErrorKind::SplittingConstructionFailure, "lift is not invertible");
  const GroupHom back = inverse(iso.phi);
  for (const auto& id : a.lattice.nodes()) {
    const Subgroup& src = a.ideal(id).Kn;
    const Subgroup& dst = b.ideal(pairing.at(id)).Kn;
    if (!(image(iso.phi, src) == dst) || !(image(back, dst) == src))
      throw Error(ErrorKind::PairingNotRespected, "lift does not carry Kn(" + id + ") onto Kn(" + pairing.at(id) + ")");
  }
  return iso;
}

}  // namespace ksplit
