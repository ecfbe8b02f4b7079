#include "ksplit/fixtures.hpp"

#include "ksplit/error.hpp"

#include <algorithm>
#include <functional>

namespace ksplit {

namespace {

Integer entry_step(const Integer& e, const Integer& d) {
  if (e == 0) return d == 0 ? 1 : 0;
  return d == 0 ? Integer(1) : e / gcd(d, e);
}

std::uint64_t draw(Rng& rng, std::uint64_t bound) { return bound == 0 ? 0 : rng() % bound; }

Subgroup coordinate_subgroup(const FgGroup& g, const std::set<std::size_t>& coords) {
  std::vector<Vector> gens;
  for (std::size_t c : coords) {
    if (c >= g.rank()) throw Error(ErrorKind::BadParameter, "coordinate " + std::to_string(c) + " out of range");
    gens.push_back(g.basis_vector(c));
  }
  return Subgroup(g, gens);
}

bool is_prime(long p) {
  if (p < 2) return false;
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::vector<Integer> prime_divisors(Integer x) {
  std::vector<Integer> out;
  for (Integer d = 2; d * d <= x; ++d) {
    if (x % d != 0) continue;
    out.push_back(d);
    while (x % d == 0) x /= d;
  }
  if (x > 1) out.push_back(x);
  return out;
}

}  // namespace

GroupHom rho_from_reduction(const FgGroup& k0, const Integer& n, const FgGroup& kn, const Matrix& composite) {
  const Quotient q = tensor_zmod(k0, n);
  return GroupHom(q.group, kn, composite * q.section);
}

KunnethInstance direct_sum_instance(const FgGroup& k0, const FgGroup& k1, const Integer& n, const LatticeSpec& spec) {
  if (n < 2) throw Error(ErrorKind::BadParameter, "coefficient must be at least 2");
  if (!k0.is_torsion_free()) throw Error(ErrorKind::InvalidGroup, "K0 must be torsion-free");
  IdealLattice lat(spec.nodes, spec.covers);
  auto coords = [](const std::map<std::string, std::set<std::size_t>>& m, const std::string& id) {
    auto it = m.find(id);
    return it == m.end() ? std::set<std::size_t>{} : it->second;
  };
  for (const auto& a : lat.nodes())
    for (const auto& b : lat.nodes()) {
      if (!lat.leq(a, b)) continue;
      for (const auto* m : {&spec.k0_coords, &spec.k1_coords}) {
        const auto lo = coords(*m, a), hi = coords(*m, b);
        if (!std::includes(hi.begin(), hi.end(), lo.begin(), lo.end()))
          throw Error(ErrorKind::NonMonotoneSpec, "node " + a + " has a coordinate that " + b + " lacks");
      }
    }

  const Quotient q = tensor_zmod(k0, n);
  const Embedding t = torsion_structure(k1, n);
  const DirectSum ds = direct_sum({q.group, t.group});
  KunnethInstance inst{KData{k0, k1}, CoeffGroup{n, ds.group, ds.injections[0], t.inclusion.after(ds.projections[1])},
                       lat, {}, std::nullopt};
  const Subgroup k1n = n_torsion(k1, n);
  for (const auto& id : lat.nodes()) {
    const Subgroup s0 = coordinate_subgroup(k0, coords(spec.k0_coords, id));
    const Subgroup s1 = coordinate_subgroup(k1, coords(spec.k1_coords, id));
    std::vector<Vector> gens;
    for (const auto& g : s0.generators()) gens.push_back(ds.injections[0].apply(q.projection.apply(g)));
    const Subgroup s1n = meet(s1, k1n);
    for (const auto& g : s1n.generators()) gens.push_back(ds.injections[1].apply(*t.coordinates_of(g)));
    inst.ideals.emplace(id, IdealNode{id, s0, s1, Subgroup(ds.group, gens)});
  }
  return inst;
}

GroupHom aligned_section(const KunnethInstance& aligned) {
  const Quotient q = aligned.k0_mod_n();
  const Embedding t = torsion_structure(aligned.data.K1, aligned.n());
  return direct_sum({q.group, t.group}).injections[1];
}

KunnethInstance shear_instance(const KunnethInstance& inst, const GroupHom& h) {
  const Embedding t = torsion_structure(inst.data.K1, inst.n());
  const GroupHom to_torsion = corestrict(inst.coeff.beta_tilde, t);
  const GroupHom theta = GroupHom::identity(inst.coeff.Kn) + inst.coeff.rho_tilde.after(h).after(to_torsion);
  KunnethInstance out = inst;
  for (auto& [id, node] : out.ideals) node.Kn = image(theta, node.Kn);
  return out;
}

KunnethInstance transport_instance(const KunnethInstance& inst, const GroupHom& phi0, const GroupHom& phi1,
                                   const GroupHom& psi) {
  const Quotient q = inst.k0_mod_n();
  const GroupHom phi0t = tensor_hom(phi0, q, q);
  KunnethInstance out = inst;
  out.coeff.rho_tilde = psi.after(inst.coeff.rho_tilde).after(inverse(phi0t));
  out.coeff.beta_tilde = phi1.after(inst.coeff.beta_tilde).after(inverse(psi));
  for (auto& [id, node] : out.ideals) {
    node.K0 = image(phi0, node.K0);
    node.K1 = image(phi1, node.K1);
    node.Kn = image(psi, node.Kn);
  }
  out.family.reset();
  return out;
}

GroupHom random_hom(const FgGroup& domain, const FgGroup& codomain, Rng& rng) {
  Matrix m(codomain.rank(), domain.rank());
  for (std::size_t i = 0; i < codomain.rank(); ++i)
    for (std::size_t j = 0; j < domain.rank(); ++j) {
      const Integer& e = codomain.moduli()[i];
      const Integer step = entry_step(e, domain.moduli()[j]);
      if (step == 0) continue;
      if (e == 0) {
        m(i, j) = Integer(static_cast<long>(draw(rng, 5))) - 2;
      } else {
        m(i, j) = step * Integer(static_cast<unsigned long>(draw(rng, static_cast<std::uint64_t>(e / step))));
      }
    }
  return GroupHom(domain, codomain, std::move(m));
}

GroupHom random_automorphism(const FgGroup& g, Rng& rng, int steps) {
  const std::size_t k = g.rank();
  GroupHom acc = GroupHom::identity(g);
  if (k == 0) return acc;
  const Vector& d = g.moduli();
  for (int s = 0; s < steps; ++s) {
    Matrix e = Matrix::identity(k);
    const std::size_t i = draw(rng, k), j = draw(rng, k);
    switch (draw(rng, 3)) {
      case 0: {  // e_j -> e_j + u e_i
        if (i == j) break;
        const Integer step = entry_step(d[i], d[j]);
        if (step == 0) break;
        e(i, j) = step * Integer(static_cast<long>(1 + draw(rng, 3)));
        break;
      }
      case 1: {  // unit scaling
        if (d[i] == 0) {
          e(i, i) = -1;
          break;
        }
        for (int tries = 0; tries < 8; ++tries) {
          const Integer c = Integer(static_cast<unsigned long>(draw(rng, static_cast<std::uint64_t>(d[i]))));
          if (gcd(c, d[i]) == 1) {
            e(i, i) = c;
            break;
          }
        }
        break;
      }
      default: {  // swap summands of equal order
        if (i == j || d[i] != d[j]) break;
        e(i, i) = 0;
        e(j, j) = 0;
        e(i, j) = 1;
        e(j, i) = 1;
        break;
      }
    }
    acc = GroupHom(g, g, e).after(acc);
  }
  return acc;
}

LatticeSpec random_lattice_spec(Rng& rng, std::size_t k0_rank, std::size_t k1_rank, const RandomBounds& bounds) {
  for (;;) {
    // Mostly two or more points; a single point gives the two-ideal lattice.
    const std::size_t cap = std::max<std::size_t>(bounds.max_poset, 1);
    const std::size_t k = cap == 1 || draw(rng, 8) == 0 ? 1 : 2 + draw(rng, cap - 1);
    std::vector<std::vector<bool>> below(k, std::vector<bool>(k, false));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i + 1; j < k; ++j) below[i][j] = draw(rng, 2) == 0;
    for (std::size_t m = 0; m < k; ++m)
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
          if (below[i][m] && below[m][j]) below[i][j] = true;
    std::vector<unsigned> sets;
    for (unsigned s = 0; s < (1u << k); ++s) {
      bool down = true;
      for (std::size_t j = 0; j < k && down; ++j)
        for (std::size_t i = 0; i < k; ++i)
          if ((s >> j & 1u) && below[i][j] && !(s >> i & 1u)) down = false;
      if (down) sets.push_back(s);
    }
    if (sets.size() > bounds.max_ideals) continue;
    const unsigned full = (1u << k) - 1;
    auto name = [&](unsigned s) -> std::string {
      if (s == 0) return "0";
      if (s == full) return "A";
      std::string out = "I_";
      for (std::size_t i = 0; i < k; ++i)
        if (s >> i & 1u) out += static_cast<char>('a' + i);
      return out;
    };
    LatticeSpec spec;
    for (unsigned s : sets) spec.nodes.push_back(name(s));
    for (unsigned s : sets)
      for (unsigned t : sets)
        if ((s & t) == s && __builtin_popcount(t) == __builtin_popcount(s) + 1) spec.covers.push_back({name(s), name(t)});
    std::vector<std::size_t> home0(k0_rank), home1(k1_rank);
    for (auto& h : home0) h = draw(rng, k);
    for (auto& h : home1) h = draw(rng, k);
    for (unsigned s : sets) {
      auto& c0 = spec.k0_coords[name(s)];
      auto& c1 = spec.k1_coords[name(s)];
      for (std::size_t c = 0; c < k0_rank; ++c)
        if (s >> home0[c] & 1u) c0.insert(c);
      for (std::size_t c = 0; c < k1_rank; ++c)
        if (s >> home1[c] & 1u) c1.insert(c);
    }
    return spec;
  }
}

KunnethInstance random_instance(std::uint64_t seed, const RandomBounds& bounds) {
  if (bounds.coefficients.empty()) throw Error(ErrorKind::BadParameter, "no coefficients to choose from");
  Rng rng(seed);
  for (;;) {
    const Integer n = bounds.coefficients[draw(rng, bounds.coefficients.size())];
    const std::size_t r = draw(rng, bounds.max_k0_rank + 1);
    // Torsion of K1: divisors of n, multiples of n and an occasional
    // coprime factor, grown along a divisibility chain.
    std::vector<Integer> seeds;
    for (Integer d = 2; d <= n; ++d)
      if (n % d == 0) seeds.insert(seeds.end(), 2, d);
    seeds.push_back(2 * n);
    if (draw(rng, 4) == 0) seeds.push_back(n % 5 == 0 ? Integer(7) : Integer(5));
    std::vector<Integer> factors;
    const std::size_t t = draw(rng, 8) == 0 ? 0 : 1 + draw(rng, std::max<std::size_t>(bounds.max_k1_torsion_rank, 1));
    for (std::size_t i = 0; i < t; ++i) {
      if (factors.empty()) {
        factors.push_back(seeds[draw(rng, seeds.size())]);
      } else {
        static const int grow[] = {1, 1, 2, 3};
        factors.push_back(factors.back() * grow[draw(rng, 4)]);
      }
    }
    const std::size_t f = draw(rng, bounds.max_k1_free_rank + 1);
    Integer kn_order = 1;
    for (std::size_t i = 0; i < r; ++i) kn_order *= n;
    for (const auto& d : factors) kn_order *= gcd(d, n);
    if (kn_order > bounds.max_kn_order) continue;

    const FgGroup k0 = FgGroup::free(r);
    const FgGroup k1(factors, f);
    const LatticeSpec spec = random_lattice_spec(rng, r, k1.rank(), bounds);
    KunnethInstance inst = direct_sum_instance(k0, k1, n, spec);
    if (bounds.twist) {
      const Embedding tor = torsion_structure(k1, n);
      inst = shear_instance(inst, random_hom(tor.group, inst.k0_mod_n().group, rng));
      const GroupHom phi0 = random_automorphism(k0, rng);
      const GroupHom phi1 = random_automorphism(k1, rng);
      const GroupHom psi = random_automorphism(inst.coeff.Kn, rng);
      inst = transport_instance(inst, phi0, phi1, psi);
    }
    const ValidationReport rep = validate_instance(inst);
    if (!rep.ok())
      throw Error(ErrorKind::InvalidInstance,
                  "generator produced an invalid instance for seed " + std::to_string(seed) + ": " + rep.failed().front());
    return inst;
  }
}

std::size_t dp_coordinate(long m, long i) {
  if (i == m) return 0;
  if (i == -m) return 1;
  return static_cast<std::size_t>(2 + (i + m - 1));
}

KunnethInstance dp_truncation(long p, long m, long k_max) {
  if (!is_prime(p)) throw Error(ErrorKind::BadParameter, "p must be prime");
  if (m < 1) throw Error(ErrorKind::BadParameter, "window radius must be positive");
  if (k_max < 0 || k_max > m) throw Error(ErrorKind::BadParameter, "k_max must lie in [0, m]");
  const std::size_t width = static_cast<std::size_t>(2 * m + 1);
  const Integer n = p;
  const FgGroup k0 = FgGroup::free(static_cast<std::size_t>(2 * m));
  const FgGroup k1 = FgGroup::cyclic(n);
  const FgGroup kn = FgGroup::elementary(n, width);

  // K0 basis: b, then c_{-m+1} .. c_{m-1}; these are Kn coordinates 1 .. 2m.
  Matrix composite(width, k0.rank());
  for (std::size_t j = 0; j < k0.rank(); ++j) composite(j + 1, j) = 1;
  Matrix beta(1, width);
  beta(0, 0) = 1;

  std::vector<std::string> nodes{"0", "A"};
  std::vector<Cover> covers;
  auto name = [](long k) { return "I_" + std::to_string(k); };
  for (long k = 0; k <= k_max; ++k) nodes.push_back(name(k));
  covers.push_back({"0", name(k_max)});
  for (long k = k_max; k > 0; --k) covers.push_back({name(k), name(k - 1)});
  covers.push_back({name(0), "A"});

  KunnethInstance inst{KData{k0, k1}, CoeffGroup{n, kn, rho_from_reduction(k0, n, kn, composite), GroupHom(kn, k1, beta)},
                       IdealLattice(nodes, covers), {}, std::nullopt};
  inst.ideals.emplace("0", IdealNode{"0", Subgroup::trivial(k0), Subgroup::trivial(k1), Subgroup::trivial(kn)});
  inst.ideals.emplace("A", IdealNode{"A", Subgroup::whole(k0), Subgroup::whole(k1), Subgroup::whole(kn)});
  for (long k = 0; k <= k_max; ++k) {
    std::vector<Vector> kn_gens, k0_gens;
    for (long i = -m; i <= m; ++i) {
      if (std::labs(i) <= k) continue;
      const std::size_t c = dp_coordinate(m, i);
      kn_gens.push_back(kn.basis_vector(c));
      if (c != 0) k0_gens.push_back(k0.basis_vector(c - 1));
    }
    inst.ideals.emplace(name(k), IdealNode{name(k), Subgroup(k0, k0_gens), Subgroup::whole(k1), Subgroup(kn, kn_gens)});
  }
  return inst;
}

// ---------------------------------------------------------------- defects

std::string to_string(DefectKind kind) {
  switch (kind) {
    case DefectKind::None: return "none";
    case DefectKind::BreakExactness: return "break-exactness";
    case DefectKind::BreakPurity: return "break-purity";
    case DefectKind::BreakLatticeLaw: return "break-lattice-law";
    case DefectKind::BreakNaturality: return "break-naturality";
    case DefectKind::BreakDistributivity: return "break-distributivity";
  }
  return "none";
}

DefectKind defect_from_string(const std::string& name) {
  for (auto k : {DefectKind::None, DefectKind::BreakExactness, DefectKind::BreakPurity, DefectKind::BreakLatticeLaw,
                 DefectKind::BreakNaturality, DefectKind::BreakDistributivity})
    if (to_string(k) == name) return k;
  throw Error(ErrorKind::BadParameter, "unknown defect kind '" + name + "'");
}

std::string target_check(DefectKind kind) {
  switch (kind) {
    case DefectKind::None: return "";
    case DefectKind::BreakExactness: return "ideal-exactness";
    case DefectKind::BreakPurity: return "purity";
    case DefectKind::BreakLatticeLaw: return "lattice-laws";
    case DefectKind::BreakNaturality: return "naturality";
    case DefectKind::BreakDistributivity: return "distributivity";
  }
  return "";
}

namespace {

using Candidate = std::pair<KunnethInstance, std::string>;

std::vector<std::string> inner_ideals(const KunnethInstance& inst) {
  std::vector<std::string> out;
  for (const auto& id : inst.lattice.nodes())
    if (id != inst.lattice.bottom() && id != inst.lattice.top()) out.push_back(id);
  return out;
}

Candidate with_ideal(const KunnethInstance& inst, const std::string& id, Subgroup IdealNode::*field, Subgroup s) {
  KunnethInstance out = inst;
  out.ideals.at(id).*field = std::move(s);
  return {std::move(out), id};
}

void exactness_candidates(const KunnethInstance& inst, const std::function<bool(Candidate)>& take) {
  const GroupHom rho_n = mod_reduction(inst);
  for (const auto& id : inner_ideals(inst)) {
    const IdealNode& node = inst.ideal(id);
    const Subgroup rho = inst.rho_image(id);
    const auto& gens = node.Kn.generators();
    for (std::size_t i = 0; i < gens.size(); ++i) {
      std::vector<Vector> rest = gens;
      rest.erase(rest.begin() + static_cast<long>(i));
      const Subgroup smaller = join(rho, Subgroup(node.Kn.ambient(), rest));
      if (!(smaller == node.Kn) && take(with_ideal(inst, id, &IdealNode::Kn, smaller))) return;
    }
    const Integer top_order = quotient(node.Kn.ambient(), rho).group.is_finite()
                                  ? quotient(node.Kn.ambient(), rho).group.torsion_exponent()
                                  : Integer(1);
    for (const auto& q : prime_divisors(top_order)) {
      const Subgroup smaller = join(rho, multiple(node.Kn, q));
      if (!(smaller == node.Kn) && take(with_ideal(inst, id, &IdealNode::Kn, smaller))) return;
    }
    for (std::size_t j = 0; j < inst.data.K0.rank(); ++j) {
      const Vector y = rho_n.apply(inst.data.K0.basis_vector(j));
      if (node.Kn.contains(y)) continue;
      if (take(with_ideal(inst, id, &IdealNode::Kn, join(node.Kn, Subgroup(node.Kn.ambient(), {y}))))) return;
    }
  }
}

void purity_candidates(const KunnethInstance& inst, const std::function<bool(Candidate)>& take) {
  if (inst.data.K1.is_torsion_free())
    throw Error(ErrorKind::DefectNotApplicable, "K1 is torsion-free: no torsion to break purity with");
  for (const auto& id : inner_ideals(inst)) {
    const IdealNode& node = inst.ideal(id);
    for (const auto& q : prime_divisors(inst.data.K1.torsion_exponent())) {
      const Subgroup smaller = join(inst.k1_torsion(id), multiple(node.K1, q));
      if (!(smaller == node.K1) && take(with_ideal(inst, id, &IdealNode::K1, smaller))) return;
    }
  }
}

void naturality_candidates(const KunnethInstance& inst, const std::function<bool(Candidate)>& take) {
  const GroupHom rho_n = mod_reduction(inst);
  for (const auto& id : inner_ideals(inst)) {
    const IdealNode& node = inst.ideal(id);
    for (std::size_t j = 0; j < inst.data.K0.rank(); ++j) {
      const Vector e = inst.data.K0.basis_vector(j);
      if (node.Kn.contains(rho_n.apply(e))) continue;
      if (take(with_ideal(inst, id, &IdealNode::K0, join(node.K0, Subgroup(inst.data.K0, {e}))))) return;
    }
    for (const auto& lower : inst.lattice.strictly_below(id)) {
      const Subgroup& k1 = inst.ideal(lower).K1;
      if (!(k1 == node.K1) && take(with_ideal(inst, id, &IdealNode::K1, k1))) return;
    }
    for (std::size_t j = 0; j < inst.coeff.Kn.rank(); ++j) {
      const Vector y = inst.coeff.Kn.basis_vector(j);
      if (node.K1.contains(inst.coeff.beta_tilde.apply(y))) continue;
      if (take(with_ideal(inst, id, &IdealNode::Kn, join(node.Kn, Subgroup(inst.coeff.Kn, {y}))))) return;
    }
  }
}

void lattice_law_candidates(const KunnethInstance& inst, const std::function<bool(Candidate)>& take) {
  const auto& ids = inst.lattice.nodes();
  for (std::size_t a = 0; a < ids.size(); ++a)
    for (std::size_t b = a + 1; b < ids.size(); ++b) {
      if (inst.lattice.leq(ids[a], ids[b]) || inst.lattice.leq(ids[b], ids[a])) continue;
      const std::string x = inst.lattice.meet(ids[a], ids[b]);
      if (x == inst.lattice.bottom()) continue;
      const IdealNode& node = inst.ideal(x);
      const Embedding e = node.K1.structure();
      for (std::size_t i = 0; i < e.group.torsion_rank(); ++i) {
        std::vector<Vector> others;
        for (std::size_t j = 0; j < e.group.rank(); ++j)
          if (j != i) others.push_back(e.group.basis_vector(j));
        const Subgroup smaller = image(e.inclusion, Subgroup(e.group, others));
        if (meet(smaller, n_torsion(inst.data.K1, inst.n())) == inst.k1_torsion(x)) continue;
        KunnethInstance out = inst;
        out.ideals.at(x).K1 = smaller;
        out.ideals.at(x).Kn = meet(node.Kn, preimage(inst.coeff.beta_tilde, smaller));
        if (take({std::move(out), ids[a] + ", " + ids[b]})) return;
      }
    }
}

/// M3 over two copies of the top data: the copies and the diagonal.
KunnethInstance doubled(const KunnethInstance& inst) {
  const DirectSum d0 = direct_sum({inst.data.K0, inst.data.K0});
  const DirectSum d1 = direct_sum({inst.data.K1, inst.data.K1});
  const DirectSum dn = direct_sum({inst.coeff.Kn, inst.coeff.Kn});
  const GroupHom rho_n = mod_reduction(inst);
  const GroupHom composite = dn.injections[0].after(rho_n).after(d0.projections[0]) +
                             dn.injections[1].after(rho_n).after(d0.projections[1]);
  const GroupHom& beta = inst.coeff.beta_tilde;
  const GroupHom beta2 = d1.injections[0].after(beta).after(dn.projections[0]) +
                         d1.injections[1].after(beta).after(dn.projections[1]);
  KunnethInstance out{KData{d0.group, d1.group},
                      CoeffGroup{inst.n(), dn.group,
                                 rho_from_reduction(d0.group, inst.n(), dn.group, composite.matrix()), beta2},
                      IdealLattice({"0", "A", "I_x", "I_y", "I_z"}, {{"0", "I_x"},
                                                                     {"0", "I_y"},
                                                                     {"0", "I_z"},
                                                                     {"I_x", "A"},
                                                                     {"I_y", "A"},
                                                                     {"I_z", "A"}}),
                      {},
                      std::nullopt};
  auto node = [&](const std::string& id, auto&& pick) {
    out.ideals.emplace(id, IdealNode{id, pick(d0, inst.data.K0), pick(d1, inst.data.K1), pick(dn, inst.coeff.Kn)});
  };
  node("0", [](const DirectSum& d, const FgGroup&) { return Subgroup::trivial(d.group); });
  node("A", [](const DirectSum& d, const FgGroup&) { return Subgroup::whole(d.group); });
  node("I_x", [](const DirectSum& d, const FgGroup&) { return image(d.injections[0]); });
  node("I_y", [](const DirectSum& d, const FgGroup&) { return image(d.injections[1]); });
  node("I_z", [](const DirectSum& d, const FgGroup&) { return image(d.injections[0] + d.injections[1]); });
  return out;
}

}  // namespace

PlantedDefect plant_defect(const KunnethInstance& inst, DefectKind kind) {
  if (kind == DefectKind::None) return {inst, ""};
  if (!validate_instance(inst).ok())
    throw Error(ErrorKind::DefectNotApplicable, "defects are planted into valid instances only");
  const std::string target = target_check(kind);
  std::optional<PlantedDefect> found;
  auto take = [&](Candidate c) {
    const auto failed = validate_instance(c.first).failed();
    if (failed.size() != 1 || failed.front() != target) return false;
    found = PlantedDefect{std::move(c.first), std::move(c.second)};
    return true;
  };
  switch (kind) {
    case DefectKind::BreakExactness: exactness_candidates(inst, take); break;
    case DefectKind::BreakPurity: purity_candidates(inst, take); break;
    case DefectKind::BreakNaturality: naturality_candidates(inst, take); break;
    case DefectKind::BreakLatticeLaw: lattice_law_candidates(inst, take); break;
    case DefectKind::BreakDistributivity: take({doubled(inst), "I_x, I_y, I_z"}); break;
    case DefectKind::None: break;
  }
  if (!found)
    throw Error(ErrorKind::DefectNotApplicable, "no mutation of this instance fails only the " + target + " check");
  return std::move(*found);
}

CoherentFamily aligned_coherent_family(const KData& data, const std::vector<Integer>& coefficients) {
  struct Level {
    Quotient q;
    Embedding t;
    DirectSum ds;
  };
  std::map<Integer, Level> parts;
  CoherentFamily fam;
  for (const auto& n : coefficients) {
    if (n < 2) throw Error(ErrorKind::BadParameter, "coefficients must be at least 2");
    Level l{tensor_zmod(data.K0, n), torsion_structure(data.K1, n), {}};
    l.ds = direct_sum({l.q.group, l.t.group});
    fam.levels.emplace(n, CoeffGroup{n, l.ds.group, l.ds.injections[0], l.t.inclusion.after(l.ds.projections[1])});
    fam.sigmas.emplace(n, l.ds.injections[1]);
    parts.emplace(n, std::move(l));
  }
  for (const auto& [m, lm] : parts)
    for (const auto& [n, ln] : parts) {
      const GroupHom t0(ln.q.group, lm.q.group, reduction_scalar(m, n) * (lm.q.projection.matrix() * ln.q.section));
      const GroupHom t1 = corestrict(ln.t.inclusion.scaled(bockstein_scalar(m, n)), lm.t);
      fam.kappa.emplace(std::make_pair(m, n), lm.ds.injections[0].after(t0).after(ln.ds.projections[0]) +
                                                  lm.ds.injections[1].after(t1).after(ln.ds.projections[1]));
      fam.lambda.emplace(std::make_pair(m, n), t1);
    }
  return fam;
}

}  // namespace ksplit
