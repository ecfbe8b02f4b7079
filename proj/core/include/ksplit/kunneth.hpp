#pragma once

// K-data of one algebra-like object at a fixed coefficient n, filtered by a
// finite lattice of ideals, and the validators for the structural
// hypotheses the splitting construction relies on.

#include "ksplit/fgab.hpp"
#include "ksplit/lattice.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ksplit {

struct KData {
  FgGroup K0;  // expected torsion-free
  FgGroup K1;
};

/// K(A; Z/n) with the maps of the coefficient sequence
/// 0 -> K0 (x) Z/n -> Kn -> K1[n] -> 0.
struct CoeffGroup {
  Integer n;
  FgGroup Kn;
  /// Domain: tensor_zmod(K0, n).group.
  GroupHom rho_tilde;
  /// Codomain: K1 itself; the image is expected inside K1[n].
  GroupHom beta_tilde;
};

struct IdealNode {
  std::string id;
  Subgroup K0;
  Subgroup K1;
  Subgroup Kn;
};

/// Multi-coefficient data for the same K0, K1. Keys of kappa and lambda are
/// (m, n) for maps out of coefficient n into coefficient m.
struct CoherentFamily {
  std::map<Integer, CoeffGroup> levels;
  std::map<std::pair<Integer, Integer>, GroupHom> kappa;   // Kn -> Km
  std::map<std::pair<Integer, Integer>, GroupHom> lambda;  // K1[n] -> K1[m], structure groups
  std::map<Integer, GroupHom> sigmas;                      // K1[n] structure -> Kn

  std::vector<Integer> coefficients() const;
};

struct KunnethInstance {
  KData data;
  CoeffGroup coeff;
  IdealLattice lattice;
  std::map<std::string, IdealNode> ideals;
  std::optional<CoherentFamily> family;

  const Integer& n() const noexcept { return coeff.n; }
  /// Throws UnknownNode.
  const IdealNode& ideal(const std::string& id) const;
  /// K0 (x) Z/n with its reduction map.
  Quotient k0_mod_n() const;
  /// K1(I)[n] = K1(I) ∩ K1[n] as a subgroup of K1.
  Subgroup k1_torsion(const std::string& id) const;
  /// rho_tilde(K0(I) (x) Z/n) as a subgroup of Kn.
  Subgroup rho_image(const std::string& id) const;
};

/// Structure group of G[n], the canonical domain of splittings.
Embedding torsion_structure(const FgGroup& g, const Integer& n);

enum class CheckStatus { Pass, Fail, Skipped };

struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::Pass;
  std::string detail;
  /// Ideal (or coefficient pair) where the first failure occurred.
  std::string where;
  std::optional<Vector> witness;

  bool passed() const noexcept { return status == CheckStatus::Pass; }
};

struct ValidationReport {
  std::vector<CheckResult> checks;

  bool ok() const;
  std::vector<std::string> failed() const;
  const CheckResult* find(const std::string& name) const;
};

/// Check names, in report order.
inline const std::vector<std::string>& instance_check_names() {
  static const std::vector<std::string> names{"top-exactness", "lattice-structure", "bounds",
                                              "monotonicity",  "naturality",        "ideal-exactness",
                                              "purity",        "lattice-laws",      "distributivity"};
  return names;
}

/// Runs every check; never fails fast.
ValidationReport validate_instance(const KunnethInstance& inst);

/// rho_n = rho_tilde o (reduction mod n): K0 -> Kn.
GroupHom mod_reduction(const KunnethInstance& inst);
GroupHom mod_reduction(const KData& data, const CoeffGroup& level);

/// Verifies the three coefficient relations for every kappa present:
///   beta_m kappa_{m,n} = n/(n,m) beta_n             (bockstein-compatibility)
///   kappa_{m,n} rho_n = m/(n,m) rho_m               (reduction-compatibility)
///   kappa_{k,m} kappa_{m,n} = m(k,n)/((k,m)(m,n)) kappa_{k,n}  (kappa-composition)
/// plus level-exactness of each coefficient sequence and, when lambda maps
/// are given, lambda_{m,n} = n/(n,m) on K1[n] (lambda-compatibility).
/// Throws MissingMap when a relation refers to an absent map or level.
ValidationReport check_coherence(const KData& data, const CoherentFamily& fam);

/// The three scalars, exactly; throws if not integral (never happens for
/// positive coefficients).
Integer bockstein_scalar(const Integer& m, const Integer& n);
Integer reduction_scalar(const Integer& m, const Integer& n);
Integer composition_scalar(const Integer& k, const Integer& m, const Integer& n);

struct CoherenceViolation {
  Integer m;
  Integer n;
  Vector element;  // in K1[n] structure coordinates
};

/// sigma_m lambda_{m,n} = kappa_{m,n} sigma_n for every kappa present. An
/// absent lambda_{m,n} defaults to n/(n,m) on K1[n]. Throws MissingSigma.
bool check_family_coherence(const KData& data, const CoherentFamily& fam);
std::optional<CoherenceViolation> family_coherence_violation(const KData& data, const CoherentFamily& fam);

}  // namespace ksplit
