#pragma once

// Splittings of the coefficient sequence that respect a lattice of ideals:
// the gamma complex of a comaximal family, extension and gluing steps, the
// induction over the lattice, verification, and lifting of isomorphisms.

#include "ksplit/kunneth.hpp"
#include "ksplit/sequences.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ksplit {

/// sigma_I: K1(I)[n] -> Kn per ideal, with K1(I)[n] a subgroup of K1.
struct SplittingFamily {
  Integer n;
  std::map<std::string, SubgroupMap> sigma;

  /// Throws UnknownNode.
  const SubgroupMap& at(const std::string& id) const;
};

/// (+)_{i<j} G_ij -> (+)_i G_i -> H for subgroups G_i of a common ambient H.
struct GammaComplex {
  std::vector<Embedding> parts;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<Embedding> overlaps;
  DirectSum parts_sum;
  DirectSum overlaps_sum;
  /// parts_sum.group -> ambient.
  GroupHom gamma0;
  /// overlaps_sum.group -> parts_sum.group; g at slot i and -g at slot j.
  GroupHom gamma1;
};

/// Overlaps default to the pairwise intersections; when given, one per pair
/// (i, j) with i < j in lexicographic pair order, each inside both parts.
/// Throws AmbientMismatch.
GammaComplex gamma_complex(const std::vector<Subgroup>& parts, const std::vector<Subgroup>& overlaps = {});
GroupHom gamma0(const std::vector<Subgroup>& parts);
GroupHom gamma1(const std::vector<Subgroup>& parts);

struct GammaCheck {
  bool exact = true;
  /// "gamma0-not-surjective" or "kernel-not-image" on failure.
  std::string failure;
  /// In K1 coordinates for the first failure kind, in parts_sum
  /// coordinates for the second.
  std::optional<Vector> witness;
};

/// Exactness of the gamma complex built from K1(I_i)[n] with the overlaps
/// K1(I_i ^ I_j)[n] assigned by the lattice. Throws NotComaximal.
GammaCheck check_gamma_exact(const KunnethInstance& inst, const std::string& ideal,
                             const std::vector<std::string>& parts);

enum class Strategy { Solver, Greedy, Both };

std::string to_string(Strategy s);
Strategy strategy_from_string(const std::string& name);

struct SplitOptions {
  Strategy strategy = Strategy::Solver;
  /// On a failed extension, retry with one solve over the whole lattice.
  bool global_fallback = false;
  /// Skip the validation precondition.
  bool force = false;
};

struct SplitDiagnostics {
  /// Ideals in the order the induction processed them.
  std::vector<std::string> order;
  /// Per processed ideal: "base", "extend from J" or "glue I1, I2, ...".
  std::vector<std::string> steps;
  /// Ideals where solver and greedy reached different feasibility verdicts.
  std::vector<std::string> strategy_disagreements;
  bool used_global_fallback = false;
};

/// The ideal's own sequence 0 -> ker -> Kn(I) -> K1(I)[n] -> 0 on structure
/// groups. Throws InvalidInstance when the restricted map is not onto.
struct IdealSequence {
  Embedding middle;    // Kn(I)
  Embedding quotient;  // K1(I)[n]
  ShortExact sequence;
};
IdealSequence ideal_sequence(const KunnethInstance& inst, const std::string& ideal);

/// Splitting on `target` agreeing with tau, a splitting for `source` <= target.
/// Throws InvalidTau, NotBelow or NoExtensionError.
SubgroupMap extend_splitting(const KunnethInstance& inst, const std::string& target, const std::string& source,
                             const SubgroupMap& tau, Strategy strategy = Strategy::Solver,
                             std::vector<std::string>* disagreements = nullptr);
/// Extension to the top ideal.
SubgroupMap extend_splitting(const KunnethInstance& inst, const std::string& source, const SubgroupMap& tau,
                             Strategy strategy = Strategy::Solver);

/// sigma_I assembled from splittings on a comaximal family below I. With
/// `alternate_preimage` every gamma0-preimage is shifted by the kernel
/// generators before summing; the result must not change.
/// Throws NotComaximal, InvalidTau, GammaNotSurjective, WellDefinednessViolation.
SubgroupMap glue_comaximal(const KunnethInstance& inst, const std::string& ideal, const std::vector<std::string>& parts,
                           const std::vector<SubgroupMap>& sigmas, bool alternate_preimage = false);

/// The induction over next_ideal. Throws InvalidInstance (unless forced) and
/// NoExtensionError naming the blocking ideal.
SplittingFamily build_ideal_splitting(const KunnethInstance& inst, const SplitOptions& options = {},
                                      SplitDiagnostics* diagnostics = nullptr);

/// Checks "domains", "splitting-identity", "containment" and "coherence".
ValidationReport verify_ideal_splitting(const KunnethInstance& inst, const SplittingFamily& fam);

/// sigma_top on the structure group of K1[n].
GroupHom top_map(const KunnethInstance& inst, const SplittingFamily& fam);
/// Restrictions of one top splitting (on the K1[n] structure group).
SplittingFamily family_from_top(const KunnethInstance& inst, const GroupHom& top);

/// One linear solve for a top splitting with sigma(K1(I)[n]) <= Kn(I) for
/// every ideal; lexicographically smallest in column-major order.
std::optional<GroupHom> find_global_ideal_splitting(const KunnethInstance& inst);

/// Every top splitting respecting all ideals, by enumeration. Throws
/// SizeBoundExceeded when |Kn| exceeds `bound`.
std::vector<GroupHom> enumerate_ideal_splittings(const KunnethInstance& inst, long bound);

struct ComplexIso {
  GroupHom phi0;
  GroupHom phi;
  GroupHom phi1;
  std::map<std::string, std::string> pairing;
};

/// phi(rho(x) + sigma(y)) = rho_B(phi0 x) + tau(phi1 y) with sigma, tau the
/// built ideal splittings. Throws InvalidHom (phi0/phi1 not bijective),
/// PairingNotRespected, SplittingConstructionFailure.
ComplexIso lift_isomorphism(const KunnethInstance& a, const KunnethInstance& b, const GroupHom& phi0,
                            const GroupHom& phi1, const std::map<std::string, std::string>& pairing,
                            const SplitOptions& options = {});

}  // namespace ksplit
