#pragma once

// Instance constructors: aligned direct sums, twisted and transported
// copies, seeded random instances, the D_p truncation family and
// defect-planting mutators.

#include "ksplit/kunneth.hpp"

#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace ksplit {

using Rng = std::mt19937_64;

/// Ideal lattice plus, per node, the K0 and K1 coordinates spanning its
/// subgroups (canonical coordinates of the ambient groups).
struct LatticeSpec {
  std::vector<std::string> nodes;
  std::vector<Cover> covers;
  std::map<std::string, std::set<std::size_t>> k0_coords;
  std::map<std::string, std::set<std::size_t>> k1_coords;
};

/// rho_tilde for a prescribed composite K0 -> Kn (which must kill nK0).
GroupHom rho_from_reduction(const FgGroup& k0, const Integer& n, const FgGroup& kn, const Matrix& composite);

/// Kn = (K0 (x) Z/n) + K1[n] with coordinate ideals. Throws NonMonotoneSpec
/// when a smaller node is assigned a coordinate its upper node lacks.
KunnethInstance direct_sum_instance(const FgGroup& k0, const FgGroup& k1, const Integer& n, const LatticeSpec& spec);

/// The splitting K1[n] -> Kn onto the second summand of an aligned instance.
GroupHom aligned_section(const KunnethInstance& aligned);

/// Conjugates the ideal Kn-subgroups by theta = id + rho_tilde h beta_tilde,
/// where h: K1[n] (structure group) -> K0 (x) Z/n. rho_tilde and beta_tilde
/// are unchanged.
KunnethInstance shear_instance(const KunnethInstance& inst, const GroupHom& h);

/// Moves every datum along isomorphisms phi0 of K0, phi1 of K1 and psi of Kn.
/// Ideal ids and the lattice are kept. The coherent family is dropped.
KunnethInstance transport_instance(const KunnethInstance& inst, const GroupHom& phi0, const GroupHom& phi1,
                                   const GroupHom& psi);

GroupHom random_hom(const FgGroup& domain, const FgGroup& codomain, Rng& rng);
/// Product of `steps` random elementary automorphisms (shears, unit scalings,
/// swaps of equal summands).
GroupHom random_automorphism(const FgGroup& g, Rng& rng, int steps = 6);

struct RandomBounds {
  std::size_t max_ideals = 6;
  std::size_t max_poset = 3;
  std::size_t max_k0_rank = 2;
  std::size_t max_k1_torsion_rank = 3;
  std::size_t max_k1_free_rank = 1;
  Integer max_kn_order = 4096;
  std::vector<Integer> coefficients{2, 3, 4, 6, 8, 9, 12};
  bool twist = true;
};

/// Down-set lattice of a random poset with coordinates attached to poset
/// points, so joins and meets are realized by unions and intersections.
LatticeSpec random_lattice_spec(Rng& rng, std::size_t k0_rank, std::size_t k1_rank, const RandomBounds& bounds);

/// Aligned instance, optionally sheared and relabelled by a random
/// automorphism of Kn. Deterministic in `seed`; validity is re-checked.
KunnethInstance random_instance(std::uint64_t seed, const RandomBounds& bounds = {});

/// Coordinates of Kn = (Z/p)^(2m+1): a, b, then c_{-m+1} .. c_{m-1}; the
/// ends c_{-m} = b and c_m = a are not stored separately.
std::size_t dp_coordinate(long m, long i);

/// Truncated D_p: K0 = Z^(2m), K1 = Z/p, n = p, chain 0 < I_kmax < ... < I_0 < A
/// with Kn(I_k) = {c_i = 0 for |i| <= k}. Throws BadParameter when p is not
/// prime or k_max is outside [0, m].
KunnethInstance dp_truncation(long p, long m, long k_max);

enum class DefectKind { None, BreakExactness, BreakPurity, BreakLatticeLaw, BreakNaturality, BreakDistributivity };

std::string to_string(DefectKind kind);
/// Throws BadParameter for unknown names.
DefectKind defect_from_string(const std::string& name);
/// Name of the validation check a defect is meant to trip.
std::string target_check(DefectKind kind);

struct PlantedDefect {
  KunnethInstance instance;
  /// Ideal (or pair of ideals) where the mutation was made.
  std::string where;
};

/// Mutates a valid instance so that validate_instance fails exactly the
/// target check. Candidates are tried in a fixed order; throws
/// DefectNotApplicable when none qualifies.
PlantedDefect plant_defect(const KunnethInstance& inst, DefectKind kind);

/// Natural multi-coefficient data over (Z/n)^r + K1[n] for every listed n,
/// kappa for all ordered pairs, natural lambda and the summand sections.
CoherentFamily aligned_coherent_family(const KData& data, const std::vector<Integer>& coefficients);

}  // namespace ksplit
