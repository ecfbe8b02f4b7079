#pragma once

// Finitely generated abelian groups in invariant-factor form, homomorphisms
// as integer matrices, and subgroups with canonical Hermite generators.
//
// Coordinates of a group element: one per invariant factor (reduced into
// [0, d_i)), followed by one unbounded integer per free summand.

#include "ksplit/integer.hpp"
#include "ksplit/matrix.hpp"
#include "ksplit/normal_form.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ksplit {

class FgGroup {
 public:
  /// The trivial group.
  FgGroup() = default;
  /// Throws InvalidGroup unless d_1 | d_2 | ... and every d_i >= 2.
  FgGroup(std::vector<Integer> invariant_factors, std::size_t free_rank);

  static FgGroup free(std::size_t rank) { return FgGroup({}, rank); }
  static FgGroup cyclic(const Integer& order);
  /// (Z/n)^copies in canonical form; trivial when n == 1.
  static FgGroup elementary(const Integer& n, std::size_t copies);

  const std::vector<Integer>& invariant_factors() const noexcept { return factors_; }
  std::size_t free_rank() const noexcept { return free_rank_; }
  std::size_t torsion_rank() const noexcept { return factors_.size(); }
  std::size_t rank() const noexcept { return moduli_.size(); }
  /// Per-coordinate modulus; 0 marks a free coordinate.
  const Vector& moduli() const noexcept { return moduli_; }

  bool is_trivial() const noexcept { return moduli_.empty(); }
  bool is_finite() const noexcept { return free_rank_ == 0; }
  bool is_torsion_free() const noexcept { return factors_.empty(); }
  /// Throws InvalidGroup for infinite groups.
  Integer order() const;
  /// Exponent of the torsion subgroup (1 when torsion-free).
  Integer torsion_exponent() const;

  Vector zero() const { return Vector(rank()); }
  Vector basis_vector(std::size_t i) const;
  Vector reduce(Vector v) const;
  /// Shape matches and every torsion coordinate is reduced.
  bool is_element(const Vector& v) const;
  Vector add(const Vector& a, const Vector& b) const;
  Vector negate(const Vector& a) const;
  Vector scale(const Integer& k, const Vector& a) const;
  /// Order of an element; 0 for elements of infinite order.
  Integer element_order(const Vector& v) const;

  /// Every element of a finite group, in mixed-radix order with the first
  /// coordinate varying slowest. Throws for infinite groups.
  std::vector<Vector> elements() const;

  std::string to_string() const;

  friend bool operator==(const FgGroup&, const FgGroup&) = default;

 private:
  std::vector<Integer> factors_;
  std::size_t free_rank_ = 0;
  Vector moduli_;
};

/// Homomorphism given by its matrix on the canonical generators:
/// column j is the image of generator j, in codomain coordinates.
class GroupHom {
 public:
  GroupHom() = default;
  /// Reduces the matrix and throws InvalidHom if some generator of order d
  /// is not sent to an element killed by d.
  GroupHom(FgGroup domain, FgGroup codomain, Matrix matrix);

  static GroupHom identity(const FgGroup& g);
  static GroupHom zero(const FgGroup& domain, const FgGroup& codomain);
  /// Multiplication by k on g.
  static GroupHom multiplication(const FgGroup& g, const Integer& k);

  const FgGroup& domain() const noexcept { return domain_; }
  const FgGroup& codomain() const noexcept { return codomain_; }
  const Matrix& matrix() const noexcept { return matrix_; }

  Vector apply(const Vector& x) const;
  bool is_zero() const { return matrix_.is_zero(); }

  /// (*this) o inner. Throws ShapeMismatch when inner's codomain differs.
  GroupHom after(const GroupHom& inner) const;
  GroupHom scaled(const Integer& k) const;

  friend GroupHom operator+(const GroupHom& a, const GroupHom& b);
  friend GroupHom operator-(const GroupHom& a, const GroupHom& b);
  friend bool operator==(const GroupHom&, const GroupHom&) = default;

 private:
  FgGroup domain_;
  FgGroup codomain_;
  Matrix matrix_;
};

/// Result of presenting a group by generators and relations.
struct Presentation {
  FgGroup group;
  /// group.rank() x generator_count: generator j in canonical coordinates.
  Matrix to_canonical;
  /// generator_count x group.rank(): canonical basis vector i as a
  /// combination of the original generators.
  Matrix from_canonical;
};

/// Cokernel of the relation matrix (one row per relation, one column per
/// generator) in canonical form. Factors equal to 1 are dropped.
Presentation group_from_presentation(const Matrix& relations, std::size_t generator_count);
inline FgGroup group_from_relations(const Matrix& relations) {
  return group_from_presentation(relations, relations.cols()).group;
}

/// Subgroup of an ambient group. Generators are kept in canonical (Hermite
/// reduced) form, so equality is a comparison of generator lists.
struct Embedding;

class Subgroup {
 public:
  Subgroup() = default;
  Subgroup(FgGroup ambient, const std::vector<Vector>& generators);

  static Subgroup whole(const FgGroup& g);
  static Subgroup trivial(const FgGroup& g);

  const FgGroup& ambient() const noexcept { return ambient_; }
  const std::vector<Vector>& generators() const noexcept { return generators_; }

  bool contains(const Vector& x) const;
  bool contains(const Subgroup& other) const;
  bool is_trivial() const noexcept { return generators_.empty(); }
  bool is_whole() const;
  bool is_finite() const;
  Integer order() const;
  /// Index in the ambient group when finite.
  Integer index() const;

  /// Expresses x as a combination of canonical generators, or nullopt.
  std::optional<Vector> generator_coefficients(const Vector& x) const;

  Embedding structure() const;

  friend bool operator==(const Subgroup& a, const Subgroup& b) {
    return a.ambient_ == b.ambient_ && a.generators_ == b.generators_;
  }

 private:
  FgGroup ambient_;
  std::vector<Vector> generators_;
  HermiteBasis lattice_;
  // generator_row_[k] = index into generators_ of lattice_.rows[k], or -1
  // for a row equal to d e_j (zero in the ambient group).
  std::vector<int> generator_row_;
};

/// A subgroup realised as an abstract group with an injective inclusion.
struct Embedding {
  Subgroup subgroup;
  FgGroup group;
  GroupHom inclusion;
  /// generator_count x group.rank(): basis vector of `group` in terms of the
  /// subgroup's canonical generators.
  Matrix to_generators;
  /// group.rank() x generator_count: canonical generator l in `group`
  /// coordinates.
  Matrix from_generators;

  /// Coordinates in `group` of an ambient element, or nullopt if the element
  /// does not lie in the subgroup.
  std::optional<Vector> coordinates_of(const Vector& ambient_element) const;
};

/// A homomorphism out of a subgroup, specified by the images of the
/// subgroup's canonical generators.
class SubgroupMap {
 public:
  SubgroupMap() = default;
  /// Throws InvalidHom if the images do not define a homomorphism.
  SubgroupMap(Subgroup domain, FgGroup codomain, std::vector<Vector> generator_images);

  static SubgroupMap zero(const Subgroup& domain, const FgGroup& codomain);
  /// Restriction of an ambient homomorphism to a subgroup.
  static SubgroupMap restriction(const Subgroup& domain, const GroupHom& ambient_hom);

  const Subgroup& domain() const noexcept { return domain_; }
  const FgGroup& codomain() const noexcept { return codomain_; }
  const std::vector<Vector>& generator_images() const noexcept { return images_; }
  const Embedding& embedding() const noexcept { return embedding_; }
  /// The map on embedding().group.
  const GroupHom& on_structure() const noexcept { return on_structure_; }

  /// Throws NotContained for elements outside the domain.
  Vector apply(const Vector& x) const;
  Subgroup image() const;

  friend bool operator==(const SubgroupMap& a, const SubgroupMap& b) {
    return a.domain_ == b.domain_ && a.codomain_ == b.codomain_ && a.images_ == b.images_;
  }

 private:
  Subgroup domain_;
  FgGroup codomain_;
  std::vector<Vector> images_;
  Embedding embedding_;
  GroupHom on_structure_;
};

struct Quotient {
  FgGroup group;
  GroupHom projection;
  /// ambient.rank() x group.rank(): a set-theoretic lift of each canonical
  /// basis vector of the quotient.
  Matrix section;
};

struct DirectSum {
  FgGroup group;
  std::vector<GroupHom> injections;
  std::vector<GroupHom> projections;
};

Subgroup kernel(const GroupHom& f);
Subgroup image(const GroupHom& f);
Subgroup image(const GroupHom& f, const Subgroup& source);
/// Elements of the domain mapped into `target`.
Subgroup preimage(const GroupHom& f, const Subgroup& target);
/// Throws AmbientMismatch if H does not live in G.
Quotient quotient(const FgGroup& g, const Subgroup& h);
DirectSum direct_sum(const std::vector<FgGroup>& parts);

Subgroup meet(const Subgroup& a, const Subgroup& b);
Subgroup join(const Subgroup& a, const Subgroup& b);
/// k H as a subgroup of the same ambient group.
Subgroup multiple(const Subgroup& h, const Integer& k);

/// G (x) Z/n = G / nG with the reduction map.
Quotient tensor_zmod(const FgGroup& g, const Integer& n);
/// f (x) id for the chosen quotients of domain and codomain.
GroupHom tensor_hom(const GroupHom& f, const Quotient& source, const Quotient& target);
GroupHom tensor_hom(const GroupHom& f, const Integer& n);

Subgroup n_torsion(const FgGroup& g, const Integer& n);
Subgroup torsion(const FgGroup& g);
/// f restricted to G[n] -> G'[n], on the structure groups of the two
/// n-torsion subgroups.
GroupHom n_torsion_hom(const GroupHom& f, const Integer& n);

/// Some x with f(x) = y (canonical choice), or nullopt if y is not in im f.
std::optional<Vector> solve_preimage(const GroupHom& f, const Vector& y);

/// Inverse of a bijective homomorphism; throws InvalidHom otherwise.
GroupHom inverse(const GroupHom& f);
bool is_isomorphism(const GroupHom& f);

/// Corestriction of f to a subgroup of its codomain that contains im f.
GroupHom corestrict(const GroupHom& f, const Embedding& target);

/// Purity via the retraction criterion: H is pure iff the identity of H
/// extends to a homomorphism G -> H.
bool is_pure(const Subgroup& h);

/// Extension of a homomorphism given on a subgroup H <= G to all of G.
/// `generator_images` are the prescribed values on H's canonical
/// generators, in `codomain`. Returns nullopt when no extension exists.
/// Deterministic: for finite codomains the result has the lexicographically
/// smallest matrix in column-major order among all extensions.
std::optional<GroupHom> extend_hom(const Subgroup& h, const FgGroup& codomain,
                                   const std::vector<Vector>& generator_images);
std::optional<GroupHom> extend_hom(const SubgroupMap& f);

}  // namespace ksplit
