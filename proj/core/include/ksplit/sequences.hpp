#pragma once

// Exact sequences, purity of extensions, and splitting maps.

#include "ksplit/fgab.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace ksplit {

/// groups[0] -> groups[1] -> ... with maps[i]: groups[i] -> groups[i+1].
struct Complex {
  std::vector<FgGroup> groups;
  std::vector<GroupHom> maps;

  /// Throws ShapeMismatch unless consecutive maps compose.
  void check_composable() const;
  /// Composable and every composite of consecutive maps is zero.
  bool is_complex() const;
};

/// Exactness at groups[position]. The outer ends are treated as bordered by
/// zero groups, so position 0 asks for injectivity of maps[0] and the last
/// position for surjectivity of the last map.
bool is_exact(const Complex& c, std::size_t position);
bool is_exact(const Complex& c);

/// 0 -> A -> B -> C -> 0.
class ShortExact {
 public:
  /// Throws NotExact with the failing position named.
  ShortExact(GroupHom left, GroupHom right);

  const GroupHom& left() const noexcept { return left_; }
  const GroupHom& right() const noexcept { return right_; }
  const FgGroup& sub() const noexcept { return left_.domain(); }
  const FgGroup& middle() const noexcept { return left_.codomain(); }
  const FgGroup& quotient() const noexcept { return right_.codomain(); }
  Complex as_complex() const;

 private:
  GroupHom left_;
  GroupHom right_;
};

/// 0 -> H -> G -> G/H -> 0 for a subgroup H of G.
ShortExact extension_of(const Subgroup& h);

bool is_pure_exact(const ShortExact& s);

inline constexpr long kDefaultEnumerationBound = 256;

/// Every sigma: C -> B with right o sigma = id, sorted lexicographically by
/// the tuple of generator images. Throws SizeBoundExceeded when the groups
/// are infinite or |C| exceeds `bound`.
std::vector<GroupHom> enumerate_splittings(const ShortExact& s, long bound = kDefaultEnumerationBound);

/// Does `sigma` satisfy right o sigma = id?
bool is_splitting(const ShortExact& s, const GroupHom& sigma);

/// Splitting that agrees with `partial` on its domain (a subgroup of C), by
/// one linear solve. Throws PartialNotASplitting when right o partial is not
/// the inclusion. The result is the lexicographically smallest matrix in
/// column-major order when B is finite.
std::optional<GroupHom> find_splitting_constrained(const ShortExact& s, const SubgroupMap& partial);
std::optional<GroupHom> find_splitting(const ShortExact& s);

/// Grows D <= B from im(partial) by adjoining elements of B in mixed-radix
/// order whenever D stays disjoint from im(left), until D maps onto C.
/// Finite groups only. May fail even when a splitting exists.
std::optional<GroupHom> greedy_splitting(const ShortExact& s, const SubgroupMap& partial);

}  // namespace ksplit
