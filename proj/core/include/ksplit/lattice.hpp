#pragma once

// Finite posets of ideal ids, stored by covering relations with the
// transitive closure cached. All iteration follows lexicographic id order.

#include <array>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace ksplit {

struct Cover {
  std::string lower;
  std::string upper;
  friend bool operator==(const Cover&, const Cover&) = default;
  friend auto operator<=>(const Cover&, const Cover&) = default;
};

class IdealLattice {
 public:
  IdealLattice() = default;
  /// Throws InvalidLattice on duplicate ids, unknown endpoints or cycles.
  /// Being a lattice is not required here; see is_lattice().
  IdealLattice(std::vector<std::string> nodes, std::vector<Cover> covers);

  /// Sorted ids.
  const std::vector<std::string>& nodes() const noexcept { return nodes_; }
  /// Sorted cover edges as given (after removing duplicates).
  const std::vector<Cover>& covers() const noexcept { return covers_; }
  std::size_t size() const noexcept { return nodes_.size(); }
  bool contains(const std::string& id) const;

  bool leq(const std::string& a, const std::string& b) const;

  /// Nullopt unless there is a unique minimal / maximal node.
  std::optional<std::string> bottom() const;
  std::optional<std::string> top() const;

  /// Least upper bound / greatest lower bound, or nullopt if none exists.
  std::optional<std::string> try_join(const std::string& a, const std::string& b) const;
  std::optional<std::string> try_meet(const std::string& a, const std::string& b) const;
  /// Throw InvalidLattice when the bound does not exist.
  std::string join(const std::string& a, const std::string& b) const;
  std::string meet(const std::string& a, const std::string& b) const;

  /// Bounded, and every pair has a join and a meet. On failure `why` names
  /// the offending pair.
  bool is_lattice(std::string* why = nullptr) const;

  /// First triple (I, J, K) in id order with I ^ (J v K) != (I ^ J) v (I ^ K).
  std::optional<std::array<std::string, 3>> distributivity_violation() const;

  std::vector<std::string> strictly_below(const std::string& id) const;
  /// Maximal elements of the set of nodes strictly below `id`.
  std::vector<std::string> maximal_subideals(const std::string& id) const;

  bool is_hereditary(const std::set<std::string>& s) const;
  /// Smallest id outside `processed` whose strict predecessors are all
  /// processed; nullopt once everything is processed. Throws NotHereditary.
  std::optional<std::string> next_ideal(const std::set<std::string>& processed) const;

  /// Pairwise joins of the parts all equal `id`. Throws NotBelow.
  bool is_comaximal_family(const std::string& id, const std::vector<std::string>& parts) const;

 private:
  std::size_t index(const std::string& id) const;

  std::vector<std::string> nodes_;
  std::vector<Cover> covers_;
  std::vector<std::vector<bool>> leq_;  // leq_[i][j]: nodes_[i] <= nodes_[j]
};

}  // namespace ksplit
