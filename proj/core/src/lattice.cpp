#include "ksplit/lattice.hpp"

#include "ksplit/error.hpp"

#include <algorithm>

namespace ksplit {

IdealLattice::IdealLattice(std::vector<std::string> nodes, std::vector<Cover> covers)
    : nodes_(std::move(nodes)), covers_(std::move(covers)) {
  std::sort(nodes_.begin(), nodes_.end());
  if (std::adjacent_find(nodes_.begin(), nodes_.end()) != nodes_.end())
    throw Error(ErrorKind::InvalidLattice, "duplicate ideal id");
  std::sort(covers_.begin(), covers_.end());
  covers_.erase(std::unique(covers_.begin(), covers_.end()), covers_.end());
  const std::size_t n = nodes_.size();
  leq_.assign(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) leq_[i][i] = true;
  for (const auto& c : covers_) {
    if (!contains(c.lower) || !contains(c.upper))
      throw Error(ErrorKind::InvalidLattice, "cover edge " + c.lower + " < " + c.upper + " names an unknown ideal");
    if (c.lower == c.upper) throw Error(ErrorKind::InvalidLattice, "self-loop at " + c.lower);
    leq_[index(c.lower)][index(c.upper)] = true;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (leq_[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (leq_[k][j]) leq_[i][j] = true;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (leq_[i][j] && leq_[j][i])
        throw Error(ErrorKind::InvalidLattice, "cycle through " + nodes_[i] + " and " + nodes_[j]);
}

bool IdealLattice::contains(const std::string& id) const { return std::binary_search(nodes_.begin(), nodes_.end(), id); }

std::size_t IdealLattice::index(const std::string& id) const {
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), id);
  if (it == nodes_.end() || *it != id) throw Error(ErrorKind::UnknownNode, "unknown ideal '" + id + "'");
  return static_cast<std::size_t>(it - nodes_.begin());
}

bool IdealLattice::leq(const std::string& a, const std::string& b) const { return leq_[index(a)][index(b)]; }

std::optional<std::string> IdealLattice::bottom() const {
  for (std::size_t i = 0; i < nodes_.size(); ++i)
    if (std::all_of(leq_[i].begin(), leq_[i].end(), [](bool b) { return b; })) return nodes_[i];
  return std::nullopt;
}

std::optional<std::string> IdealLattice::top() const {
  for (std::size_t j = 0; j < nodes_.size(); ++j) {
    bool all = true;
    for (std::size_t i = 0; i < nodes_.size() && all; ++i) all = leq_[i][j];
    if (all) return nodes_[j];
  }
  return std::nullopt;
}

std::optional<std::string> IdealLattice::try_join(const std::string& a, const std::string& b) const {
  const std::size_t ia = index(a), ib = index(b);
  std::vector<std::size_t> ub;
  for (std::size_t j = 0; j < nodes_.size(); ++j)
    if (leq_[ia][j] && leq_[ib][j]) ub.push_back(j);
  for (std::size_t u : ub)
    if (std::all_of(ub.begin(), ub.end(), [&](std::size_t v) { return static_cast<bool>(leq_[u][v]); })) return nodes_[u];
  return std::nullopt;
}

std::optional<std::string> IdealLattice::try_meet(const std::string& a, const std::string& b) const {
  const std::size_t ia = index(a), ib = index(b);
  std::vector<std::size_t> lb;
  for (std::size_t j = 0; j < nodes_.size(); ++j)
    if (leq_[j][ia] && leq_[j][ib]) lb.push_back(j);
  for (std::size_t l : lb)
    if (std::all_of(lb.begin(), lb.end(), [&](std::size_t v) { return static_cast<bool>(leq_[v][l]); })) return nodes_[l];
  return std::nullopt;
}

std::string IdealLattice::join(const std::string& a, const std::string& b) const {
  auto j = try_join(a, b);
  if (!j) throw Error(ErrorKind::InvalidLattice, "no join of " + a + " and " + b);
  return *j;
}

std::string IdealLattice::meet(const std::string& a, const std::string& b) const {
  auto m = try_meet(a, b);
  if (!m) throw Error(ErrorKind::InvalidLattice, "no meet of " + a + " and " + b);
  return *m;
}

bool IdealLattice::is_lattice(std::string* why) const {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (nodes_.empty()) return fail("empty lattice");
  if (!bottom()) return fail("no unique bottom ideal");
  if (!top()) return fail("no unique top ideal");
  for (std::size_t i = 0; i < nodes_.size(); ++i)
    for (std::size_t j = i + 1; j < nodes_.size(); ++j) {
      if (!try_join(nodes_[i], nodes_[j])) return fail("no join of " + nodes_[i] + " and " + nodes_[j]);
      if (!try_meet(nodes_[i], nodes_[j])) return fail("no meet of " + nodes_[i] + " and " + nodes_[j]);
    }
  return true;
}

std::optional<std::array<std::string, 3>> IdealLattice::distributivity_violation() const {
  for (const auto& i : nodes_)
    for (const auto& j : nodes_)
      for (const auto& k : nodes_)
        if (meet(i, join(j, k)) != join(meet(i, j), meet(i, k))) return std::array<std::string, 3>{i, j, k};
  return std::nullopt;
}

std::vector<std::string> IdealLattice::strictly_below(const std::string& id) const {
  const std::size_t t = index(id);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < nodes_.size(); ++i)
    if (i != t && leq_[i][t]) out.push_back(nodes_[i]);
  return out;
}

std::vector<std::string> IdealLattice::maximal_subideals(const std::string& id) const {
  const std::vector<std::string> below = strictly_below(id);
  std::vector<std::string> out;
  for (const auto& a : below) {
    bool maximal = true;
    for (const auto& b : below)
      if (a != b && leq(a, b)) maximal = false;
    if (maximal) out.push_back(a);
  }
  return out;
}

bool IdealLattice::is_hereditary(const std::set<std::string>& s) const {
  for (const auto& id : s)
    for (const auto& b : strictly_below(id))
      if (!s.count(b)) return false;
  return true;
}

std::optional<std::string> IdealLattice::next_ideal(const std::set<std::string>& processed) const {
  for (const auto& id : processed) index(id);
  if (!is_hereditary(processed)) throw Error(ErrorKind::NotHereditary, "processed set is not downward closed");
  for (const auto& id : nodes_) {
    if (processed.count(id)) continue;
    const auto below = strictly_below(id);
    if (std::all_of(below.begin(), below.end(), [&](const std::string& b) { return processed.count(b) > 0; })) return id;
  }
  return std::nullopt;
}

bool IdealLattice::is_comaximal_family(const std::string& id, const std::vector<std::string>& parts) const {
  for (const auto& p : parts)
    if (!leq(p, id)) throw Error(ErrorKind::NotBelow, "ideal " + p + " is not below " + id);
  for (std::size_t i = 0; i < parts.size(); ++i)
    for (std::size_t j = i + 1; j < parts.size(); ++j) {
      auto u = try_join(parts[i], parts[j]);
      if (!u || *u != id) return false;
    }
  return true;
}

}  // namespace ksplit
