#include "ksplit/sequences.hpp"

#include "ksplit/error.hpp"

#include <functional>
#include <string>
#include <utility>

namespace ksplit {

void Complex::check_composable() const {
  if (groups.empty()) throw Error(ErrorKind::ShapeMismatch, "complex without groups");
  if (maps.size() + 1 != groups.size()) throw Error(ErrorKind::ShapeMismatch, "complex needs one map between consecutive groups");
  for (std::size_t i = 0; i < maps.size(); ++i)
    if (!(maps[i].domain() == groups[i]) || !(maps[i].codomain() == groups[i + 1]))
      throw Error(ErrorKind::ShapeMismatch, "map " + std::to_string(i) + " does not connect its groups");
}

bool Complex::is_complex() const {
  check_composable();
  for (std::size_t i = 0; i + 1 < maps.size(); ++i)
    if (!maps[i + 1].after(maps[i]).is_zero()) return false;
  return true;
}

bool is_exact(const Complex& c, std::size_t position) {
  c.check_composable();
  if (position >= c.groups.size()) throw Error(ErrorKind::IndexOutOfRange, "no group at position " + std::to_string(position));
  const FgGroup& g = c.groups[position];
  Subgroup k = position < c.maps.size() ? kernel(c.maps[position]) : Subgroup::whole(g);
  Subgroup i = position > 0 ? image(c.maps[position - 1]) : Subgroup::trivial(g);
  return k == i;
}

bool is_exact(const Complex& c) {
  for (std::size_t p = 0; p < c.groups.size(); ++p)
    if (!is_exact(c, p)) return false;
  return true;
}

ShortExact::ShortExact(GroupHom left, GroupHom right) : left_(std::move(left)), right_(std::move(right)) {
  Complex c = as_complex();
  for (std::size_t p = 0; p < 3; ++p)
    if (!is_exact(c, p)) throw Error(ErrorKind::NotExact, "sequence is not exact at position " + std::to_string(p));
}

Complex ShortExact::as_complex() const {
  return Complex{{left_.domain(), left_.codomain(), right_.codomain()}, {left_, right_}};
}

ShortExact extension_of(const Subgroup& h) {
  Embedding e = h.structure();
  Quotient q = quotient(h.ambient(), h);
  return ShortExact(e.inclusion, q.projection);
}

bool is_pure_exact(const ShortExact& s) { return is_pure(image(s.left())); }

bool is_splitting(const ShortExact& s, const GroupHom& sigma) {
  if (!(sigma.domain() == s.quotient()) || !(sigma.codomain() == s.middle())) return false;
  return s.right().after(sigma) == GroupHom::identity(s.quotient());
}

std::vector<GroupHom> enumerate_splittings(const ShortExact& s, long bound) {
  const FgGroup& b = s.middle();
  const FgGroup& c = s.quotient();
  if (!b.is_finite() || !c.is_finite()) throw Error(ErrorKind::SizeBoundExceeded, "enumeration needs finite groups");
  if (c.order() > bound)
    throw Error(ErrorKind::SizeBoundExceeded, "|C| = " + c.order().str() + " exceeds the bound " + std::to_string(bound));
  const std::vector<Vector> elems = b.elements();
  // Candidates per generator of C: fibre elements killed by the generator's order.
  std::vector<std::vector<const Vector*>> cand(c.rank());
  for (std::size_t j = 0; j < c.rank(); ++j) {
    const Vector target = c.basis_vector(j);
    for (const auto& x : elems)
      if (s.right().apply(x) == target && is_zero(b.scale(c.moduli()[j], x))) cand[j].push_back(&x);
  }
  std::vector<GroupHom> out;
  Matrix m(b.rank(), c.rank());
  std::function<void(std::size_t)> pick = [&](std::size_t j) {
    if (j == c.rank()) {
      out.emplace_back(c, b, m);
      return;
    }
    for (const Vector* x : cand[j]) {
      m.set_column(j, *x);
      pick(j + 1);
    }
  };
  pick(0);
  return out;
}

namespace {

Integer entry_step(const Integer& e, const Integer& d) {
  if (e == 0) return d == 0 ? 1 : 0;
  return d == 0 ? Integer(1) : e / gcd(d, e);
}

void check_partial(const ShortExact& s, const SubgroupMap& partial) {
  if (!(partial.domain().ambient() == s.quotient()) || !(partial.codomain() == s.middle()))
    throw Error(ErrorKind::PartialNotASplitting, "partial map has the wrong domain or codomain");
  const auto& gens = partial.domain().generators();
  for (std::size_t l = 0; l < gens.size(); ++l)
    if (s.right().apply(partial.generator_images()[l]) != gens[l])
      throw Error(ErrorKind::PartialNotASplitting, "partial map is not a section on generator " + to_string(gens[l]));
}

}  // namespace

std::optional<GroupHom> find_splitting_constrained(const ShortExact& s, const SubgroupMap& partial) {
  check_partial(s, partial);
  const FgGroup& b = s.middle();
  const FgGroup& c = s.quotient();
  const std::size_t kb = b.rank(), kc = c.rank();
  const Vector& mb = b.moduli();
  const Vector& mc = c.moduli();
  const auto& gens = partial.domain().generators();
  const auto& imgs = partial.generator_images();
  const Matrix& beta = s.right().matrix();

  // Unknown X(i, j) = step(i, j) * y[j * kb + i]; column-major order.
  const std::size_t nvar = kb * kc;
  Matrix step(kb, kc);
  for (std::size_t i = 0; i < kb; ++i)
    for (std::size_t j = 0; j < kc; ++j) step(i, j) = entry_step(mb[i], mc[j]);

  std::vector<Vector> rows;
  Vector rhs;
  std::vector<Integer> slack;  // modulus of each equation (0: none)
  // right o X = id on C.
  for (std::size_t r = 0; r < kc; ++r)
    for (std::size_t j = 0; j < kc; ++j) {
      Vector row(nvar);
      for (std::size_t i = 0; i < kb; ++i) row[j * kb + i] = beta(r, i) * step(i, j);
      rows.push_back(std::move(row));
      rhs.push_back(r == j ? mod(Integer(1), mc[r]) : Integer(0));
      slack.push_back(mc[r]);
    }
  // X g_l = partial(g_l) in B.
  for (std::size_t l = 0; l < gens.size(); ++l)
    for (std::size_t i = 0; i < kb; ++i) {
      Vector row(nvar);
      for (std::size_t j = 0; j < kc; ++j) row[j * kb + i] = step(i, j) * gens[l][j];
      rows.push_back(std::move(row));
      rhs.push_back(imgs[l][i]);
      slack.push_back(mb[i]);
    }
  std::size_t nslack = 0;
  for (const auto& m : slack)
    if (m != 0) ++nslack;
  Matrix system(rows.size(), nvar + nslack);
  for (std::size_t e = 0, sc = 0; e < rows.size(); ++e) {
    for (std::size_t v = 0; v < nvar; ++v) system(e, v) = rows[e][v];
    if (slack[e] != 0) system(e, nvar + sc++) = slack[e];
  }
  auto sol = solve_integer(system, rhs);
  if (!sol) return std::nullopt;

  Vector moduli(nvar), x(nvar);
  for (std::size_t j = 0; j < kc; ++j)
    for (std::size_t i = 0; i < kb; ++i) {
      const std::size_t v = j * kb + i;
      moduli[v] = mb[i];
      x[v] = step(i, j) * sol->particular[v];
    }
  std::vector<Vector> lattice;
  for (const auto& kv : sol->kernel) {
    Vector w(nvar);
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

std::optional<GroupHom> find_splitting(const ShortExact& s) {
  return find_splitting_constrained(s, SubgroupMap::zero(Subgroup::trivial(s.quotient()), s.middle()));
}

std::optional<GroupHom> greedy_splitting(const ShortExact& s, const SubgroupMap& partial) {
  check_partial(s, partial);
  const FgGroup& b = s.middle();
  const FgGroup& c = s.quotient();
  if (!b.is_finite()) throw Error(ErrorKind::SizeBoundExceeded, "greedy strategy needs a finite middle group");
  const Subgroup im_left = image(s.left());
  Subgroup d = partial.image();
  if (!meet(d, im_left).is_trivial()) return std::nullopt;
  const Integer target = c.order();
  for (const auto& x : b.elements()) {
    if (d.order() == target) break;
    if (d.contains(x)) continue;
    Subgroup grown = join(d, Subgroup(b, {x}));
    if (meet(grown, im_left).is_trivial()) d = std::move(grown);
  }
  if (d.order() != target) return std::nullopt;
  Embedding e = d.structure();
  GroupHom onto = s.right().after(e.inclusion);
  if (!is_isomorphism(onto)) return std::nullopt;
  return e.inclusion.after(inverse(onto));
}

}  // namespace ksplit
