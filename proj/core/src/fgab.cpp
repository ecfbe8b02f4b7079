#include "ksplit/fgab.hpp"

#include "ksplit/error.hpp"

#include <algorithm>
#include <utility>

namespace ksplit {

// ---------------------------------------------------------------- FgGroup

FgGroup::FgGroup(std::vector<Integer> invariant_factors, std::size_t free_rank)
    : factors_(std::move(invariant_factors)), free_rank_(free_rank) {
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (factors_[i] < 2)
      throw Error(ErrorKind::InvalidGroup, "invariant factor " + factors_[i].str() + " is not >= 2");
    if (i > 0 && factors_[i] % factors_[i - 1] != 0)
      throw Error(ErrorKind::InvalidGroup, "invariant factors do not form a divisibility chain");
  }
  moduli_ = factors_;
  moduli_.resize(factors_.size() + free_rank_, Integer(0));
}

FgGroup FgGroup::cyclic(const Integer& order) {
  if (order == 0) return FgGroup({}, 1);
  if (abs(order) == 1) return FgGroup();
  return FgGroup({abs(order)}, 0);
}

FgGroup FgGroup::elementary(const Integer& n, std::size_t copies) {
  if (n == 1) return FgGroup();
  if (n == 0) return FgGroup({}, copies);
  return FgGroup(std::vector<Integer>(copies, n), 0);
}

Integer FgGroup::order() const {
  if (!is_finite()) throw Error(ErrorKind::InvalidGroup, "order of an infinite group");
  Integer o = 1;
  for (const auto& d : factors_) o *= d;
  return o;
}

Integer FgGroup::torsion_exponent() const { return factors_.empty() ? Integer(1) : factors_.back(); }

Vector FgGroup::basis_vector(std::size_t i) const {
  if (i >= rank()) throw Error(ErrorKind::IndexOutOfRange, "basis index out of range");
  Vector v(rank());
  v[i] = mod(Integer(1), moduli_[i]);
  return v;
}

Vector FgGroup::reduce(Vector v) const {
  if (v.size() != rank()) throw Error(ErrorKind::ShapeMismatch, "element has wrong length for " + to_string());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = mod(v[i], moduli_[i]);
  return v;
}

bool FgGroup::is_element(const Vector& v) const {
  if (v.size() != rank()) return false;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (moduli_[i] != 0 && (v[i] < 0 || v[i] >= moduli_[i])) return false;
  return true;
}

Vector FgGroup::add(const Vector& a, const Vector& b) const {
  if (a.size() != rank() || b.size() != rank()) throw Error(ErrorKind::ShapeMismatch, "element length mismatch");
  Vector r(rank());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = mod(a[i] + b[i], moduli_[i]);
  return r;
}

Vector FgGroup::negate(const Vector& a) const { return scale(-1, a); }

Vector FgGroup::scale(const Integer& k, const Vector& a) const {
  if (a.size() != rank()) throw Error(ErrorKind::ShapeMismatch, "element length mismatch");
  Vector r(rank());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = mod(k * a[i], moduli_[i]);
  return r;
}

Integer FgGroup::element_order(const Vector& v) const {
  Vector x = reduce(v);
  Integer o = 1;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    if (moduli_[i] == 0) return 0;
    o = lcm(o, moduli_[i] / gcd(moduli_[i], x[i]));
  }
  return o;
}

std::vector<Vector> FgGroup::elements() const {
  const Integer total = order();
  if (total > 1'000'000) throw Error(ErrorKind::SizeBoundExceeded, "refusing to list more than 10^6 elements");
  std::vector<Vector> out;
  out.reserve(static_cast<std::size_t>(total));
  Vector cur(rank());
  for (;;) {
    out.push_back(cur);
    std::size_t i = rank();
    while (i > 0) {
      --i;
      if (++cur[i] < moduli_[i]) break;
      cur[i] = 0;
      if (i == 0) return out;
    }
    if (rank() == 0) return out;
  }
}

std::string FgGroup::to_string() const {
  if (is_trivial()) return "0";
  std::string s;
  for (const auto& d : factors_) {
    if (!s.empty()) s += " + ";
    s += "Z/" + d.str();
  }
  if (free_rank_ > 0) {
    if (!s.empty()) s += " + ";
    s += free_rank_ == 1 ? "Z" : "Z^" + std::to_string(free_rank_);
  }
  return s;
}

// ---------------------------------------------------------------- GroupHom

namespace {

Matrix reduce_rows(Matrix m, const Vector& moduli) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    if (moduli[i] != 0)
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = mod(m(i, j), moduli[i]);
  return m;
}

Matrix moduli_columns(const FgGroup& g) {
  Matrix d(g.rank(), g.torsion_rank());
  for (std::size_t i = 0; i < g.torsion_rank(); ++i) d(i, i) = g.moduli()[i];
  return d;
}

// Matrix whose columns are the given vectors, with `rows` rows even when empty.
Matrix columns(const std::vector<Vector>& cols, std::size_t rows) { return Matrix::from_columns(cols, rows); }

}  // namespace

GroupHom::GroupHom(FgGroup domain, FgGroup codomain, Matrix matrix)
    : domain_(std::move(domain)), codomain_(std::move(codomain)) {
  if (matrix.rows() != codomain_.rank() || matrix.cols() != domain_.rank())
    throw Error(ErrorKind::ShapeMismatch, "hom matrix is " + std::to_string(matrix.rows()) + "x" +
                                              std::to_string(matrix.cols()) + ", expected " +
                                              std::to_string(codomain_.rank()) + "x" + std::to_string(domain_.rank()));
  matrix_ = reduce_rows(std::move(matrix), codomain_.moduli());
  const Vector& dm = domain_.moduli();
  const Vector& cm = codomain_.moduli();
  for (std::size_t j = 0; j < dm.size(); ++j) {
    if (dm[j] == 0) continue;
    for (std::size_t i = 0; i < cm.size(); ++i) {
      const Integer& x = matrix_(i, j);
      if (x == 0) continue;
      const bool ok = cm[i] != 0 && (dm[j] * x) % cm[i] == 0;
      if (!ok)
        throw Error(ErrorKind::InvalidHom, "generator " + std::to_string(j) + " of order " + dm[j].str() +
                                               " is sent to an element whose order does not divide it");
    }
  }
}

GroupHom GroupHom::identity(const FgGroup& g) { return GroupHom(g, g, Matrix::identity(g.rank())); }

GroupHom GroupHom::zero(const FgGroup& domain, const FgGroup& codomain) {
  return GroupHom(domain, codomain, Matrix(codomain.rank(), domain.rank()));
}

GroupHom GroupHom::multiplication(const FgGroup& g, const Integer& k) {
  return GroupHom(g, g, k * Matrix::identity(g.rank()));
}

Vector GroupHom::apply(const Vector& x) const {
  if (x.size() != domain_.rank()) throw Error(ErrorKind::ShapeMismatch, "argument has wrong length");
  return codomain_.reduce(matrix_ * x);
}

GroupHom GroupHom::after(const GroupHom& inner) const {
  if (!(inner.codomain_ == domain_)) throw Error(ErrorKind::ShapeMismatch, "composition of incompatible homs");
  return GroupHom(inner.domain_, codomain_, matrix_ * inner.matrix_);
}

GroupHom GroupHom::scaled(const Integer& k) const { return GroupHom(domain_, codomain_, k * matrix_); }

GroupHom operator+(const GroupHom& a, const GroupHom& b) {
  if (!(a.domain_ == b.domain_) || !(a.codomain_ == b.codomain_))
    throw Error(ErrorKind::ShapeMismatch, "sum of homs with different domain or codomain");
  return GroupHom(a.domain_, a.codomain_, a.matrix_ + b.matrix_);
}

GroupHom operator-(const GroupHom& a, const GroupHom& b) { return a + b.scaled(-1); }

// ---------------------------------------------------------------- presentations

Presentation group_from_presentation(const Matrix& relations, std::size_t generator_count) {
  if (relations.rows() > 0 && relations.cols() != generator_count)
    throw Error(ErrorKind::ShapeMismatch, "relation matrix needs one column per generator");
  Matrix n = relations.rows() == 0 ? Matrix(generator_count, 0) : relations.transpose();
  SmithForm s = snf(n);
  const Vector diag = s.diagonal();
  std::vector<std::size_t> torsion_idx, free_idx;
  std::vector<Integer> factors;
  for (std::size_t i = 0; i < generator_count; ++i) {
    const Integer d = i < diag.size() ? diag[i] : Integer(0);
    if (d == 1) continue;
    if (d == 0) {
      free_idx.push_back(i);
    } else {
      torsion_idx.push_back(i);
      factors.push_back(d);
    }
  }
  std::vector<std::size_t> keep = torsion_idx;
  keep.insert(keep.end(), free_idx.begin(), free_idx.end());
  Presentation p;
  p.group = FgGroup(std::move(factors), free_idx.size());
  p.to_canonical = reduce_rows(s.U.select_rows(keep), p.group.moduli());
  p.from_canonical = s.U_inv.select_columns(keep);
  return p;
}

// ---------------------------------------------------------------- Subgroup

Subgroup::Subgroup(FgGroup ambient, const std::vector<Vector>& generators) : ambient_(std::move(ambient)) {
  for (const auto& g : generators)
    if (g.size() != ambient_.rank())
      throw Error(ErrorKind::ShapeMismatch, "subgroup generator " + to_string(g) + " has wrong length");
  lattice_ = hermite(generators, ambient_.moduli());
  generator_row_.reserve(lattice_.rows.size());
  for (const auto& row : lattice_.rows) {
    Vector g = ambient_.reduce(row);
    if (is_zero(g)) {
      generator_row_.push_back(-1);
    } else {
      generator_row_.push_back(static_cast<int>(generators_.size()));
      generators_.push_back(std::move(g));
    }
  }
}

Subgroup Subgroup::whole(const FgGroup& g) {
  std::vector<Vector> gens;
  for (std::size_t i = 0; i < g.rank(); ++i) gens.push_back(g.basis_vector(i));
  return Subgroup(g, gens);
}

Subgroup Subgroup::trivial(const FgGroup& g) { return Subgroup(g, {}); }

bool Subgroup::contains(const Vector& x) const {
  if (x.size() != ambient_.rank()) return false;
  return lattice_.contains(ambient_.reduce(x));
}

bool Subgroup::contains(const Subgroup& other) const {
  if (!(other.ambient_ == ambient_)) throw Error(ErrorKind::AmbientMismatch, "subgroups of different groups");
  return std::all_of(other.generators_.begin(), other.generators_.end(),
                     [this](const Vector& g) { return contains(g); });
}

bool Subgroup::is_whole() const {
  for (std::size_t i = 0; i < ambient_.rank(); ++i)
    if (!contains(ambient_.basis_vector(i))) return false;
  return true;
}

bool Subgroup::is_finite() const {
  for (std::size_t p : lattice_.pivots)
    if (ambient_.moduli()[p] == 0) return false;
  return true;
}

Integer Subgroup::order() const {
  if (!is_finite()) throw Error(ErrorKind::InvalidGroup, "order of an infinite subgroup");
  Integer o = 1;
  for (std::size_t k = 0; k < lattice_.rows.size(); ++k) o *= ambient_.moduli()[lattice_.pivots[k]];
  for (std::size_t k = 0; k < lattice_.rows.size(); ++k) o /= lattice_.rows[k][lattice_.pivots[k]];
  return o;
}

Integer Subgroup::index() const {
  if (lattice_.rows.size() != ambient_.rank()) throw Error(ErrorKind::InvalidGroup, "subgroup has infinite index");
  Integer o = 1;
  for (std::size_t k = 0; k < lattice_.rows.size(); ++k) o *= lattice_.rows[k][lattice_.pivots[k]];
  return o;
}

std::optional<Vector> Subgroup::generator_coefficients(const Vector& x) const {
  if (x.size() != ambient_.rank()) return std::nullopt;
  Vector r = ambient_.reduce(x);
  std::vector<Integer> c = lattice_.reduce(r);
  if (!is_zero(r)) return std::nullopt;
  Vector out(generators_.size());
  for (std::size_t k = 0; k < c.size(); ++k)
    if (generator_row_[k] >= 0) out[static_cast<std::size_t>(generator_row_[k])] = c[k];
  return out;
}

Embedding Subgroup::structure() const {
  const std::size_t k = ambient_.rank();
  const std::size_t s = generators_.size();
  // Relations among the generators: c with A c in the modulus lattice.
  Matrix a = columns(generators_, k);
  Matrix system = Matrix::hstack(a, moduli_columns(ambient_));
  std::vector<Vector> rels;
  for (const auto& v : integer_kernel(system)) rels.emplace_back(v.begin(), v.begin() + static_cast<long>(s));
  Presentation p = group_from_presentation(Matrix::from_rows(rels, s), s);
  Embedding e;
  e.subgroup = *this;
  e.group = p.group;
  e.inclusion = GroupHom(p.group, ambient_, a * p.from_canonical);
  e.to_generators = p.from_canonical;
  e.from_generators = p.to_canonical;
  return e;
}

std::optional<Vector> Embedding::coordinates_of(const Vector& ambient_element) const {
  auto c = subgroup.generator_coefficients(ambient_element);
  if (!c) return std::nullopt;
  return group.reduce(from_generators * *c);
}

// ---------------------------------------------------------------- SubgroupMap

SubgroupMap::SubgroupMap(Subgroup domain, FgGroup codomain, std::vector<Vector> generator_images)
    : domain_(std::move(domain)), codomain_(std::move(codomain)) {
  if (generator_images.size() != domain_.generators().size())
    throw Error(ErrorKind::ShapeMismatch, "need one image per canonical generator");
  for (auto& v : generator_images) images_.push_back(codomain_.reduce(v));
  embedding_ = domain_.structure();
  Matrix img = columns(images_, codomain_.rank());
  on_structure_ = GroupHom(embedding_.group, codomain_, img * embedding_.to_generators);
  // The basis images determine the map; it is well defined iff it reproduces
  // every prescribed generator image.
  for (std::size_t l = 0; l < images_.size(); ++l)
    if (on_structure_.apply(embedding_.from_generators.column(l)) != images_[l])
      throw Error(ErrorKind::InvalidHom, "generator images violate the relations of the subgroup");
}

SubgroupMap SubgroupMap::zero(const Subgroup& domain, const FgGroup& codomain) {
  return SubgroupMap(domain, codomain, std::vector<Vector>(domain.generators().size(), codomain.zero()));
}

SubgroupMap SubgroupMap::restriction(const Subgroup& domain, const GroupHom& ambient_hom) {
  if (!(domain.ambient() == ambient_hom.domain()))
    throw Error(ErrorKind::AmbientMismatch, "restriction to a subgroup of a different group");
  std::vector<Vector> imgs;
  for (const auto& g : domain.generators()) imgs.push_back(ambient_hom.apply(g));
  return SubgroupMap(domain, ambient_hom.codomain(), std::move(imgs));
}

Vector SubgroupMap::apply(const Vector& x) const {
  auto c = embedding_.coordinates_of(x);
  if (!c) throw Error(ErrorKind::NotContained, "element " + to_string(x) + " is outside the map's domain");
  return on_structure_.apply(*c);
}

Subgroup SubgroupMap::image() const { return Subgroup(codomain_, images_); }

// ---------------------------------------------------------------- constructions

Subgroup kernel(const GroupHom& f) {
  const std::size_t k = f.domain().rank();
  Matrix system = Matrix::hstack(f.matrix(), moduli_columns(f.codomain()));
  std::vector<Vector> gens;
  for (const auto& v : integer_kernel(system)) gens.emplace_back(v.begin(), v.begin() + static_cast<long>(k));
  return Subgroup(f.domain(), gens);
}

Subgroup image(const GroupHom& f) { return Subgroup(f.codomain(), f.matrix().column_list()); }

Subgroup image(const GroupHom& f, const Subgroup& source) {
  if (!(source.ambient() == f.domain())) throw Error(ErrorKind::AmbientMismatch, "image of a foreign subgroup");
  std::vector<Vector> gens;
  for (const auto& g : source.generators()) gens.push_back(f.apply(g));
  return Subgroup(f.codomain(), gens);
}

Subgroup preimage(const GroupHom& f, const Subgroup& target) {
  if (!(target.ambient() == f.codomain())) throw Error(ErrorKind::AmbientMismatch, "preimage of a foreign subgroup");
  const std::size_t k = f.domain().rank();
  Matrix system = Matrix::hstack(f.matrix(), columns(target.generators(), f.codomain().rank()));
  system = Matrix::hstack(system, moduli_columns(f.codomain()));
  std::vector<Vector> gens;
  for (const auto& v : integer_kernel(system)) gens.emplace_back(v.begin(), v.begin() + static_cast<long>(k));
  return Subgroup(f.domain(), gens);
}

Quotient quotient(const FgGroup& g, const Subgroup& h) {
  if (!(h.ambient() == g)) throw Error(ErrorKind::AmbientMismatch, "subgroup is not contained in " + g.to_string());
  std::vector<Vector> rels = h.generators();
  for (std::size_t i = 0; i < g.torsion_rank(); ++i) {
    Vector r(g.rank());
    r[i] = g.moduli()[i];
    rels.push_back(std::move(r));
  }
  Presentation p = group_from_presentation(Matrix::from_rows(rels, g.rank()), g.rank());
  Quotient q;
  q.group = p.group;
  q.projection = GroupHom(g, p.group, p.to_canonical);
  q.section = p.from_canonical;
  return q;
}

DirectSum direct_sum(const std::vector<FgGroup>& parts) {
  std::size_t total = 0;
  for (const auto& g : parts) total += g.rank();
  Matrix rels(total, total);
  std::size_t off = 0;
  for (const auto& g : parts) {
    for (std::size_t i = 0; i < g.rank(); ++i) rels(off + i, off + i) = g.moduli()[i];
    off += g.rank();
  }
  Presentation p = group_from_presentation(rels, total);
  DirectSum ds;
  ds.group = p.group;
  off = 0;
  for (const auto& g : parts) {
    std::vector<std::size_t> idx(g.rank());
    for (std::size_t i = 0; i < g.rank(); ++i) idx[i] = off + i;
    ds.injections.emplace_back(g, p.group, p.to_canonical.select_columns(idx));
    ds.projections.emplace_back(p.group, g, p.from_canonical.select_rows(idx));
    off += g.rank();
  }
  return ds;
}

Subgroup meet(const Subgroup& a, const Subgroup& b) {
  if (!(a.ambient() == b.ambient())) throw Error(ErrorKind::AmbientMismatch, "meet of subgroups of different groups");
  const FgGroup& g = a.ambient();
  const std::size_t s = a.generators().size();
  Matrix ma = columns(a.generators(), g.rank());
  Matrix mb = columns(b.generators(), g.rank());
  Matrix system = Matrix::hstack(Matrix::hstack(ma, mb), moduli_columns(g));
  std::vector<Vector> gens;
  for (const auto& v : integer_kernel(system)) gens.push_back(ma * Vector(v.begin(), v.begin() + static_cast<long>(s)));
  return Subgroup(g, gens);
}

Subgroup join(const Subgroup& a, const Subgroup& b) {
  if (!(a.ambient() == b.ambient())) throw Error(ErrorKind::AmbientMismatch, "join of subgroups of different groups");
  std::vector<Vector> gens = a.generators();
  gens.insert(gens.end(), b.generators().begin(), b.generators().end());
  return Subgroup(a.ambient(), gens);
}

Subgroup multiple(const Subgroup& h, const Integer& k) {
  std::vector<Vector> gens;
  for (const auto& g : h.generators()) gens.push_back(h.ambient().scale(k, g));
  return Subgroup(h.ambient(), gens);
}

Quotient tensor_zmod(const FgGroup& g, const Integer& n) {
  if (n < 1) throw Error(ErrorKind::BadParameter, "tensor coefficient must be positive");
  return quotient(g, multiple(Subgroup::whole(g), n));
}

GroupHom tensor_hom(const GroupHom& f, const Quotient& source, const Quotient& target) {
  return GroupHom(source.group, target.group, target.projection.matrix() * f.matrix() * source.section);
}

GroupHom tensor_hom(const GroupHom& f, const Integer& n) {
  return tensor_hom(f, tensor_zmod(f.domain(), n), tensor_zmod(f.codomain(), n));
}

Subgroup n_torsion(const FgGroup& g, const Integer& n) {
  if (n < 1) throw Error(ErrorKind::BadParameter, "torsion index must be positive");
  std::vector<Vector> gens;
  for (std::size_t i = 0; i < g.torsion_rank(); ++i) {
    const Integer& d = g.moduli()[i];
    Vector v(g.rank());
    v[i] = d / gcd(d, n);
    gens.push_back(g.reduce(std::move(v)));
  }
  return Subgroup(g, gens);
}

Subgroup torsion(const FgGroup& g) { return n_torsion(g, g.torsion_exponent()); }

GroupHom corestrict(const GroupHom& f, const Embedding& target) {
  std::vector<Vector> cols;
  for (std::size_t j = 0; j < f.domain().rank(); ++j) {
    auto c = target.coordinates_of(f.matrix().column(j));
    if (!c) throw Error(ErrorKind::NotContained, "image is not contained in the target subgroup");
    cols.push_back(std::move(*c));
  }
  return GroupHom(f.domain(), target.group, columns(cols, target.group.rank()));
}

std::optional<Vector> solve_preimage(const GroupHom& f, const Vector& y) {
  const std::size_t k = f.domain().rank();
  Matrix system = Matrix::hstack(f.matrix(), moduli_columns(f.codomain()));
  auto sol = solve_integer(system, f.codomain().reduce(y));
  if (!sol) return std::nullopt;
  Vector x(sol->particular.begin(), sol->particular.begin() + static_cast<long>(k));
  std::vector<Vector> lattice;
  for (const auto& kv : sol->kernel) lattice.emplace_back(kv.begin(), kv.begin() + static_cast<long>(k));
  return canonical_representative(std::move(x), lattice, f.domain().moduli());
}

bool is_isomorphism(const GroupHom& f) {
  return f.domain().invariant_factors() == f.codomain().invariant_factors() &&
         f.domain().free_rank() == f.codomain().free_rank() && kernel(f).is_trivial() && image(f).is_whole();
}

GroupHom inverse(const GroupHom& f) {
  if (!is_isomorphism(f)) throw Error(ErrorKind::InvalidHom, "map is not invertible");
  std::vector<Vector> cols;
  for (std::size_t j = 0; j < f.codomain().rank(); ++j) cols.push_back(*solve_preimage(f, f.codomain().basis_vector(j)));
  return GroupHom(f.codomain(), f.domain(), columns(cols, f.domain().rank()));
}

GroupHom n_torsion_hom(const GroupHom& f, const Integer& n) {
  Embedding src = n_torsion(f.domain(), n).structure();
  Embedding dst = n_torsion(f.codomain(), n).structure();
  return corestrict(f.after(src.inclusion), dst);
}

// ---------------------------------------------------------------- extension

namespace {

// Codomain coordinates sharing the modulus e. Each row r of the extension
// matrix must be valid as a map out of G and satisfy r . g_l = target_l
// (mod e). Returns the canonical solution per target, or nullopt for the
// whole batch as soon as one target has none.
std::optional<std::vector<Vector>> solve_extension_rows(const FgGroup& g, const std::vector<Vector>& gens,
                                                        const Integer& e, const std::vector<Vector>& targets) {
  const std::size_t k = g.rank();
  const std::size_t s = gens.size();
  // Entry j must satisfy d_j r_j = 0 mod e: r_j = step_j * y_j.
  Vector step(k);
  for (std::size_t j = 0; j < k; ++j) {
    const Integer& d = g.moduli()[j];
    if (e == 0)
      step[j] = d == 0 ? 1 : 0;
    else
      step[j] = d == 0 ? Integer(1) : e / gcd(d, e);
  }
  const std::size_t extra = e == 0 ? 0 : s;
  Matrix system(s, k + extra);
  for (std::size_t l = 0; l < s; ++l) {
    for (std::size_t j = 0; j < k; ++j) system(l, j) = step[j] * gens[l][j];
    if (e != 0) system(l, k + l) = e;
  }
  MultiSolution sol = solve_integer_many(system, targets);
  std::vector<Vector> lattice;
  for (const auto& kv : sol.kernel) {
    Vector v(k);
    for (std::size_t j = 0; j < k; ++j) v[j] = step[j] * kv[j];
    if (!is_zero(v)) lattice.push_back(std::move(v));
  }
  const Vector moduli(k, e);
  const HermiteBasis h = hermite(lattice, moduli);
  std::vector<Vector> rows;
  for (const auto& p : sol.particular) {
    if (!p) return std::nullopt;
    Vector row(k);
    for (std::size_t j = 0; j < k; ++j) row[j] = mod(step[j] * (*p)[j], e);
    h.reduce(row);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

std::optional<GroupHom> extend_hom(const Subgroup& h, const FgGroup& codomain,
                                   const std::vector<Vector>& generator_images) {
  const auto& gens = h.generators();
  if (generator_images.size() != gens.size())
    throw Error(ErrorKind::ShapeMismatch, "need one image per canonical generator");
  for (const auto& v : generator_images)
    if (v.size() != codomain.rank()) throw Error(ErrorKind::ShapeMismatch, "generator image has wrong length");
  const FgGroup& g = h.ambient();
  const Vector& cm = codomain.moduli();
  Matrix m(codomain.rank(), g.rank());
  // Invariant factors are sorted, so equal moduli form contiguous runs.
  for (std::size_t start = 0; start < cm.size();) {
    std::size_t end = start;
    while (end < cm.size() && cm[end] == cm[start]) ++end;
    std::vector<Vector> targets;
    for (std::size_t i = start; i < end; ++i) {
      Vector t(gens.size());
      for (std::size_t l = 0; l < gens.size(); ++l) t[l] = mod(generator_images[l][i], cm[i]);
      targets.push_back(std::move(t));
    }
    auto rows = solve_extension_rows(g, gens, cm[start], targets);
    if (!rows) return std::nullopt;
    for (std::size_t i = start; i < end; ++i) m.set_row(i, (*rows)[i - start]);
    start = end;
  }
  return GroupHom(g, codomain, std::move(m));
}

std::optional<GroupHom> extend_hom(const SubgroupMap& f) {
  return extend_hom(f.domain(), f.codomain(), f.generator_images());
}

bool is_pure(const Subgroup& h) {
  if (h.is_trivial()) return true;
  Embedding e = h.structure();
  return extend_hom(h, e.group, e.from_generators.column_list()).has_value();
}

}  // namespace ksplit
