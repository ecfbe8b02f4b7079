#include "ksplit/normal_form.hpp"

#include "ksplit/error.hpp"

#include <algorithm>
#include <utility>

namespace ksplit {

namespace {

/// Elementary operations applied to the working matrix and mirrored onto the
/// four transform matrices.
struct SmithState {
  Matrix a, u, u_inv, v, v_inv;

  explicit SmithState(const Matrix& m)
      : a(m),
        u(Matrix::identity(m.rows())),
        u_inv(Matrix::identity(m.rows())),
        v(Matrix::identity(m.cols())),
        v_inv(Matrix::identity(m.cols())) {}

  // row[dst] += k row[src]
  void row_op(std::size_t dst, std::size_t src, const Integer& k) {
    a.add_row_multiple(dst, src, k);
    u.add_row_multiple(dst, src, k);
    u_inv.add_column_multiple(src, dst, -k);
  }
  // col[dst] += k col[src]
  void col_op(std::size_t dst, std::size_t src, const Integer& k) {
    a.add_column_multiple(dst, src, k);
    v.add_column_multiple(dst, src, k);
    v_inv.add_row_multiple(src, dst, -k);
  }
  void swap_rows(std::size_t i, std::size_t j) {
    a.swap_rows(i, j);
    u.swap_rows(i, j);
    u_inv.swap_columns(i, j);
  }
  void swap_cols(std::size_t i, std::size_t j) {
    a.swap_columns(i, j);
    v.swap_columns(i, j);
    v_inv.swap_rows(i, j);
  }
  void negate_row(std::size_t i) {
    a.negate_row(i);
    u.negate_row(i);
    for (std::size_t r = 0; r < u_inv.rows(); ++r) u_inv(r, i) = -u_inv(r, i);
  }
};

bool select_pivot(const Matrix& a, std::size_t t, std::size_t& pr, std::size_t& pc) {
  bool found = false;
  Integer best;
  for (std::size_t i = t; i < a.rows(); ++i)
    for (std::size_t j = t; j < a.cols(); ++j) {
      const Integer& x = a(i, j);
      if (x == 0) continue;
      Integer ax = abs(x);
      if (!found || ax < best) {
        found = true;
        best = std::move(ax);
        pr = i;
        pc = j;
      }
    }
  return found;
}

}  // namespace

Vector SmithForm::diagonal() const {
  const std::size_t n = std::min(D.rows(), D.cols());
  Vector d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = D(i, i);
  return d;
}

SmithForm snf(const Matrix& m) {
  SmithState s(m);
  const std::size_t limit = std::min(m.rows(), m.cols());
  for (std::size_t t = 0; t < limit; ++t) {
    std::size_t pr = 0, pc = 0;
    if (!select_pivot(s.a, t, pr, pc)) break;
    for (;;) {
      s.swap_rows(t, pr);
      s.swap_cols(t, pc);
      bool clean = true;
      for (std::size_t i = t + 1; i < s.a.rows(); ++i) {
        if (s.a(i, t) == 0) continue;
        Integer q = s.a(i, t) / s.a(t, t);
        s.row_op(i, t, -q);
        if (s.a(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < s.a.cols(); ++j) {
        if (s.a(t, j) == 0) continue;
        Integer q = s.a(t, j) / s.a(t, t);
        s.col_op(j, t, -q);
        if (s.a(t, j) != 0) clean = false;
      }
      if (clean) {
        // The pivot must divide every entry of the remaining block.
        bool divides = true;
        for (std::size_t i = t + 1; i < s.a.rows() && divides; ++i)
          for (std::size_t j = t + 1; j < s.a.cols(); ++j)
            if (s.a(i, j) % s.a(t, t) != 0) {
              s.row_op(t, i, 1);
              divides = false;
              break;
            }
        if (divides) break;
      }
      select_pivot(s.a, t, pr, pc);
    }
    if (s.a(t, t) < 0) s.negate_row(t);
  }
  return SmithForm{std::move(s.u), std::move(s.a), std::move(s.v), std::move(s.u_inv), std::move(s.v_inv)};
}

std::vector<Integer> HermiteBasis::reduce(Vector& v) const {
  std::vector<Integer> coeff(rows.size());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const std::size_t p = pivots[k];
    if (v[p] == 0) continue;
    Integer q = floor_div(v[p], rows[k][p]);
    if (q == 0) continue;
    const Vector& r = rows[k];
    for (std::size_t c = p; c < v.size(); ++c)
      if (r[c] != 0) v[c] -= q * r[c];
    coeff[k] = std::move(q);
  }
  return coeff;
}

bool HermiteBasis::contains(Vector v) const {
  reduce(v);
  return is_zero(v);
}

HermiteBasis hermite(const std::vector<Vector>& generators, const Vector& moduli) {
  const std::size_t k = moduli.size();
  std::vector<Vector> pool;
  pool.reserve(generators.size() + k);
  for (const auto& g : generators) {
    if (g.size() != k) throw Error(ErrorKind::ShapeMismatch, "generator length does not match ambient rank");
    Vector r(k);
    for (std::size_t j = 0; j < k; ++j) r[j] = mod(g[j], moduli[j]);
    if (!is_zero(r)) pool.push_back(std::move(r));
  }

  HermiteBasis out;
  for (std::size_t j = 0; j < k; ++j) {
    if (moduli[j] != 0) {
      Vector r(k);
      r[j] = moduli[j];
      pool.push_back(std::move(r));
    }
    // Euclid on column j across the pool: keep reducing by the row with the
    // smallest nonzero entry until only one row has a nonzero entry there.
    for (;;) {
      std::size_t best = pool.size();
      std::size_t nonzero = 0;
      for (std::size_t i = 0; i < pool.size(); ++i) {
        if (pool[i][j] == 0) continue;
        ++nonzero;
        if (best == pool.size() || abs(pool[i][j]) < abs(pool[best][j])) best = i;
      }
      if (nonzero <= 1) break;
      const Vector piv = pool[best];
      for (std::size_t i = 0; i < pool.size(); ++i) {
        if (i == best || pool[i][j] == 0) continue;
        Integer q = pool[i][j] / piv[j];
        for (std::size_t c = j; c < k; ++c)
          if (piv[c] != 0) pool[i][c] -= q * piv[c];
      }
    }
    auto it = std::find_if(pool.begin(), pool.end(), [j](const Vector& r) { return r[j] != 0; });
    if (it != pool.end()) {
      Vector piv = std::move(*it);
      pool.erase(it);
      if (piv[j] < 0)
        for (auto& x : piv) x = -x;
      out.rows.push_back(std::move(piv));
      out.pivots.push_back(j);
    }
    // Keep the remaining rows small; every moduli[c] e_c lies in the lattice.
    for (auto& r : pool)
      for (std::size_t c = j + 1; c < k; ++c)
        if (moduli[c] != 0 && r[c] != 0) r[c] = mod(r[c], moduli[c]);
    for (std::size_t c = j + 1; c < k; ++c)
      if (moduli[c] != 0 && !out.rows.empty()) out.rows.back()[c] = mod(out.rows.back()[c], moduli[c]);
    pool.erase(std::remove_if(pool.begin(), pool.end(), [](const Vector& r) { return is_zero(r); }), pool.end());
  }

  // Back-reduce entries above each pivot into [0, pivot).
  for (std::size_t kk = 0; kk < out.rows.size(); ++kk) {
    const std::size_t p = out.pivots[kk];
    const Vector& piv = out.rows[kk];
    for (std::size_t i = 0; i < kk; ++i) {
      Integer q = floor_div(out.rows[i][p], piv[p]);
      if (q == 0) continue;
      for (std::size_t c = p; c < k; ++c)
        if (piv[c] != 0) out.rows[i][c] -= q * piv[c];
    }
  }
  return out;
}

namespace {

struct ColumnEchelon {
  Matrix e;
  Matrix v;
  std::vector<std::size_t> pivot_rows;  // pivot_rows[k] = pivot row of column k
};

ColumnEchelon column_echelon(const Matrix& a) {
  ColumnEchelon ce{a, Matrix::identity(a.cols()), {}};
  Matrix& e = ce.e;
  Matrix& v = ce.v;
  const std::size_t n = a.cols();
  std::size_t k = 0;
  for (std::size_t i = 0; i < a.rows() && k < n; ++i) {
    for (;;) {
      std::size_t best = n;
      for (std::size_t c = k; c < n; ++c) {
        if (e(i, c) == 0) continue;
        if (best == n || abs(e(i, c)) < abs(e(i, best))) best = c;
      }
      if (best == n) break;
      e.swap_columns(k, best);
      v.swap_columns(k, best);
      bool done = true;
      for (std::size_t c = k + 1; c < n; ++c) {
        if (e(i, c) == 0) continue;
        Integer q = e(i, c) / e(i, k);
        e.add_column_multiple(c, k, -q);
        v.add_column_multiple(c, k, -q);
        if (e(i, c) != 0) done = false;
      }
      if (done) {
        ce.pivot_rows.push_back(i);
        ++k;
        break;
      }
    }
  }
  return ce;
}

}  // namespace

namespace {

std::optional<Vector> back_substitute(const ColumnEchelon& ce, const Vector& b) {
  const std::size_t rank = ce.pivot_rows.size();
  const std::size_t rows = ce.e.rows();
  if (b.size() != rows) throw Error(ErrorKind::ShapeMismatch, "right-hand side length mismatch");
  Vector r = b;
  Vector y(ce.e.cols());
  std::size_t cursor = 0;
  for (std::size_t idx = 0; idx < rank; ++idx) {
    const std::size_t i = ce.pivot_rows[idx];
    for (; cursor < i; ++cursor)
      if (r[cursor] != 0) return std::nullopt;
    const Integer& p = ce.e(i, idx);
    if (r[i] % p != 0) return std::nullopt;
    y[idx] = r[i] / p;
    if (y[idx] != 0)
      for (std::size_t row = i; row < rows; ++row)
        if (ce.e(row, idx) != 0) r[row] -= y[idx] * ce.e(row, idx);
    cursor = i + 1;
  }
  for (; cursor < rows; ++cursor)
    if (r[cursor] != 0) return std::nullopt;
  return ce.v * y;
}

std::vector<Vector> kernel_columns(const ColumnEchelon& ce) {
  std::vector<Vector> out;
  for (std::size_t c = ce.pivot_rows.size(); c < ce.e.cols(); ++c) out.push_back(ce.v.column(c));
  return out;
}

}  // namespace

std::optional<IntegerSolution> solve_integer(const Matrix& a, const Vector& b) {
  ColumnEchelon ce = column_echelon(a);
  auto x = back_substitute(ce, b);
  if (!x) return std::nullopt;
  return IntegerSolution{std::move(*x), kernel_columns(ce)};
}

MultiSolution solve_integer_many(const Matrix& a, const std::vector<Vector>& bs) {
  ColumnEchelon ce = column_echelon(a);
  MultiSolution out;
  for (const auto& b : bs) out.particular.push_back(back_substitute(ce, b));
  out.kernel = kernel_columns(ce);
  return out;
}

std::vector<Vector> integer_kernel(const Matrix& a) { return kernel_columns(column_echelon(a)); }

Vector canonical_representative(Vector x, const std::vector<Vector>& lattice, const Vector& moduli) {
  HermiteBasis h = hermite(lattice, moduli);
  for (std::size_t j = 0; j < x.size(); ++j) x[j] = mod(x[j], moduli[j]);
  h.reduce(x);
  return x;
}

}  // namespace ksplit
