#pragma once

#include "ksplit/matrix.hpp"

#include <optional>
#include <vector>

namespace ksplit {

/// U * M * V = D with U, V unimodular and D diagonal, d1 | d2 | ..., d_i >= 0.
/// The inverses of U and V are carried along because presentations need
/// both directions of the coordinate change.
struct SmithForm {
  Matrix U;
  Matrix D;
  Matrix V;
  Matrix U_inv;
  Matrix V_inv;

  /// Diagonal entries d_0 .. d_{min(rows, cols) - 1}.
  Vector diagonal() const;
};

/// Smith normal form. Pivot: smallest absolute nonzero entry of the active
/// block, ties broken by lowest (row, column).
SmithForm snf(const Matrix& m);

/// Row-style Hermite basis of the lattice spanned by `generators` together
/// with moduli[j] * e_j for every j with moduli[j] != 0.
///
/// Rows are in echelon order with strictly increasing pivot columns, positive
/// pivots, and every entry above a pivot reduced into [0, pivot). The basis is
/// unique for the lattice, which is what makes it usable as a canonical form.
struct HermiteBasis {
  std::vector<Vector> rows;
  std::vector<std::size_t> pivots;  // pivots[k] = pivot column of rows[k]

  /// Reduces v against the basis. Returns the coefficients used, so that
  /// v_original = sum(coeff[k] * rows[k]) + v_reduced. v is reduced in place.
  std::vector<Integer> reduce(Vector& v) const;
  bool contains(Vector v) const;
};

HermiteBasis hermite(const std::vector<Vector>& generators, const Vector& moduli);

/// Integer solutions of A x = b.
struct IntegerSolution {
  Vector particular;
  /// Columns generate the integer kernel of A.
  std::vector<Vector> kernel;
};

std::optional<IntegerSolution> solve_integer(const Matrix& a, const Vector& b);

/// Same system, several right-hand sides; the kernel is shared.
struct MultiSolution {
  std::vector<std::optional<Vector>> particular;
  std::vector<Vector> kernel;
};
MultiSolution solve_integer_many(const Matrix& a, const std::vector<Vector>& bs);

/// Basis of {x in Z^n : A x = 0}.
std::vector<Vector> integer_kernel(const Matrix& a);

/// Canonical representative of x + L, where L is spanned by `lattice`
/// together with moduli[j] e_j. With all moduli positive this is the
/// lexicographically smallest representative with entries in [0, moduli).
Vector canonical_representative(Vector x, const std::vector<Vector>& lattice, const Vector& moduli);

}  // namespace ksplit
