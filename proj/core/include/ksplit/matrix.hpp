#pragma once

#include "ksplit/integer.hpp"

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace ksplit {

/// Dense row-major integer matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);
  Matrix(std::initializer_list<std::initializer_list<long long>> rows);

  static Matrix identity(std::size_t n);
  static Matrix zero(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }
  static Matrix from_rows(const std::vector<Vector>& rows, std::size_t cols);
  static Matrix from_columns(const std::vector<Vector>& cols, std::size_t rows);
  static Matrix diagonal(const Vector& entries);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Vector row(std::size_t r) const;
  Vector column(std::size_t c) const;
  void set_column(std::size_t c, const Vector& v);
  void set_row(std::size_t r, const Vector& v);

  Matrix transpose() const;
  Matrix select_rows(const std::vector<std::size_t>& idx) const;
  Matrix select_columns(const std::vector<std::size_t>& idx) const;

  bool is_zero() const;
  bool is_diagonal() const;

  // Elementary operations (used by the normal form routines).
  void swap_rows(std::size_t a, std::size_t b);
  void swap_columns(std::size_t a, std::size_t b);
  /// row[dst] += k * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const Integer& k);
  /// col[dst] += k * col[src]
  void add_column_multiple(std::size_t dst, std::size_t src, const Integer& k);
  void negate_row(std::size_t r);

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Vector operator*(const Matrix& a, const Vector& v);
  friend Matrix operator+(const Matrix& a, const Matrix& b);
  friend Matrix operator-(const Matrix& a, const Matrix& b);
  friend Matrix operator*(const Integer& k, const Matrix& a);
  friend bool operator==(const Matrix& a, const Matrix& b) = default;

  /// [a | b]
  static Matrix hstack(const Matrix& a, const Matrix& b);
  /// [a ; b]
  static Matrix vstack(const Matrix& a, const Matrix& b);

  std::vector<Vector> row_list() const;
  std::vector<Vector> column_list() const;

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

/// Exact determinant by fraction-free elimination; square matrices only.
Integer determinant(const Matrix& m);

}  // namespace ksplit
