#pragma once

// Matrices over the polynomial ring and over Q.

#include "tiv/polynomial.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace tiv {

class SymMatrix {
 public:
  /// rows x cols zero matrix.
  SymMatrix(RingPtr ring, std::size_t rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const RingPtr& ring() const { return ring_; }

  const Polynomial& at(std::size_t i, std::size_t j) const;
  Polynomial& at(std::size_t i, std::size_t j);

  SymMatrix submatrix(std::span<const std::size_t> row_set, std::span<const std::size_t> col_set) const;

 private:
  RingPtr ring_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Polynomial> entries_;
};

class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols);
  RatMatrix(std::initializer_list<std::initializer_list<Rational>> rows);
  static RatMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  const Rational& at(std::size_t i, std::size_t j) const;
  Rational& at(std::size_t i, std::size_t j);
  const Rational& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
  Rational& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }

  RatMatrix transpose() const;
  RatMatrix operator*(const RatMatrix& b) const;
  RatMatrix operator+(const RatMatrix& b) const;
  RatMatrix operator*(const Rational& c) const;

  friend bool operator==(const RatMatrix&, const RatMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> entries_;
};

/// Constant embedding of a rational matrix into `ring`.
SymMatrix to_symbolic(const RatMatrix& m, const RingPtr& ring);

/// Determinant of the square submatrix on `row_set` x `col_set` (0-based), by
/// cofactor expansion along its first row.  Throws std::invalid_argument for a
/// non-square, empty, unsorted or out-of-range selection.
Polynomial minor(const SymMatrix& m, std::span<const std::size_t> row_set, std::span<const std::size_t> col_set);
/// minor over all rows and columns.
Polynomial laplace_det(const SymMatrix& m);

/// Determinant by dynamic programming over column subsets: rows are consumed top
/// to bottom and partial expansions sharing the same set of used columns are
/// merged, so zero blocks and repeated sub-minors cost nothing extra.
Polynomial det_symbolic(const SymMatrix& m);

/// Fraction-free (Bareiss) elimination after clearing denominators row by row.
Rational det_rational(const RatMatrix& m);

/// Basis of the right null space, each vector with a 1 in its free column.
std::vector<std::vector<Rational>> kernel_basis(const RatMatrix& m);
std::size_t rank(const RatMatrix& m);
/// Throws std::domain_error if singular.
RatMatrix inverse(const RatMatrix& m);

/// Sparse row: (column, value) pairs sorted by column, no zero values.
using SparseRow = std::vector<std::pair<std::size_t, Rational>>;

/// Null space of the matrix whose rows are `rows` over `cols` columns.
/// Exact Gauss-Jordan; pivot rows are chosen by smallest coefficient height.
std::vector<std::vector<Rational>> kernel_basis(std::vector<SparseRow> rows, std::size_t cols);

}  // namespace tiv
