#include "tiv/linalg.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>

namespace tiv {

// --------------------------------------------------------------- SymMatrix

SymMatrix::SymMatrix(RingPtr ring, std::size_t rows, std::size_t cols)
    : ring_(std::move(ring)), rows_(rows), cols_(cols), entries_(rows * cols, Polynomial(ring_)) {}

const Polynomial& SymMatrix::at(std::size_t i, std::size_t j) const {
  if (i >= rows_ || j >= cols_) throw std::out_of_range("matrix index out of range");
  return entries_[i * cols_ + j];
}

Polynomial& SymMatrix::at(std::size_t i, std::size_t j) {
  if (i >= rows_ || j >= cols_) throw std::out_of_range("matrix index out of range");
  return entries_[i * cols_ + j];
}

SymMatrix SymMatrix::submatrix(std::span<const std::size_t> row_set, std::span<const std::size_t> col_set) const {
  SymMatrix s(ring_, row_set.size(), col_set.size());
  for (std::size_t i = 0; i < row_set.size(); ++i) {
    for (std::size_t j = 0; j < col_set.size(); ++j) s.at(i, j) = at(row_set[i], col_set[j]);
  }
  return s;
}

SymMatrix to_symbolic(const RatMatrix& m, const RingPtr& ring) {
  SymMatrix s(ring, m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) s.at(i, j) = Polynomial(ring, m(i, j));
  }
  return s;
}

// --------------------------------------------------------------- RatMatrix

RatMatrix::RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {}

RatMatrix::RatMatrix(std::initializer_list<std::initializer_list<Rational>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  for (const auto& r : rows) {
    if (r.size() != cols_) throw std::invalid_argument("ragged matrix literal");
    entries_.insert(entries_.end(), r.begin(), r.end());
  }
}

RatMatrix RatMatrix::identity(std::size_t n) {
  RatMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

const Rational& RatMatrix::at(std::size_t i, std::size_t j) const {
  if (i >= rows_ || j >= cols_) throw std::out_of_range("matrix index out of range");
  return entries_[i * cols_ + j];
}

Rational& RatMatrix::at(std::size_t i, std::size_t j) {
  if (i >= rows_ || j >= cols_) throw std::out_of_range("matrix index out of range");
  return entries_[i * cols_ + j];
}

RatMatrix RatMatrix::transpose() const {
  RatMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  }
  return t;
}

RatMatrix RatMatrix::operator*(const RatMatrix& b) const {
  if (cols_ != b.rows_) throw std::invalid_argument("matrix product shape mismatch");
  RatMatrix c(rows_, b.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const auto& a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += a * b(k, j);
    }
  }
  return c;
}

RatMatrix RatMatrix::operator+(const RatMatrix& b) const {
  if (rows_ != b.rows_ || cols_ != b.cols_) throw std::invalid_argument("matrix sum shape mismatch");
  RatMatrix c = *this;
  for (std::size_t i = 0; i < entries_.size(); ++i) c.entries_[i] += b.entries_[i];
  return c;
}

RatMatrix RatMatrix::operator*(const Rational& s) const {
  RatMatrix c = *this;
  for (auto& e : c.entries_) e *= s;
  return c;
}

// ------------------------------------------------------------ determinants

namespace {

Polynomial laplace(const SymMatrix& m, std::vector<std::size_t>& rows, std::vector<std::size_t>& cols) {
  if (rows.size() == 1) return m.at(rows[0], cols[0]);
  Polynomial sum(m.ring());
  std::size_t top = rows.front();
  rows.erase(rows.begin());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    const auto& entry = m.at(top, cols[j]);
    if (entry.is_zero()) continue;
    std::size_t c = cols[j];
    cols.erase(cols.begin() + static_cast<std::ptrdiff_t>(j));
    Polynomial cofactor = entry * laplace(m, rows, cols);
    cols.insert(cols.begin() + static_cast<std::ptrdiff_t>(j), c);
    sum = (j % 2 == 0) ? sum + cofactor : sum - cofactor;
  }
  rows.insert(rows.begin(), top);
  return sum;
}

void check_index_set(std::span<const std::size_t> set, std::size_t bound, const char* what) {
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (set[i] >= bound) throw std::invalid_argument(std::string(what) + " index out of range");
    if (i && set[i] <= set[i - 1]) throw std::invalid_argument(std::string(what) + " indices must increase");
  }
}

}  // namespace

Polynomial minor(const SymMatrix& m, std::span<const std::size_t> row_set, std::span<const std::size_t> col_set) {
  if (row_set.size() != col_set.size()) throw std::invalid_argument("minor needs as many rows as columns");
  if (row_set.empty()) throw std::invalid_argument("minor of an empty selection");
  check_index_set(row_set, m.rows(), "row");
  check_index_set(col_set, m.cols(), "column");
  std::vector<std::size_t> rows(row_set.begin(), row_set.end());
  std::vector<std::size_t> cols(col_set.begin(), col_set.end());
  return laplace(m, rows, cols);
}

Polynomial laplace_det(const SymMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  if (m.rows() == 0) return Polynomial(m.ring(), Rational(1));
  std::vector<std::size_t> all(m.rows());
  std::iota(all.begin(), all.end(), 0);
  return minor(m, all, all);
}

Polynomial det_symbolic(const SymMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n > 63) throw std::invalid_argument("det_symbolic supports at most 63 columns");
  if (n == 0) return Polynomial(m.ring(), Rational(1));

  // layer[mask]: signed sum over injective maps rows 0..r-1 -> columns in mask
  std::map<std::uint64_t, Polynomial> layer;
  layer.emplace(0, Polynomial(m.ring(), Rational(1)));
  for (std::size_t r = 0; r < n; ++r) {
    std::map<std::uint64_t, PolyAccumulator> next;
    for (const auto& [mask, partial] : layer) {
      for (std::size_t c = 0; c < n; ++c) {
        const std::uint64_t bit = std::uint64_t{1} << c;
        if (mask & bit) continue;
        const auto& entry = m.at(r, c);
        if (entry.is_zero()) continue;
        // rows already placed in columns right of c each add one inversion
        int inversions = std::popcount(mask >> (c + 1));
        auto it = next.try_emplace(mask | bit, m.ring()).first;
        it->second.add_product(partial, entry, inversions % 2 ? -1 : 1);
      }
    }
    layer.clear();
    for (auto& [mask, acc] : next) {
      Polynomial p = std::move(acc).finish();
      if (!p.is_zero()) layer.emplace(mask, std::move(p));
    }
    if (layer.empty()) return Polynomial(m.ring());
  }
  return layer.begin()->second;
}

Rational det_rational(const RatMatrix& m) {
  if (!m.is_square()) throw std::invalid_argument("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  std::vector<Integer> a(n * n);
  Rational scale = 1;
  for (std::size_t i = 0; i < n; ++i) {
    Integer l = 1;
    for (std::size_t j = 0; j < n; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den_mpz_t());
    for (std::size_t j = 0; j < n; ++j) a[i * n + j] = m(i, j).get_num() * (l / m(i, j).get_den());
    scale *= l;
  }

  int sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k * n + k] == 0) {
      std::size_t p = k + 1;
      while (p < n && a[p * n + k] == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a[k * n + j], a[p * n + j]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer v = a[i * n + j] * a[k * n + k] - a[i * n + k] * a[k * n + j];
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        a[i * n + j] = std::move(v);
      }
    }
    prev = a[k * n + k];
  }
  Rational det = n == 0 ? Rational(1) : Rational(a[n * n - 1]);
  return det * sign / scale;
}

// ------------------------------------------------------ sparse elimination

namespace {

// r -= factor * s
void sub_scaled(SparseRow& r, const Rational& factor, const SparseRow& s) {
  SparseRow out;
  out.reserve(r.size() + s.size());
  auto a = r.begin();
  auto b = s.begin();
  while (a != r.end() || b != s.end()) {
    if (b == s.end() || (a != r.end() && a->first < b->first)) {
      out.push_back(std::move(*a++));
    } else if (a == r.end() || b->first < a->first) {
      out.emplace_back(b->first, -factor * b->second);
      ++b;
    } else {
      Rational v = a->second - factor * b->second;
      if (v != 0) out.emplace_back(a->first, std::move(v));
      ++a;
      ++b;
    }
  }
  r = std::move(out);
}

const Rational* find_entry(const SparseRow& r, std::size_t col) {
  auto it = std::lower_bound(r.begin(), r.end(), col, [](const auto& e, std::size_t c) { return e.first < c; });
  return it != r.end() && it->first == col ? &it->second : nullptr;
}

// Reduced row echelon basis built one row at a time.
class Echelon {
 public:
  explicit Echelon(std::size_t cols) : cols_(cols), pivot_of_col_(cols, SIZE_MAX) {}

  void insert(SparseRow row) {
    // clear pivot columns; pivot rows carry no other pivot column
    SparseRow reduced = row;
    for (const auto& [c, v] : row) {
      if (pivot_of_col_[c] == SIZE_MAX) continue;
      if (const Rational* cur = find_entry(reduced, c)) {
        Rational f = *cur;
        sub_scaled(reduced, f, pivots_[pivot_of_col_[c]]);
      }
    }
    if (reduced.empty()) return;

    auto best = reduced.begin();
    for (auto it = reduced.begin(); it != reduced.end(); ++it) {
      if (height(it->second) < height(best->second)) best = it;
    }
    const std::size_t col = best->first;
    Rational inv = 1 / best->second;
    for (auto& e : reduced) e.second *= inv;

    for (auto& p : pivots_) {
      if (const Rational* v = find_entry(p, col)) {
        Rational f = *v;
        sub_scaled(p, f, reduced);
      }
    }
    pivot_of_col_[col] = pivots_.size();
    pivots_.push_back(std::move(reduced));
  }

  std::size_t rank() const { return pivots_.size(); }

  std::vector<std::vector<Rational>> kernel() const {
    std::vector<std::vector<Rational>> basis;
    for (std::size_t f = 0; f < cols_; ++f) {
      if (pivot_of_col_[f] != SIZE_MAX) continue;
      std::vector<Rational> v(cols_);
      v[f] = 1;
      for (std::size_t c = 0; c < cols_; ++c) {
        if (pivot_of_col_[c] == SIZE_MAX) continue;
        if (const Rational* e = find_entry(pivots_[pivot_of_col_[c]], f)) v[c] = -*e;
      }
      basis.push_back(std::move(v));
    }
    return basis;
  }

 private:
  std::size_t cols_;
  std::vector<SparseRow> pivots_;
  std::vector<std::size_t> pivot_of_col_;
};

std::vector<SparseRow> sparse_rows(const RatMatrix& m) {
  std::vector<SparseRow> rows(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m(i, j) != 0) rows[i].emplace_back(j, m(i, j));
    }
  }
  return rows;
}

}  // namespace

std::vector<std::vector<Rational>> kernel_basis(std::vector<SparseRow> rows, std::size_t cols) {
  Echelon e(cols);
  for (auto& r : rows) {
    for (const auto& [c, v] : r) {
      if (c >= cols) throw std::out_of_range("sparse row column out of range");
    }
    e.insert(std::move(r));
  }
  return e.kernel();
}

std::vector<std::vector<Rational>> kernel_basis(const RatMatrix& m) { return kernel_basis(sparse_rows(m), m.cols()); }

std::size_t rank(const RatMatrix& m) {
  Echelon e(m.cols());
  for (auto& r : sparse_rows(m)) e.insert(std::move(r));
  return e.rank();
}

RatMatrix inverse(const RatMatrix& m) {
  if (!m.is_square()) throw std::invalid_argument("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  RatMatrix a = m;
  RatMatrix inv = RatMatrix::identity(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a(p, k) == 0) ++p;
    if (p == n) throw std::domain_error("matrix is singular");
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(k, j), a(p, j));
        std::swap(inv(k, j), inv(p, j));
      }
    }
    Rational s = 1 / a(k, k);
    for (std::size_t j = 0; j < n; ++j) {
      a(k, j) *= s;
      inv(k, j) *= s;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || a(i, k) == 0) continue;
      Rational f = a(i, k);
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= f * a(k, j);
        inv(i, j) -= f * inv(k, j);
      }
    }
  }
  return inv;
}

}  // namespace tiv
