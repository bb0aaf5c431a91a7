#include "tiv/pencil.hpp"

#include <bit>
#include <map>
#include <mutex>
#include <numeric>

namespace tiv {

// ---------------------------------------------------------- RationalTensor

RationalTensor::RationalTensor(int m, int n) : m_(m), n_(n) {
  if (m < 1 || n < 1) throw std::invalid_argument("tensor dimensions must be positive");
  values_.resize(static_cast<std::size_t>(2 * m * n));
}

RationalTensor RationalTensor::from_slices(const RatMatrix& x, const RatMatrix& y) {
  if (x.rows() != y.rows() || x.cols() != y.cols()) throw std::invalid_argument("slices differ in shape");
  RationalTensor t(static_cast<int>(x.rows()), static_cast<int>(x.cols()));
  for (int i = 1; i <= t.m_; ++i) {
    for (int j = 1; j <= t.n_; ++j) {
      t.at(i, j, 1) = x(i - 1, j - 1);
      t.at(i, j, 2) = y(i - 1, j - 1);
    }
  }
  return t;
}

const Rational& RationalTensor::at(int i, int j, int k) const { return values_[tensor_var_id(m_, n_, i, j, k)]; }

Rational& RationalTensor::at(int i, int j, int k) { return values_[tensor_var_id(m_, n_, i, j, k)]; }

RatMatrix RationalTensor::slice(int k) const {
  RatMatrix s(static_cast<std::size_t>(m_), static_cast<std::size_t>(n_));
  for (int i = 1; i <= m_; ++i) {
    for (int j = 1; j <= n_; ++j) s(i - 1, j - 1) = at(i, j, k);
  }
  return s;
}

Assignment RationalTensor::assignment(const Ring& ring) const {
  if (ring.tensor_shape() != std::pair{m_, n_}) throw std::invalid_argument("ring is not over a tensor of this shape");
  Assignment a(ring.size());
  for (std::size_t v = 0; v < values_.size(); ++v) a[v] = values_[v];
  return a;
}

// ----------------------------------------------------- IndeterminateTensor

IndeterminateTensor::IndeterminateTensor(int m, int n, std::vector<Variable> extra)
    : m_(m), n_(n), ring_(tensor_ring(m, n, std::move(extra))) {}

IndeterminateTensor::IndeterminateTensor(RingPtr ring) : ring_(std::move(ring)) {
  auto shape = ring_->tensor_shape();
  if (!shape) throw std::invalid_argument("ring has no tensor shape");
  m_ = shape->first;
  n_ = shape->second;
}

SymMatrix IndeterminateTensor::slice(int k) const {
  SymMatrix s(ring_, static_cast<std::size_t>(m_), static_cast<std::size_t>(n_));
  for (int i = 1; i <= m_; ++i) {
    for (int j = 1; j <= n_; ++j) s.at(i - 1, j - 1) = var(i, j, k);
  }
  return s;
}

// ------------------------------------------------------- pencil coefficients

namespace {

void require_square(const IndeterminateTensor& t) {
  if (t.m() != t.n()) throw std::invalid_argument("pencil coefficients need m = n");
}

const RatMatrix& inverse_vandermonde(int n) {
  static std::mutex mutex;
  static std::map<int, RatMatrix> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) {
    RatMatrix v(static_cast<std::size_t>(n + 1), static_cast<std::size_t>(n + 1));
    for (int c = 0; c <= n; ++c) {
      for (int k = 0; k <= n; ++k) v(c, k) = pow(Rational(c), static_cast<unsigned>(k));
    }
    it = cache.emplace(n, inverse(v)).first;
  }
  return it->second;
}

}  // namespace

PencilInvariants pencil_coefficients_subset(const IndeterminateTensor& t) {
  require_square(t);
  const int n = t.n();
  if (n > 30) throw std::invalid_argument("pencil size too large");
  PencilInvariants out{n, {}};
  for (int k = 0; k <= n; ++k) {
    PolyAccumulator sum(t.ring());
    for (std::uint32_t subset = 0; subset < (1U << n); ++subset) {
      if (std::popcount(subset) != k) continue;
      SymMatrix z(t.ring(), static_cast<std::size_t>(n), static_cast<std::size_t>(n));
      for (int j = 1; j <= n; ++j) {
        int slice = (subset >> (j - 1)) & 1U ? 1 : 2;
        for (int i = 1; i <= n; ++i) z.at(i - 1, j - 1) = t.var(i, j, slice);
      }
      sum.add(det_symbolic(z));
    }
    out.coeffs.push_back(std::move(sum).finish());
  }
  return out;
}

PencilInvariants pencil_coefficients_interp(const IndeterminateTensor& t) {
  require_square(t);
  const int n = t.n();
  std::vector<Polynomial> values;
  for (int c = 0; c <= n; ++c) {
    SymMatrix pencil(t.ring(), static_cast<std::size_t>(n), static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) {
      for (int j = 1; j <= n; ++j) pencil.at(i - 1, j - 1) = t.var(i, j, 1) * Rational(c) + t.var(i, j, 2);
    }
    values.push_back(det_symbolic(pencil));
  }
  const auto& vinv = inverse_vandermonde(n);
  PencilInvariants out{n, {}};
  for (int k = 0; k <= n; ++k) {
    PolyAccumulator f(t.ring());
    for (int c = 0; c <= n; ++c) f.add(values[static_cast<std::size_t>(c)], vinv(k, c));
    out.coeffs.push_back(std::move(f).finish());
  }
  return out;
}

const PencilInvariants& pencil_invariants(int n) {
  static std::mutex mutex;
  static std::map<int, PencilInvariants> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, pencil_coefficients_subset(IndeterminateTensor(n, n))).first;
  return it->second;
}

std::vector<Rational> pencil_values(const RationalTensor& t) {
  if (t.m() != t.n()) throw std::invalid_argument("pencil coefficients need m = n");
  const int n = t.n();
  const RatMatrix x = t.slice(1);
  const RatMatrix y = t.slice(2);
  std::vector<Rational> dets;
  for (int c = 0; c <= n; ++c) dets.push_back(det_rational(x * Rational(c) + y));
  const auto& vinv = inverse_vandermonde(n);
  std::vector<Rational> f(static_cast<std::size_t>(n + 1));
  for (int k = 0; k <= n; ++k) {
    for (int c = 0; c <= n; ++c) f[k] += vinv(k, c) * dets[c];
  }
  return f;
}

// -------------------------------------------------------- block determinant

FormatKind classify_format(int m, int n) {
  if (m < 1 || n < 1) throw std::invalid_argument("tensor dimensions must be positive");
  if (m > n) throw std::invalid_argument("format needs m <= n (swap the first two factors)");
  if (m == n) return FormatKind::Square;
  if (n > 2 * m) return FormatKind::TooWide;
  if (n != m + std::gcd(m, n)) return FormatKind::NoGenerator;
  return FormatKind::BlockDeterminant;
}

namespace {

void require_block_format(int m, int n) {
  switch (classify_format(m, n)) {
    case FormatKind::BlockDeterminant:
      return;
    case FormatKind::Square:
      throw FormatError(FormatKind::Square, "block determinant needs m < n");
    case FormatKind::NoGenerator:
      throw FormatError(FormatKind::NoGenerator, "no nontrivial invariant exists in this format");
    case FormatKind::TooWide:
      throw FormatError(FormatKind::TooWide, "invariant ring is K");
  }
}

}  // namespace

SymMatrix block_matrix(const IndeterminateTensor& t) {
  const int m = t.m();
  const int n = t.n();
  require_block_format(m, n);
  const int d = std::gcd(m, n);
  const int row_blocks = n / d;
  const int col_blocks = m / d;
  const auto size = static_cast<std::size_t>(m * n / d);
  SymMatrix a(t.ring(), size, size);
  for (int r = 0; r < row_blocks; ++r) {
    for (int c = 0; c < col_blocks; ++c) {
      int slice = r == c ? 1 : (r == c + 1 ? 2 : 0);
      if (!slice) continue;
      for (int i = 1; i <= m; ++i) {
        for (int j = 1; j <= n; ++j) {
          a.at(static_cast<std::size_t>(r * m + i - 1), static_cast<std::size_t>(c * n + j - 1)) = t.var(i, j, slice);
        }
      }
    }
  }
  return a;
}

SymMatrix block_matrix(int m, int n) {
  require_block_format(m, n);
  return block_matrix(IndeterminateTensor(m, n));
}

Polynomial block_det(int m, int n) { return det_symbolic(block_matrix(m, n)); }

Monomial expected_block_det_lm(int m, int n) {
  require_block_format(m, n);
  const int d = std::gcd(m, n);
  const int s = m / d;
  std::vector<Monomial::Entry> entries;
  for (int t = 1; t <= s; ++t) {
    for (int i = 1; i <= d; ++i) {
      int row = (t - 1) * d + i;
      entries.emplace_back(tensor_var_id(m, n, row, row, 1), s - t + 1);
      entries.emplace_back(tensor_var_id(m, n, row, t * d + i, 2), t);
    }
  }
  return Monomial(std::move(entries));
}

bool leading_monomial_support_check(const Polynomial& f, int m, int n) {
  const auto& ring = *f.ring();
  if (ring.tensor_shape() != std::pair{m, n}) throw std::invalid_argument("polynomial is not over an m x n x 2 tensor");
  const Monomial lm = leading_monomial(f);
  for (const auto& [v, e] : lm.entries()) {
    const Variable& var = ring.variable(v);
    if (var.symbol != "T" || var.index.size() != 3) return false;
    const int i = var.index[0];
    const int j = var.index[1];
    const int k = var.index[2];
    bool diagonal = k == 1 && i == j;
    bool shifted = k == 2 && j == n - m + i;
    if (!diagonal && !shifted) return false;
  }
  return true;
}

}  // namespace tiv
