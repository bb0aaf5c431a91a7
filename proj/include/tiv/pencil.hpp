#pragma once

// The m x n x 2 tensor of indeterminates, the coefficients of its pencil
// det(xX + yY), and the block-bidiagonal determinant generating the
// SL(m) x SL(n) invariants when m < n.

#include "tiv/linalg.hpp"
#include "tiv/polynomial.hpp"

#include <stdexcept>
#include <vector>

namespace tiv {

/// Rational values for T[i,j,k]; indices are 1-based.
class RationalTensor {
 public:
  RationalTensor(int m, int n);
  static RationalTensor from_slices(const RatMatrix& x, const RatMatrix& y);

  int m() const { return m_; }
  int n() const { return n_; }
  const Rational& at(int i, int j, int k) const;
  Rational& at(int i, int j, int k);

  /// k = 1 gives X, k = 2 gives Y.
  RatMatrix slice(int k) const;
  /// Values for the T-variables of a ring whose tensor_shape() is (m, n); other variables stay unset.
  Assignment assignment(const Ring& ring) const;

  friend bool operator==(const RationalTensor&, const RationalTensor&) = default;

 private:
  int m_;
  int n_;
  std::vector<Rational> values_;  // indexed like tensor_var_id
};

class IndeterminateTensor {
 public:
  /// Builds tensor_ring(m, n, extra).
  IndeterminateTensor(int m, int n, std::vector<Variable> extra = {});
  /// Uses an existing ring whose tensor_shape() is set.
  explicit IndeterminateTensor(RingPtr ring);

  int m() const { return m_; }
  int n() const { return n_; }
  const RingPtr& ring() const { return ring_; }

  VarId id(int i, int j, int k) const { return tensor_var_id(m_, n_, i, j, k); }
  Polynomial var(int i, int j, int k) const { return Polynomial::variable(ring_, id(i, j, k)); }
  /// X = (T[i,j,1]) for k = 1, Y = (T[i,j,2]) for k = 2.
  SymMatrix slice(int k) const;

 private:
  int m_;
  int n_;
  RingPtr ring_;
};

/// coeffs[k] is f_{k,n-k}, the coefficient of x^k y^(n-k) in det(xX + yY).
struct PencilInvariants {
  int n = 0;
  std::vector<Polynomial> coeffs;

  const Polynomial& f(int k) const { return coeffs.at(static_cast<std::size_t>(k)); }
  friend bool operator==(const PencilInvariants&, const PencilInvariants&) = default;
};

/// f_{k,n-k} as the sum over k-subsets S of columns of det(columns of X on S, of Y elsewhere).
PencilInvariants pencil_coefficients_subset(const IndeterminateTensor& t);
/// f_{k,n-k} recovered from det(cX + Y), c = 0..n, through the inverse Vandermonde matrix.
PencilInvariants pencil_coefficients_interp(const IndeterminateTensor& t);
/// Cached pencil_coefficients_subset over tensor_ring(n, n).
const PencilInvariants& pencil_invariants(int n);

/// Values f_{k,n-k}(t) for a square rational tensor, via det(cX + Y) at c = 0..n.
std::vector<Rational> pencil_values(const RationalTensor& t);

/// Where (m, n) sits in the classification of SL(m) x SL(n) invariant rings.
enum class FormatKind {
  Square,            ///< m = n: polynomial ring on the pencil coefficients
  BlockDeterminant,  ///< m < n = m + gcd(m, n): generated by the block determinant
  NoGenerator,       ///< m < n <= 2m, n != m + gcd(m, n): invariant ring is K
  TooWide,           ///< n > 2m: invariant ring is K
};

/// Throws std::invalid_argument for non-positive sizes or m > n.
FormatKind classify_format(int m, int n);

class FormatError : public std::invalid_argument {
 public:
  FormatError(FormatKind kind, const std::string& what) : std::invalid_argument(what), kind_(kind) {}
  FormatKind kind() const { return kind_; }

 private:
  FormatKind kind_;
};

/// The (mn/d) x (mn/d) matrix with n/d row blocks of height m and m/d column
/// blocks of width n: block (r, c) is X when r = c, Y when r = c + 1, zero otherwise.
/// Throws FormatError unless classify_format(m, n) is BlockDeterminant.
SymMatrix block_matrix(const IndeterminateTensor& t);
SymMatrix block_matrix(int m, int n);
/// det_symbolic(block_matrix(m, n)) over tensor_ring(m, n).
Polynomial block_det(int m, int n);
/// The product formula for lm(block_det): with d = gcd, s = m/d and blocks t = 1..s,
/// (T[(t-1)d+i, (t-1)d+i, 1])^(s-t+1) * (T[(t-1)d+i, td+i, 2])^t over i = 1..d.
Monomial expected_block_det_lm(int m, int n);

/// True iff supp(lm(f)) lies in {T[i,i,1]} u {T[i, n-m+i, 2]} under the ring's order.
/// Throws std::domain_error for f = 0.
bool leading_monomial_support_check(const Polynomial& f, int m, int n);

}  // namespace tiv
