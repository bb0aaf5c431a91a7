#pragma once

// SL(m) x SL(n) x SL(2) acting on m x n x 2 tensors and on polynomials in
// their entries.
//
// On values, g = (P, Q, R) with R = [[a, b], [c, d]] sends the slices (X, Y) to
//   X' = a P^T X Q + c P^T Y Q,   Y' = b P^T X Q + d P^T Y Q.
// This is a right action: act(g * h, t) == act(h, act(g, t)) where
// g * h = (Pg Ph, Qg Qh, Rg Rh).
// On polynomials, g acts by substituting each T[i,j,k] with the matching
// entry of (X', Y') written in the T-variables, so that
//   evaluate(act(g, p), t) == evaluate(p, act(g, t)).

#include "tiv/linalg.hpp"
#include "tiv/pencil.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace tiv {

struct GroupElement {
  RatMatrix p;  // m x m
  RatMatrix q;  // n x n
  RatMatrix r;  // 2 x 2

  /// Throws std::invalid_argument unless every factor is square with determinant 1 and r is 2 x 2.
  GroupElement(RatMatrix p, RatMatrix q, RatMatrix r);
  static GroupElement identity(int m, int n);

  int m() const { return static_cast<int>(p.rows()); }
  int n() const { return static_cast<int>(q.rows()); }
  GroupElement inverse() const;

  friend GroupElement operator*(const GroupElement& g, const GroupElement& h);
  friend bool operator==(const GroupElement&, const GroupElement&) = default;
};

enum class GroupKind {
  SlSl,    ///< SL(m) x SL(n); the SL(2) factor is the identity
  SlSlSl,  ///< SL(m) x SL(n) x SL(2)
};

/// Product of 2*size elementary shears with off-diagonal entries p/q,
/// p in [-3, 3], q in {1, 2}. Deterministic per seed (mt19937_64).
RatMatrix random_sl(std::size_t size, std::uint64_t seed);
GroupElement random_group_element(int m, int n, GroupKind kind, std::uint64_t seed);
/// Entries p/q with p in [-3, 3], q in {1, 2}.
RationalTensor random_tensor(int m, int n, std::uint64_t seed);

RationalTensor act_on_tensor(const GroupElement& g, const RationalTensor& t);
/// Acts on the T-variables; any extra ring variables are fixed.
Polynomial act_on_polynomial(const GroupElement& g, const Polynomial& p);

struct Counterexample {
  std::size_t sample;
  GroupElement element;
  RationalTensor tensor;
  Rational before;  // value at t
  Rational after;   // value at g . t
};

struct InvarianceReport {
  bool passed = true;
  std::size_t samples = 0;
  std::optional<Counterexample> counterexample;
};

using TensorFunction = std::function<Rational(const RationalTensor&)>;

/// For each sample draws (g, t) from a per-sample seed and compares f(g . t) with f(t).
/// Stops at the first mismatch.
InvarianceReport check_invariance(const TensorFunction& f, int m, int n, GroupKind kind, std::size_t samples,
                                  std::uint64_t seed);
/// p must live in a tensor ring; its shape fixes (m, n).
InvarianceReport check_invariance(const Polynomial& p, GroupKind kind, std::size_t samples, std::uint64_t seed);

/// Which Lie algebra factors act on the graded piece.
struct LieParts {
  bool sl_m = true;
  bool sl_n = true;
  bool sl_2 = false;
};

class SizeGuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kLieBasisLimit = 50'000;

/// Basis of the degree-d polynomials in tensor_ring(m, n) annihilated by the
/// derivations of the selected algebras (characteristic 0). Throws
/// SizeGuardError when C(2mn + d - 1, d) exceeds kLieBasisLimit.
std::vector<Polynomial> lie_invariant_space(int m, int n, int degree, LieParts parts);

}  // namespace tiv
