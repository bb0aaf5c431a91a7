#pragma once

// The invariant ring K[f_{0,n}, ..., f_{n,0}] of SL(n) x SL(n) on n x n x 2
// tensors: SAGBI subduction against the pencil coefficients, the U-variable
// abstraction (U_k stands for f_{k,n-k}), the correspondence with invariants
// of binary forms, and hyperdeterminants of format (n-1, n-1, 1).

#include "tiv/pencil.hpp"
#include "tiv/polynomial.hpp"

#include <span>
#include <vector>

namespace tiv {

/// U_0..U_n, degree-revlex with U_n > ... > U_0 (cached per n).
RingPtr u_ring(int n);
/// xi_0..xi_n for the binary form sum_k C(n,k) xi_k x^k y^(n-k) (cached per n).
RingPtr xi_ring(int n);

/// u(f_{0,n}, ..., f_{n,0}) expanded over the ring of `f`. Subject to TIV_MAX_TERMS.
Polynomial substitute_pencil(const Polynomial& u, const PencilInvariants& f);
/// u evaluated at the pencil coefficients of a square rational tensor.
Rational evaluate_u_form(const Polynomial& u, const RationalTensor& t);

struct SubductionResult {
  Polynomial u_form;     ///< over u_ring(n)
  Polynomial remainder;  ///< zero iff p lies in K[f_{0,n}, ..., f_{n,0}]
  std::size_t steps = 0;
};

/// Subduction of p (over tensor_ring(n, n)) by the pencil coefficients.
/// Each step reads the exponents e_k of T[k,k,1] and c_0 of T[1,1,2] off lm(p),
/// sets c_n = e_n, c_k = e_k - e_{k+1}, and subtracts the matching multiple of
/// prod f_{k,n-k}^{c_k} when its leading monomial equals lm(p). Stops with a
/// nonzero remainder at the first leading monomial that does not factor.
SubductionResult subduct(const Polynomial& p, int n);

/// U_k -> C(n,k) xi_k.
Polynomial bridge_to_xi(const Polynomial& u, int n);
/// xi_k -> U_k / C(n,k).
Polynomial bridge_from_xi(const Polynomial& xi, int n);

/// Scales p to coprime integer coefficients with positive leading coefficient
/// under the ring's order. Zero stays zero.
Polynomial integer_normalize(const Polynomial& p);

/// Generators of the SL(2)-invariants of binary forms of degree n in xi-form (n = 2, 3, 4).
std::vector<Polynomial> binary_form_invariants(int n);
/// The same generators moved to U-form through bridge_from_xi and integer_normalize.
/// Throws std::invalid_argument("not tabulated") for other n.
std::vector<Polynomial> classical_invariants(int n);

/// Hyperdeterminant of format l_1, ..., l_d exists iff every l_k <= sum of the others.
bool hyperdet_exists(std::span<const int> format);
bool hyperdet_exists(int l1, int l2, int l3);

/// For every monomial g of p and every (j1, j2, j3) in [m] x [n] x [2], some index
/// triple of a variable of g differs from (j1, j2, j3) in at most one place.
bool support_divisibility_check(const Polynomial& p, int m, int n);

/// Hyperdeterminant of format (n-1, n-1, 1) in U-form, up to a scalar, n = 2, 3, 4:
/// the discriminant invariant of degree 2(n-1) in the U_k.
Polynomial hyperdet_nn1(int n);
/// T-degree of u(f_{0,n}, ..., f_{n,0}) for homogeneous u; throws if u is not homogeneous.
long substituted_degree(const Polynomial& u, int n);

/// The expanded 2 x 2 x 2 hyperdeterminant over tensor_ring(2, 2), a_{ijk} = T[i+1,j+1,k+1].
Polynomial cayley_hyperdeterminant();

struct DegeneracyVerdict {
  bool degenerate = false;
  bool identically_zero = false;  ///< det(xX + yY) vanishes identically
};

/// Whether det(xX + yY) has a repeated projective root, by exact univariate gcd
/// with the form's derivative plus the root-at-infinity multiplicity.
DegeneracyVerdict pencil_degenerate(const RationalTensor& t);

/// Dense univariate polynomial, coefficient of x^k at position k, no trailing zeros.
using UniPoly = std::vector<Rational>;
UniPoly uni_gcd(UniPoly a, UniPoly b);
UniPoly uni_derivative(const UniPoly& p);

}  // namespace tiv
