#include <doctest.h>

#include "tiv/group_action.hpp"
#include "tiv/invariant_ring.hpp"

#include <random>

using namespace tiv;

namespace {

Polynomial u(const std::string& text, int n) { return parse_polynomial(text, u_ring(n)); }

RationalTensor diagonal_pencil(const std::vector<int>& x, const std::vector<int>& y) {
  const int n = static_cast<int>(x.size());
  RationalTensor t(n, n);
  for (int i = 0; i < n; ++i) {
    t.at(i + 1, i + 1, 1) = x[static_cast<std::size_t>(i)];
    t.at(i + 1, i + 1, 2) = y[static_cast<std::size_t>(i)];
  }
  return t;
}

}  // namespace

TEST_CASE("subduction of small invariants") {
  auto ring = tensor_ring(2, 2);
  auto det_x = subduct(parse_polynomial("T[1,1,1]*T[2,2,1] - T[2,1,1]*T[1,2,1]", ring), 2);
  CHECK(to_string(det_x.u_form) == "U2");
  CHECK(det_x.remainder.is_zero());

  const auto& f = pencil_invariants(2);
  auto disc = subduct(f.f(1) * f.f(1) - f.f(0) * f.f(2) * Rational(4), 2);
  CHECK(to_string(disc.u_form) == "U1^2 - 4*U0*U2");
  CHECK(disc.remainder.is_zero());

  auto fails = subduct(parse_polynomial("T[1,1,1]", ring), 2);
  CHECK_FALSE(fails.remainder.is_zero());

  auto constant = subduct(parse_polynomial("7/2", ring), 2);
  CHECK(constant.u_form == u("7/2", 2));
  CHECK(constant.remainder.is_zero());
}

TEST_CASE("subduction inverts substitution") {
  for (int n = 2; n <= 3; ++n) {
    Polynomial g = u("U0*U1 - 3*U2^2 + 1/2*U" + std::to_string(n) + "^2*U0", n);
    auto result = subduct(substitute_pencil(g, pencil_invariants(n)), n);
    CHECK(result.remainder.is_zero());
    CHECK(result.u_form == g);
  }
}

TEST_CASE("U-form evaluation agrees with substitution") {
  Polynomial g = u("U1^2 - 4*U0*U2 + U1", 2);
  Polynomial p = substitute_pencil(g, pencil_invariants(2));
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    RationalTensor t = random_tensor(2, 2, seed);
    CHECK(evaluate_u_form(g, t) == evaluate(p, t.assignment(*p.ring())));
  }
}

TEST_CASE("bridge between U and xi") {
  Polynomial g = u("U1^2 - 4*U0*U2", 2);
  Polynomial xi = bridge_to_xi(g, 2);
  CHECK(xi == parse_polynomial("4*xi1^2 - 4*xi0*xi2", xi_ring(2)));
  CHECK(bridge_from_xi(xi, 2) == g);
  CHECK(integer_normalize(u("-1/2*U1^2 + 2*U0*U2", 2)) == g);
  CHECK(integer_normalize(Polynomial(u_ring(2))).is_zero());
}

TEST_CASE("tabulated classical invariants") {
  CHECK(to_string(classical_invariants(2).at(0)) == "U1^2 - 4*U0*U2");
  CHECK(classical_invariants(3).at(0) ==
        u("U1^2*U2^2 - 4*U0*U2^3 - 4*U1^3*U3 + 18*U0*U1*U2*U3 - 27*U0^2*U3^2", 3));
  auto quartic = classical_invariants(4);
  REQUIRE(quartic.size() == 2);
  CHECK(quartic[0] == u("U2^2 - 3*U1*U3 + 12*U0*U4", 4));
  CHECK(quartic[1] == u("2*U2^3 + 27*U0*U3^2 + 27*U1^2*U4 - 9*U1*U2*U3 - 72*U0*U2*U4", 4));
  CHECK_THROWS_WITH_AS(classical_invariants(5), doctest::Contains("not tabulated"), std::invalid_argument);

  // oracle: the cubic discriminant written in xi, moved through the bridge
  Polynomial xi = parse_polynomial("3*xi1^2*xi2^2 - 4*xi0*xi2^3 - 4*xi1^3*xi3 + 6*xi0*xi1*xi2*xi3 - xi0^2*xi3^2",
                                   xi_ring(3));
  CHECK(integer_normalize(bridge_from_xi(xi, 3)) == classical_invariants(3).at(0));
}

TEST_CASE("classical invariants are invariant") {
  for (int n = 2; n <= 4; ++n) {
    for (const auto& g : classical_invariants(n)) {
      auto report = check_invariance([&](const RationalTensor& t) { return evaluate_u_form(g, t); }, n, n,
                                     GroupKind::SlSlSl, 10, 3);
      CHECK(report.passed);
    }
  }
}

TEST_CASE("hyperdeterminant existence") {
  CHECK(hyperdet_exists(1, 1, 1));
  CHECK_FALSE(hyperdet_exists(1, 1, 3));
  for (int n = 2; n <= 6; ++n) CHECK(hyperdet_exists(n - 1, n - 1, 1));
  std::vector<int> four{1, 1, 1, 4};
  CHECK_FALSE(hyperdet_exists(four));
  std::vector<int> ok{2, 2, 2, 4};
  CHECK(hyperdet_exists(ok));
}

TEST_CASE("support divisibility") {
  CHECK(support_divisibility_check(cayley_hyperdeterminant(), 2, 2));
  const auto& f = pencil_invariants(2);
  CHECK_FALSE(support_divisibility_check(f.f(2) * f.f(2), 2, 2));
  CHECK_FALSE(support_divisibility_check(parse_polynomial("T[1,1,1]^3", tensor_ring(2, 2)), 2, 2));
}

TEST_CASE("hyperdeterminants of format (n-1, n-1, 1)") {
  CHECK(hyperdet_nn1(2) == u("U1^2 - 4*U0*U2", 2));
  CHECK(hyperdet_nn1(3) == classical_invariants(3).at(0));
  for (int n = 2; n <= 4; ++n) CHECK(substituted_degree(hyperdet_nn1(n), n) == 2 * n * (n - 1));
  CHECK_THROWS_AS(hyperdet_nn1(5), std::invalid_argument);
  CHECK_THROWS(substituted_degree(u("U0 + U1^2", 2), 2));

  Polynomial cayley = substitute_pencil(hyperdet_nn1(2), pencil_invariants(2));
  CHECK((cayley == cayley_hyperdeterminant() || cayley == -cayley_hyperdeterminant()));
}

TEST_CASE("repeated-root verdicts") {
  auto repeated = diagonal_pencil({1, 1, 1, 1}, {1, 1, 2, 3});
  CHECK(pencil_degenerate(repeated).degenerate);
  CHECK(evaluate_u_form(hyperdet_nn1(4), repeated) == 0);

  auto distinct = diagonal_pencil({1, 1, 1, 1}, {1, 2, 3, 4});
  CHECK_FALSE(pencil_degenerate(distinct).degenerate);
  CHECK(evaluate_u_form(hyperdet_nn1(4), distinct) != 0);

  // det(xI) = x^2 has a double root at y-direction
  auto at_infinity = diagonal_pencil({1, 1}, {0, 0});
  CHECK(pencil_degenerate(at_infinity).degenerate);
  CHECK_FALSE(pencil_degenerate(at_infinity).identically_zero);

  auto zero = pencil_degenerate(RationalTensor(3, 3));
  CHECK(zero.degenerate);
  CHECK(zero.identically_zero);

  // one root at infinity, one finite: distinct
  CHECK_FALSE(pencil_degenerate(diagonal_pencil({1, 0}, {1, 1})).degenerate);
}

TEST_CASE("univariate gcd") {
  // (x - 1)^2 (x + 2) and its derivative share x - 1
  UniPoly p{2, -3, 0, 1};
  UniPoly g = uni_gcd(p, uni_derivative(p));
  REQUIRE(g.size() == 2);
  CHECK(g[1] * 1 + g[0] == 0);
  CHECK(uni_gcd({1, 1}, {-1, 1}).size() == 1);
  CHECK(uni_derivative({5}).empty());
}

TEST_CASE("leading monomials commute with substitution") {
  std::mt19937_64 rng(17);
  for (int n = 2; n <= 3; ++n) {
    const auto& f = pencil_invariants(n);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<Polynomial::Term> terms;
      for (int t = 0; t < 3; ++t) {
        std::vector<Monomial::Entry> e;
        for (unsigned s = 0; s < 1 + rng() % 3; ++s) e.emplace_back(static_cast<VarId>(rng() % (n + 1)), 1);
        terms.push_back({Monomial(e), Rational(static_cast<long>(rng() % 5) + 1)});
      }
      Polynomial g(u_ring(n), terms);
      Monomial image;
      const Monomial lm = leading_monomial(g);
      for (const auto& [v, e] : lm.entries()) image = image * leading_monomial(f.f(static_cast<int>(v))).pow(e);
      CHECK(leading_monomial(substitute_pencil(g, f)) == image);
    }
  }
}
