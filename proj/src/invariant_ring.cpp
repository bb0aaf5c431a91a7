#include "tiv/invariant_ring.hpp"

#include <array>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>

namespace tiv {

namespace {

RingPtr cached_indexed_ring(const std::string& symbol, int n) {
  static std::mutex mutex;
  static std::map<std::pair<std::string, int>, RingPtr> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[{symbol, n}];
  if (!slot) slot = indexed_ring(symbol, n);
  return slot;
}

void require_u_ring(const Polynomial& u, int n) {
  if (!u.ring()->same_variables(*u_ring(n))) {
    throw std::invalid_argument("expected a polynomial in U0..U" + std::to_string(n));
  }
}

}  // namespace

RingPtr u_ring(int n) { return cached_indexed_ring("U", n); }

RingPtr xi_ring(int n) { return cached_indexed_ring("xi", n); }

Polynomial substitute_pencil(const Polynomial& u, const PencilInvariants& f) {
  require_u_ring(u, f.n);
  Substitution map;
  for (const auto& c : f.coeffs) map.emplace_back(c);
  return substitute(u, map, f.coeffs.front().ring());
}

Rational evaluate_u_form(const Polynomial& u, const RationalTensor& t) {
  require_u_ring(u, t.n());
  Assignment point;
  for (auto& v : pencil_values(t)) point.emplace_back(std::move(v));
  return evaluate(u, point);
}

// --------------------------------------------------------------- subduction

namespace {

class Subductor {
 public:
  explicit Subductor(int n) : n_(n), f_(pencil_invariants(n)), powers_(static_cast<std::size_t>(n + 1)) {
    for (const auto& fk : f_.coeffs) {
      auto [lm, lc] = leading_term(fk);
      lms_.push_back(std::move(lm));
      lcs_.push_back(std::move(lc));
    }
  }

  SubductionResult run(const Polynomial& p) {
    const auto& ring = f_.coeffs.front().ring();
    if (!p.ring()->same_variables(*ring)) throw std::invalid_argument("subduct needs a polynomial over tensor_ring(n, n)");
    SubductionResult result{Polynomial(u_ring(n_)), p, 0};
    PolyAccumulator u(u_ring(n_));
    while (!result.remainder.is_zero()) {
      auto [lm, lc] = leading_term(result.remainder, ring->order());
      auto exponents = factor(lm);
      if (!exponents) break;

      Polynomial product(ring, Rational(1));
      Rational product_lc = 1;
      std::vector<Monomial::Entry> u_entries;
      for (int k = 0; k <= n_; ++k) {
        auto c = (*exponents)[k];
        if (c == 0) continue;
        product = product * power(k, c);
        product_lc *= tiv::pow(lcs_[k], c);
        u_entries.emplace_back(static_cast<VarId>(k), c);
      }
      Rational scale = lc / product_lc;
      result.remainder = result.remainder - product * scale;
      u.add(Monomial(std::move(u_entries)), scale);
      ++result.steps;
    }
    result.u_form = std::move(u).finish();
    return result;
  }

 private:
  // Exponent vector c with prod lm(f_k)^{c_k} == lm, if one exists.
  std::optional<std::vector<std::uint32_t>> factor(const Monomial& lm) const {
    std::vector<long> e(static_cast<std::size_t>(n_ + 2), 0);
    for (int k = 1; k <= n_; ++k) e[k] = lm.exponent(tensor_var_id(n_, n_, k, k, 1));
    std::vector<std::uint32_t> c(static_cast<std::size_t>(n_ + 1));
    for (int k = 1; k <= n_; ++k) {
      long ck = e[k] - e[k + 1];  // partial sums must be non-increasing
      if (ck < 0) return std::nullopt;
      c[k] = static_cast<std::uint32_t>(ck);
    }
    c[0] = lm.exponent(tensor_var_id(n_, n_, 1, 1, 2));
    Monomial candidate;
    for (int k = 0; k <= n_; ++k) candidate = candidate * lms_[k].pow(c[k]);
    if (candidate != lm) return std::nullopt;
    return c;
  }

  const Polynomial& power(int k, std::uint32_t e) {
    auto& cache = powers_[k];
    if (cache.empty()) cache.push_back(f_.f(k));
    while (cache.size() < e) cache.push_back(cache.back() * cache.front());
    return cache[e - 1];
  }

  int n_;
  const PencilInvariants& f_;
  std::vector<Monomial> lms_;
  std::vector<Rational> lcs_;
  std::vector<std::vector<Polynomial>> powers_;
};

}  // namespace

SubductionResult subduct(const Polynomial& p, int n) {
  if (n < 1) throw std::invalid_argument("subduct needs n >= 1");
  return Subductor(n).run(p);
}

// ------------------------------------------------------------------ bridge

Polynomial bridge_to_xi(const Polynomial& u, int n) {
  require_u_ring(u, n);
  const auto xi = xi_ring(n);
  Substitution map;
  for (int k = 0; k <= n; ++k) {
    map.emplace_back(Polynomial::variable(xi, static_cast<VarId>(k)) *
                     Rational(binomial(static_cast<unsigned>(n), static_cast<unsigned>(k))));
  }
  return substitute(u, map, xi);
}

Polynomial bridge_from_xi(const Polynomial& x, int n) {
  if (!x.ring()->same_variables(*xi_ring(n))) {
    throw std::invalid_argument("expected a polynomial in xi0..xi" + std::to_string(n));
  }
  const auto u = u_ring(n);
  Substitution map;
  for (int k = 0; k <= n; ++k) {
    map.emplace_back(Polynomial::variable(u, static_cast<VarId>(k)) *
                     (Rational(1) / Rational(binomial(static_cast<unsigned>(n), static_cast<unsigned>(k)))));
  }
  return substitute(x, map, u);
}

Polynomial integer_normalize(const Polynomial& p) {
  if (p.is_zero()) return p;
  Integer den = 1;
  Integer num = 0;
  for (const auto& t : p.terms()) {
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), t.coeff.get_den_mpz_t());
    mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), t.coeff.get_num_mpz_t());
  }
  Rational scale(den, num);
  scale.canonicalize();
  if (leading_term(p).second < 0) scale = -scale;
  return p * scale;
}

// ------------------------------------------------------ classical invariants

std::vector<Polynomial> binary_form_invariants(int n) {
  const auto ring = xi_ring(std::max(n, 0));
  auto parse = [&](const char* text) { return parse_polynomial(text, ring); };
  switch (n) {
    case 2:
      return {parse("xi1^2 - xi0*xi2")};
    case 3:
      return {parse("3*xi1^2*xi2^2 - 4*xi0*xi2^3 - 4*xi1^3*xi3 + 6*xi0*xi1*xi2*xi3 - xi0^2*xi3^2")};
    case 4:
      return {parse("3*xi2^2 - 4*xi1*xi3 + xi0*xi4"),
              parse("xi2^3 + xi0*xi3^2 + xi1^2*xi4 - 2*xi1*xi2*xi3 - xi0*xi2*xi4")};
    default:
      throw std::invalid_argument("binary form invariants for n = " + std::to_string(n) + " are not tabulated");
  }
}

std::vector<Polynomial> classical_invariants(int n) {
  std::vector<Polynomial> out;
  for (const auto& g : binary_form_invariants(n)) out.push_back(integer_normalize(bridge_from_xi(g, n)));
  return out;
}

// ----------------------------------------------------------- hyperdeterminants

bool hyperdet_exists(std::span<const int> format) {
  const long total = std::accumulate(format.begin(), format.end(), 0L);
  for (int l : format) {
    if (l < 1) throw std::invalid_argument("hyperdeterminant format entries must be positive");
    if (l > total - l) return false;
  }
  return true;
}

bool hyperdet_exists(int l1, int l2, int l3) {
  const int format[] = {l1, l2, l3};
  return hyperdet_exists(format);
}

bool support_divisibility_check(const Polynomial& p, int m, int n) {
  const auto& ring = *p.ring();
  if (ring.tensor_shape() != std::pair{m, n}) throw std::invalid_argument("polynomial is not over an m x n x 2 tensor");
  for (const auto& t : p.terms()) {
    std::vector<std::array<int, 3>> isupp;
    for (const auto& [v, e] : t.monomial.entries()) {
      const auto& idx = ring.variable(v).index;
      if (idx.size() != 3) return false;
      isupp.push_back({idx[0], idx[1], idx[2]});
    }
    for (int j1 = 1; j1 <= m; ++j1) {
      for (int j2 = 1; j2 <= n; ++j2) {
        for (int j3 = 1; j3 <= 2; ++j3) {
          bool near = false;
          for (const auto& i : isupp) {
            int differ = (i[0] != j1) + (i[1] != j2) + (i[2] != j3);
            if (differ <= 1) {
              near = true;
              break;
            }
          }
          if (!near) return false;
        }
      }
    }
  }
  return true;
}

Polynomial hyperdet_nn1(int n) {
  switch (n) {
    case 2:
    case 3:
      return classical_invariants(n).front();
    case 4: {
      auto gens = classical_invariants(4);
      return integer_normalize(gens[0].pow(3) * Rational(4) - gens[1].pow(2));
    }
    default:
      throw std::invalid_argument("hyperdeterminant of format (n-1, n-1, 1) for n = " + std::to_string(n) +
                                  " is not tabulated");
  }
}

long substituted_degree(const Polynomial& u, int n) {
  if (u.is_zero() || !u.is_homogeneous()) throw std::invalid_argument("substituted degree needs a homogeneous U-form");
  return u.degree() * n;
}

Polynomial cayley_hyperdeterminant() {
  static const char* text =
      "T[1,1,1]^2*T[2,2,2]^2 + T[1,1,2]^2*T[2,2,1]^2 + T[1,2,1]^2*T[2,1,2]^2 + T[2,1,1]^2*T[1,2,2]^2"
      " - 2*(T[1,1,1]*T[1,1,2]*T[2,2,1]*T[2,2,2] + T[1,1,1]*T[1,2,1]*T[2,1,2]*T[2,2,2]"
      " + T[1,1,1]*T[2,1,1]*T[1,2,2]*T[2,2,2] + T[1,1,2]*T[1,2,1]*T[2,1,2]*T[2,2,1]"
      " + T[1,1,2]*T[2,1,1]*T[1,2,2]*T[2,2,1] + T[1,2,1]*T[2,1,1]*T[1,2,2]*T[2,1,2])"
      " + 4*(T[1,1,1]*T[1,2,2]*T[2,1,2]*T[2,2,1] + T[1,1,2]*T[1,2,1]*T[2,1,1]*T[2,2,2])";
  return parse_polynomial(text, tensor_ring(2, 2));
}

// ----------------------------------------------------------- degeneracy

namespace {

void trim(UniPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

}  // namespace

UniPoly uni_derivative(const UniPoly& p) {
  UniPoly d;
  for (std::size_t k = 1; k < p.size(); ++k) d.push_back(p[k] * static_cast<unsigned long>(k));
  trim(d);
  return d;
}

UniPoly uni_gcd(UniPoly a, UniPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    // a <- a mod b
    while (a.size() >= b.size() && !a.empty()) {
      Rational q = a.back() / b.back();
      std::size_t shift = a.size() - b.size();
      for (std::size_t k = 0; k < b.size(); ++k) a[shift + k] -= q * b[k];
      trim(a);
    }
    std::swap(a, b);
  }
  if (!a.empty()) {
    Rational lead = a.back();
    for (auto& c : a) c /= lead;
  }
  return a;
}

DegeneracyVerdict pencil_degenerate(const RationalTensor& t) {
  if (t.m() != t.n()) throw std::invalid_argument("pencil degeneracy needs a square tensor");
  const int n = t.n();
  UniPoly form = pencil_values(t);  // coefficient of x^k y^(n-k) at k
  trim(form);
  if (form.empty()) return {true, true};
  // (x : y) = (1 : 0) is a root of multiplicity n - deg
  const auto at_infinity = static_cast<int>(n - (form.size() - 1));
  if (at_infinity >= 2) return {true, false};
  return {uni_gcd(form, uni_derivative(form)).size() > 1, false};
}

}  // namespace tiv
