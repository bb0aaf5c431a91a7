#include "tiv/group_action.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <random>

namespace tiv {

namespace {

void require_sl(const RatMatrix& a, const char* what) {
  if (!a.is_square() || a.rows() == 0) throw std::invalid_argument(std::string(what) + " must be square");
  if (det_rational(a) != 1) throw std::invalid_argument(std::string(what) + " must have determinant 1");
}

Rational small_rational(std::mt19937_64& rng) {
  auto num = static_cast<long>(rng() % 7) - 3;
  auto den = static_cast<long>(rng() % 2) + 1;
  Rational q(num, den);
  q.canonicalize();
  return q;
}

std::uint64_t mix(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

// ------------------------------------------------------------ GroupElement

GroupElement::GroupElement(RatMatrix p_, RatMatrix q_, RatMatrix r_) : p(std::move(p_)), q(std::move(q_)), r(std::move(r_)) {
  require_sl(p, "P");
  require_sl(q, "Q");
  if (r.rows() != 2) throw std::invalid_argument("R must be 2 x 2");
  require_sl(r, "R");
}

GroupElement GroupElement::identity(int m, int n) {
  return {RatMatrix::identity(static_cast<std::size_t>(m)), RatMatrix::identity(static_cast<std::size_t>(n)),
          RatMatrix::identity(2)};
}

GroupElement GroupElement::inverse() const { return {tiv::inverse(p), tiv::inverse(q), tiv::inverse(r)}; }

GroupElement operator*(const GroupElement& g, const GroupElement& h) {
  if (g.m() != h.m() || g.n() != h.n()) throw std::invalid_argument("group elements of different formats");
  return {g.p * h.p, g.q * h.q, g.r * h.r};
}

// ---------------------------------------------------------------- sampling

RatMatrix random_sl(std::size_t size, std::uint64_t seed) {
  if (size == 0) throw std::invalid_argument("random_sl needs size >= 1");
  RatMatrix a = RatMatrix::identity(size);
  if (size == 1) return a;
  std::mt19937_64 rng(seed);
  for (std::size_t step = 0; step < 2 * size; ++step) {
    std::size_t row = rng() % size;
    std::size_t col = rng() % (size - 1);
    if (col >= row) ++col;
    Rational v = small_rational(rng);
    // a <- a * (I + v E_{row,col}): column col gains v times column row
    for (std::size_t i = 0; i < size; ++i) a(i, col) += v * a(i, row);
  }
  return a;
}

GroupElement random_group_element(int m, int n, GroupKind kind, std::uint64_t seed) {
  RatMatrix r = kind == GroupKind::SlSlSl ? random_sl(2, mix(seed, 2)) : RatMatrix::identity(2);
  return {random_sl(static_cast<std::size_t>(m), mix(seed, 0)), random_sl(static_cast<std::size_t>(n), mix(seed, 1)),
          std::move(r)};
}

RationalTensor random_tensor(int m, int n, std::uint64_t seed) {
  RationalTensor t(m, n);
  std::mt19937_64 rng(seed);
  for (int k = 1; k <= 2; ++k) {
    for (int j = 1; j <= n; ++j) {
      for (int i = 1; i <= m; ++i) t.at(i, j, k) = small_rational(rng);
    }
  }
  return t;
}

// ------------------------------------------------------------------ actions

RationalTensor act_on_tensor(const GroupElement& g, const RationalTensor& t) {
  if (g.m() != t.m() || g.n() != t.n()) throw std::invalid_argument("group element and tensor differ in shape");
  const RatMatrix pt = g.p.transpose();
  const RatMatrix a = pt * t.slice(1) * g.q;
  const RatMatrix b = pt * t.slice(2) * g.q;
  return RationalTensor::from_slices(a * g.r(0, 0) + b * g.r(1, 0), a * g.r(0, 1) + b * g.r(1, 1));
}

Polynomial act_on_polynomial(const GroupElement& g, const Polynomial& p) {
  const auto& ring = p.ring();
  IndeterminateTensor t(ring);
  if (g.m() != t.m() || g.n() != t.n()) throw std::invalid_argument("group element and ring differ in shape");
  const int m = t.m();
  const int n = t.n();

  // (P^T Z Q)[i][j] for Z = X, Y
  auto transformed = [&](int slice, int i, int j) {
    PolyAccumulator acc(ring);
    for (int a = 1; a <= m; ++a) {
      const Rational& pa = g.p(a - 1, i - 1);
      if (pa == 0) continue;
      for (int b = 1; b <= n; ++b) {
        const Rational& qb = g.q(b - 1, j - 1);
        if (qb == 0) continue;
        acc.add(Monomial::variable(t.id(a, b, slice)), pa * qb);
      }
    }
    return std::move(acc).finish();
  };

  Substitution map(ring->size());
  for (VarId v = 0; v < ring->size(); ++v) map[v] = Polynomial::variable(ring, v);
  for (int i = 1; i <= m; ++i) {
    for (int j = 1; j <= n; ++j) {
      Polynomial a = transformed(1, i, j);
      Polynomial b = transformed(2, i, j);
      map[t.id(i, j, 1)] = a * g.r(0, 0) + b * g.r(1, 0);
      map[t.id(i, j, 2)] = a * g.r(0, 1) + b * g.r(1, 1);
    }
  }
  return substitute(p, map, ring);
}

// --------------------------------------------------------------- invariance

InvarianceReport check_invariance(const TensorFunction& f, int m, int n, GroupKind kind, std::size_t samples,
                                  std::uint64_t seed) {
  InvarianceReport report;
  for (std::size_t s = 0; s < samples; ++s) {
    const std::uint64_t sample_seed = mix(seed, 1000 + s);
    GroupElement g = random_group_element(m, n, kind, sample_seed);
    RationalTensor t = random_tensor(m, n, mix(sample_seed, 7));
    Rational before = f(t);
    Rational after = f(act_on_tensor(g, t));
    ++report.samples;
    if (before != after) {
      report.passed = false;
      report.counterexample = Counterexample{s, std::move(g), std::move(t), std::move(before), std::move(after)};
      break;
    }
  }
  return report;
}

InvarianceReport check_invariance(const Polynomial& p, GroupKind kind, std::size_t samples, std::uint64_t seed) {
  auto shape = p.ring()->tensor_shape();
  if (!shape) throw std::invalid_argument("check_invariance needs a polynomial over a tensor ring");
  const Ring& ring = *p.ring();
  return check_invariance([&](const RationalTensor& t) { return evaluate(p, t.assignment(ring)); }, shape->first,
                          shape->second, kind, samples, seed);
}

// ------------------------------------------------------ Lie algebra kernels

namespace {

void enumerate_monomials(std::size_t vars, int degree, std::vector<Monomial>& out) {
  std::vector<Monomial::Entry> current;
  auto rec = [&](auto&& self, VarId start, int left) -> void {
    if (left == 0) {
      out.emplace_back(current);
      return;
    }
    for (VarId v = start; v < vars; ++v) {
      for (int e = left; e >= 1; --e) {
        current.emplace_back(v, e);
        self(self, v + 1, left - e);
        current.pop_back();
      }
    }
  };
  rec(rec, 0, degree);
}

}  // namespace

std::vector<Polynomial> lie_invariant_space(int m, int n, int degree, LieParts parts) {
  if (degree < 0) throw std::invalid_argument("degree must be non-negative");
  IndeterminateTensor t(m, n);
  const auto vars = static_cast<unsigned>(2 * m * n);
  if (degree > 0 && binomial(vars + static_cast<unsigned>(degree) - 1, static_cast<unsigned>(degree)) > kLieBasisLimit) {
    throw SizeGuardError("graded piece exceeds " + std::to_string(kLieBasisLimit) + " monomials");
  }

  // slot s of T[i,j,k] and its range
  const std::array<int, 3> extent{m, n, 2};
  const std::array<bool, 3> active{parts.sl_m, parts.sl_n, parts.sl_2};
  std::vector<std::array<int, 3>> index(vars);
  for (int k = 1; k <= 2; ++k) {
    for (int j = 1; j <= n; ++j) {
      for (int i = 1; i <= m; ++i) index[t.id(i, j, k)] = {i, j, k};
    }
  }

  std::vector<Monomial> all;
  enumerate_monomials(vars, degree, all);

  // The diagonal generators act on monomials by their index-count weights, so
  // their joint kernel is spanned by the monomials with balanced counts.
  std::vector<Monomial> basis;
  for (const auto& mono : all) {
    bool balanced = true;
    for (int s = 0; s < 3 && balanced; ++s) {
      if (!active[s]) continue;
      std::vector<std::uint64_t> count(static_cast<std::size_t>(extent[s]) + 1);
      for (const auto& [v, e] : mono.entries()) count[index[v][s]] += e;
      balanced = std::all_of(count.begin() + 1, count.end(), [&](auto c) { return c == count[1]; });
    }
    if (balanced) basis.push_back(mono);
  }
  if (basis.empty()) return {};

  // Off-diagonal generators E_ab: T[.. b ..] -> T[.. a ..] in slot s.
  std::vector<SparseRow> rows;
  for (int s = 0; s < 3; ++s) {
    if (!active[s]) continue;
    for (int a = 1; a <= extent[s]; ++a) {
      for (int b = 1; b <= extent[s]; ++b) {
        if (a == b) continue;
        std::map<Monomial, SparseRow> image;
        for (std::size_t col = 0; col < basis.size(); ++col) {
          const Monomial& mono = basis[col];
          for (const auto& [v, e] : mono.entries()) {
            if (index[v][s] != b) continue;
            auto target = index[v];
            target[s] = a;
            Monomial moved = mono / Monomial::variable(v) * Monomial::variable(t.id(target[0], target[1], target[2]));
            auto& row = image[moved];
            if (!row.empty() && row.back().first == col) {
              row.back().second += e;
            } else {
              row.emplace_back(col, Rational(e));
            }
          }
        }
        for (auto& [mono, row] : image) rows.push_back(std::move(row));
      }
    }
  }

  std::vector<Polynomial> out;
  for (const auto& v : kernel_basis(std::move(rows), basis.size())) {
    std::vector<Polynomial::Term> terms;
    for (std::size_t c = 0; c < v.size(); ++c) {
      if (v[c] != 0) terms.push_back({basis[c], v[c]});
    }
    out.emplace_back(t.ring(), std::move(terms));
  }
  return out;
}

}  // namespace tiv
