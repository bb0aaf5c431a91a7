#include <doctest.h>

#include "tiv/linalg.hpp"

#include <algorithm>
#include <numeric>
#include <random>

using namespace tiv;

namespace {

int permutation_sign(const std::vector<std::size_t>& perm) {
  int sign = 1;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    for (std::size_t j = i + 1; j < perm.size(); ++j) {
      if (perm[i] > perm[j]) sign = -sign;
    }
  }
  return sign;
}

// Leibniz formula; independent of every elimination routine
template <typename Matrix, typename Value>
Value leibniz(const Matrix& a, Value zero) {
  std::vector<std::size_t> perm(a.rows());
  std::iota(perm.begin(), perm.end(), 0);
  Value sum = zero;
  do {
    Value prod = a.at(0, perm[0]);
    for (std::size_t i = 1; i < perm.size(); ++i) prod = prod * a.at(i, perm[i]);
    sum = sum + prod * Rational(permutation_sign(perm));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return sum;
}

RatMatrix random_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& rng, int zero_bias = 0) {
  RatMatrix a(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      if (zero_bias && static_cast<int>(rng() % 10) < zero_bias) continue;
      Rational q(static_cast<long>(rng() % 9) - 4, static_cast<long>(rng() % 3) + 1);
      q.canonicalize();
      a(i, j) = q;
    }
  }
  return a;
}

SymMatrix generic(std::size_t n, RingPtr& ring) {
  std::vector<Variable> vars;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) vars.push_back({"a", {static_cast<int>(i + 1), static_cast<int>(j + 1)}});
  }
  ring = Ring::make(vars);
  SymMatrix m(ring, n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m.at(i, j) = Polynomial::variable(ring, static_cast<VarId>(i * n + j));
  }
  return m;
}

}  // namespace

TEST_CASE("symbolic determinant of a generic matrix") {
  for (std::size_t n = 1; n <= 4; ++n) {
    RingPtr ring;
    SymMatrix m = generic(n, ring);
    Polynomial d = det_symbolic(m);
    CHECK(d == leibniz(m, Polynomial(ring)));
    CHECK(d == laplace_det(m));
  }
}

TEST_CASE("generic 2x2 determinant text") {
  RingPtr ring;
  CHECK(to_string(det_symbolic(generic(2, ring))) == "a[1,1]*a[2,2] - a[1,2]*a[2,1]");
}

TEST_CASE("symbolic determinant with zero blocks") {
  RingPtr ring;
  SymMatrix m = generic(5, ring);
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t j = 0; j < 5; ++j) {
      if ((i + 2 * j) % 3 == 0) m.at(i, j) = Polynomial(ring);
    }
  }
  CHECK(det_symbolic(m) == laplace_det(m));
  CHECK(det_symbolic(SymMatrix(ring, 3, 3)).is_zero());
}

TEST_CASE("minor selection") {
  RingPtr ring;
  SymMatrix m = generic(3, ring);
  std::vector<std::size_t> rows{0, 2};
  std::vector<std::size_t> cols{1, 2};
  CHECK(to_string(minor(m, rows, cols)) == "a[1,2]*a[3,3] - a[1,3]*a[3,2]");
  std::vector<std::size_t> bad{2, 0};
  CHECK_THROWS_AS(minor(m, bad, cols), std::invalid_argument);
  std::vector<std::size_t> wide{0, 1, 2};
  CHECK_THROWS_AS(minor(m, rows, wide), std::invalid_argument);
  CHECK_THROWS_AS(det_symbolic(SymMatrix(ring, 2, 3)), std::invalid_argument);
}

TEST_CASE("rational determinant against Leibniz") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t n = 1 + rng() % 5;
    RatMatrix a = random_matrix(n, n, rng, trial % 3 == 0 ? 5 : 0);
    CHECK(det_rational(a) == leibniz(a, Rational(0)));
  }
  CHECK(det_rational(RatMatrix{{0, 1}, {1, 0}}) == -1);
}

TEST_CASE("kernel, rank and inverse") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    std::size_t rows = 1 + rng() % 5;
    std::size_t cols = 1 + rng() % 6;
    RatMatrix a = random_matrix(rows, cols, rng, 4);
    if (trial % 4 == 0 && rows > 1) {
      for (std::size_t j = 0; j < cols; ++j) a(rows - 1, j) = a(0, j) * Rational(3, 2);
    }
    auto kernel = kernel_basis(a);
    CHECK(rank(a) + kernel.size() == cols);
    CHECK(rank(a) == rank(a.transpose()));
    for (const auto& v : kernel) {
      for (std::size_t i = 0; i < rows; ++i) {
        Rational s = 0;
        for (std::size_t j = 0; j < cols; ++j) s += a(i, j) * v[j];
        CHECK(s == 0);
      }
    }
    // the same null space from the sparse routine
    std::vector<SparseRow> sparse(rows);
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < cols; ++j) {
        if (a(i, j) != 0) sparse[i].emplace_back(j, a(i, j));
      }
    }
    auto sparse_kernel = kernel_basis(sparse, cols);
    CHECK(sparse_kernel.size() == kernel.size());
    for (const auto& v : sparse_kernel) {
      for (std::size_t i = 0; i < rows; ++i) {
        Rational s = 0;
        for (std::size_t j = 0; j < cols; ++j) s += a(i, j) * v[j];
        CHECK(s == 0);
      }
    }
  }

  RatMatrix a{{2, 1}, {7, 4}};
  CHECK(a * inverse(a) == RatMatrix::identity(2));
  CHECK_THROWS_AS(inverse(RatMatrix{{1, 2}, {2, 4}}), std::domain_error);
}

TEST_CASE("matrix arithmetic") {
  RatMatrix a{{1, 2}, {3, 4}};
  RatMatrix b{{0, 1}, {1, 0}};
  CHECK(a * b == RatMatrix{{2, 1}, {4, 3}});
  CHECK(a + b == RatMatrix{{1, 3}, {4, 4}});
  CHECK(a.transpose() == RatMatrix{{1, 3}, {2, 4}});
  CHECK(a * Rational(1, 2) == RatMatrix{{Rational(1, 2), 1}, {Rational(3, 2), 2}});
  CHECK_THROWS(a.at(2, 0));
}
