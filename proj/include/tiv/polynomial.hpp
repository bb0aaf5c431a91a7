#pragma once

// Sparse multivariate polynomials with exact rational coefficients.
//
// A Ring fixes an ordered list of variables (ids 0..size-1) and a default
// monomial order.  Monomials are sorted (variable id, exponent) pairs with no
// zero exponents; polynomials are sorted term vectors with no zero
// coefficients, so structural equality is mathematical equality.

#include "tiv/rational.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace tiv {

using VarId = std::uint32_t;

struct Variable {
  std::string symbol;
  std::vector<int> index;

  /// "x", "U3", "T[1,2,1]": a single index is appended, several are bracketed.
  std::string name() const;

  friend auto operator<=>(const Variable&, const Variable&) = default;
  friend bool operator==(const Variable&, const Variable&) = default;
};

class Monomial {
 public:
  using Entry = std::pair<VarId, std::uint32_t>;

  Monomial() = default;
  /// Entries may be unsorted and contain repeats or zero exponents; they are normalized.
  explicit Monomial(std::vector<Entry> entries);
  static Monomial variable(VarId v, std::uint32_t exponent = 1);

  std::span<const Entry> entries() const { return entries_; }
  bool is_one() const { return entries_.empty(); }
  std::uint64_t degree() const;
  std::uint32_t exponent(VarId v) const;
  bool divides(const Monomial& other) const;

  Monomial operator*(const Monomial& other) const;
  /// Requires divides(other) in reverse; throws std::domain_error otherwise.
  Monomial operator/(const Monomial& divisor) const;
  Monomial pow(std::uint32_t e) const;

  /// Canonical storage order (lexicographic on entries); unrelated to monomial orders.
  friend auto operator<=>(const Monomial&, const Monomial&) = default;
  friend bool operator==(const Monomial&, const Monomial&) = default;

  std::size_t hash() const;

 private:
  std::vector<Entry> entries_;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

/// Degree-compatible order with an explicit variable chain (largest first).
class MonomialOrder {
 public:
  enum class Kind { DegLex, DegRevLex };

  MonomialOrder(Kind kind, std::vector<VarId> chain);
  static MonomialOrder deglex(std::vector<VarId> chain) { return {Kind::DegLex, std::move(chain)}; }
  static MonomialOrder degrevlex(std::vector<VarId> chain) { return {Kind::DegRevLex, std::move(chain)}; }

  Kind kind() const { return kind_; }
  std::span<const VarId> chain() const { return chain_; }

  /// Negative, zero or positive as a is smaller, equal or greater than b.
  int compare(const Monomial& a, const Monomial& b) const;
  bool less(const Monomial& a, const Monomial& b) const { return compare(a, b) < 0; }

  friend bool operator==(const MonomialOrder&, const MonomialOrder&) = default;

 private:
  Kind kind_;
  std::vector<VarId> chain_;
  std::vector<std::uint32_t> rank_;  // rank_[v] = position of v in chain_
  bool identity_chain_ = false;
};

class Ring;
using RingPtr = std::shared_ptr<const Ring>;

class Ring {
 public:
  /// Default order is degree-lex along the variable list.
  Ring(std::vector<Variable> variables, std::optional<MonomialOrder> order = std::nullopt,
       std::optional<std::pair<int, int>> tensor_shape = std::nullopt);

  static RingPtr make(std::vector<Variable> variables, std::optional<MonomialOrder> order = std::nullopt);

  std::size_t size() const { return variables_.size(); }
  const Variable& variable(VarId v) const { return variables_.at(v); }
  std::span<const Variable> variables() const { return variables_; }
  std::optional<VarId> find(const Variable& v) const;
  VarId id(const Variable& v) const;
  const MonomialOrder& order() const { return order_; }

  /// Set for rings built by tensor_ring(); the T-variables are ids 0 .. 2mn-1.
  std::optional<std::pair<int, int>> tensor_shape() const { return tensor_shape_; }

  bool same_variables(const Ring& other) const { return this == &other || variables_ == other.variables_; }

 private:
  std::vector<Variable> variables_;
  std::map<Variable, VarId> lookup_;
  MonomialOrder order_;
  std::optional<std::pair<int, int>> tensor_shape_;
};

/// Variables T[i,j,k] (1-based) of an m x n x 2 tensor, followed by `extra`.
/// Default order is degree-lex along T111 > T211 > ... > Tm11 > T121 > ... > Tmn1 > T112 > ... > Tmn2,
/// with extras last.
RingPtr tensor_ring(int m, int n, std::vector<Variable> extra = {});
/// Id of T[i,j,k] (1-based indices) in a tensor ring of shape (m,n).
VarId tensor_var_id(int m, int n, int i, int j, int k);

/// Variables `symbol`0 .. `symbol`n with degree-revlex order symbol_n > ... > symbol_0.
RingPtr indexed_ring(const std::string& symbol, int n);

/// Thrown when an expansion would exceed the term limit (env TIV_MAX_TERMS, default 5,000,000).
class ExpansionLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::size_t max_terms();

class Polynomial {
 public:
  struct Term {
    Monomial monomial;
    Rational coeff;
    friend bool operator==(const Term&, const Term&) = default;
  };

  explicit Polynomial(RingPtr ring);
  Polynomial(RingPtr ring, const Rational& constant);
  Polynomial(RingPtr ring, Monomial m, const Rational& coeff = 1);
  /// Terms are combined and zero coefficients dropped.
  Polynomial(RingPtr ring, std::vector<Term> terms);

  static Polynomial variable(RingPtr ring, VarId v);
  static Polynomial variable(RingPtr ring, const Variable& v);

  const RingPtr& ring() const { return ring_; }
  std::span<const Term> terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Coefficient of the monomial 1.
  Rational constant_term() const;
  Rational coefficient(const Monomial& m) const;

  /// Max total degree; -1 for the zero polynomial.
  long degree() const;
  bool is_homogeneous() const;
  /// Variables with a positive exponent in some term, ascending id.
  std::vector<VarId> support() const;

  Polynomial operator-() const;
  Polynomial operator+(const Polynomial& q) const;
  Polynomial operator-(const Polynomial& q) const;
  Polynomial operator*(const Polynomial& q) const;
  Polynomial operator*(const Rational& c) const;
  Polynomial& operator+=(const Polynomial& q) { return *this = *this + q; }
  Polynomial& operator-=(const Polynomial& q) { return *this = *this - q; }
  Polynomial& operator*=(const Polynomial& q) { return *this = *this * q; }
  Polynomial pow(unsigned e) const;

  Polynomial derivative(VarId v) const;

  /// Same polynomial viewed in `target`; every variable must exist there (matched by Variable).
  Polynomial embed(const RingPtr& target) const;

  friend bool operator==(const Polynomial& a, const Polynomial& b);

 private:
  void require_same_ring(const Polynomial& q) const;

  RingPtr ring_;
  std::vector<Term> terms_;  // sorted by Monomial storage order
};

Polynomial operator*(const Rational& c, const Polynomial& p);

/// Greatest monomial of `p` under `order`, with its coefficient. Throws std::domain_error if p == 0.
std::pair<Monomial, Rational> leading_term(const Polynomial& p, const MonomialOrder& order);
std::pair<Monomial, Rational> leading_term(const Polynomial& p);
Monomial leading_monomial(const Polynomial& p, const MonomialOrder& order);
Monomial leading_monomial(const Polynomial& p);

/// Image polynomial for every source variable; unmapped variables of p raise std::invalid_argument.
using Substitution = std::vector<std::optional<Polynomial>>;
Polynomial substitute(const Polynomial& p, const Substitution& map, const RingPtr& target);
/// Identity on every variable except those in `images` (same ring).
Polynomial substitute(const Polynomial& p, const std::map<VarId, Polynomial>& images);

/// Values by variable id; variables of p without a value raise std::invalid_argument.
using Assignment = std::vector<std::optional<Rational>>;
Rational evaluate(const Polynomial& p, const Assignment& point);

/// Accumulates scaled polynomials in a hash table; cheaper than repeated operator+.
class PolyAccumulator {
 public:
  explicit PolyAccumulator(RingPtr ring) : ring_(std::move(ring)) {}
  void add(const Monomial& m, const Rational& c);
  void add(const Polynomial& p, const Rational& scale = 1);
  /// Adds scale * (p * q).
  void add_product(const Polynomial& p, const Polynomial& q, const Rational& scale = 1);
  std::size_t size() const { return terms_.size(); }
  Polynomial finish() &&;

 private:
  RingPtr ring_;
  std::unordered_map<Monomial, Rational, MonomialHash> terms_;
};

/// Text form `c*T[1,1,1]^2*T[2,2,2] - 3/2*U0 + 7`, terms in decreasing order.
/// With `pretty`, one term per line.
std::string to_string(const Polynomial& p, const MonomialOrder& order, bool pretty = false);
std::string to_string(const Polynomial& p, bool pretty = false);
std::string to_string(const Monomial& m, const Ring& ring);

/// Resolves an identifier (with optional bracketed indices) to a polynomial.
using SymbolResolver = std::function<std::optional<Polynomial>(const std::string& symbol, const std::vector<int>& index)>;

/// Parses sums/products/powers/parentheses of rationals and variables of `ring`.
/// Variables are written by name (T[1,2,1], U3 or U[3], x). `extra` is consulted first.
/// Throws std::invalid_argument on malformed input or unknown identifiers.
Polynomial parse_polynomial(std::string_view text, const RingPtr& ring, const SymbolResolver& extra = {});

}  // namespace tiv
