#include "tiv/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <sstream>

namespace tiv {

// ---------------------------------------------------------------- Variable

std::string Variable::name() const {
  if (index.empty()) return symbol;
  if (index.size() == 1) return symbol + std::to_string(index[0]);
  std::string s = symbol + "[";
  for (std::size_t i = 0; i < index.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(index[i]);
  }
  return s + "]";
}

// ---------------------------------------------------------------- Monomial

Monomial::Monomial(std::vector<Entry> entries) {
  std::sort(entries.begin(), entries.end());
  for (const auto& [v, e] : entries) {
    if (e == 0) continue;
    if (!entries_.empty() && entries_.back().first == v) {
      entries_.back().second += e;
    } else {
      entries_.emplace_back(v, e);
    }
  }
}

Monomial Monomial::variable(VarId v, std::uint32_t exponent) {
  Monomial m;
  if (exponent) m.entries_.emplace_back(v, exponent);
  return m;
}

std::uint64_t Monomial::degree() const {
  std::uint64_t d = 0;
  for (const auto& e : entries_) d += e.second;
  return d;
}

std::uint32_t Monomial::exponent(VarId v) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), Entry{v, 0});
  return it != entries_.end() && it->first == v ? it->second : 0;
}

bool Monomial::divides(const Monomial& other) const {
  auto it = other.entries_.begin();
  for (const auto& [v, e] : entries_) {
    while (it != other.entries_.end() && it->first < v) ++it;
    if (it == other.entries_.end() || it->first != v || it->second < e) return false;
  }
  return true;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial r;
  r.entries_.reserve(entries_.size() + other.entries_.size());
  auto a = entries_.begin();
  auto b = other.entries_.begin();
  while (a != entries_.end() && b != other.entries_.end()) {
    if (a->first < b->first) {
      r.entries_.push_back(*a++);
    } else if (b->first < a->first) {
      r.entries_.push_back(*b++);
    } else {
      r.entries_.emplace_back(a->first, a->second + b->second);
      ++a;
      ++b;
    }
  }
  r.entries_.insert(r.entries_.end(), a, entries_.end());
  r.entries_.insert(r.entries_.end(), b, other.entries_.end());
  return r;
}

Monomial Monomial::operator/(const Monomial& divisor) const {
  if (!divisor.divides(*this)) throw std::domain_error("monomial division is not exact");
  Monomial r;
  auto b = divisor.entries_.begin();
  for (const auto& [v, e] : entries_) {
    std::uint32_t sub = 0;
    if (b != divisor.entries_.end() && b->first == v) sub = (b++)->second;
    if (e > sub) r.entries_.emplace_back(v, e - sub);
  }
  return r;
}

Monomial Monomial::pow(std::uint32_t e) const {
  if (e == 0) return {};
  Monomial r = *this;
  for (auto& entry : r.entries_) entry.second *= e;
  return r;
}

std::size_t Monomial::hash() const {
  std::size_t h = 0x9e3779b97f4a7c15ULL;
  for (const auto& [v, e] : entries_) {
    h ^= (static_cast<std::size_t>(v) << 20 | e) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

// ----------------------------------------------------------- MonomialOrder

MonomialOrder::MonomialOrder(Kind kind, std::vector<VarId> chain) : kind_(kind), chain_(std::move(chain)) {
  VarId max_id = 0;
  for (auto v : chain_) max_id = std::max(max_id, v);
  rank_.assign(chain_.empty() ? 0 : max_id + 1, UINT32_MAX);
  for (std::uint32_t r = 0; r < chain_.size(); ++r) {
    if (rank_[chain_[r]] != UINT32_MAX) throw std::invalid_argument("variable repeated in monomial order chain");
    rank_[chain_[r]] = r;
  }
  for (auto r : rank_) {
    if (r == UINT32_MAX) throw std::invalid_argument("monomial order chain must list variables 0..k-1");
  }
  identity_chain_ = true;
  for (std::uint32_t r = 0; r < chain_.size(); ++r) identity_chain_ = identity_chain_ && chain_[r] == r;
}

int MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
  auto da = a.degree();
  auto db = b.degree();
  if (da != db) return da < db ? -1 : 1;

  std::vector<Monomial::Entry> ra;
  std::vector<Monomial::Entry> rb;
  std::span<const Monomial::Entry> ea = a.entries();
  std::span<const Monomial::Entry> eb = b.entries();
  if (!identity_chain_) {
    auto to_rank = [&](std::span<const Monomial::Entry> in, std::vector<Monomial::Entry>& out) {
      out.reserve(in.size());
      for (const auto& [v, e] : in) {
        if (v >= rank_.size()) throw std::out_of_range("variable not covered by monomial order");
        out.emplace_back(rank_[v], e);
      }
      std::sort(out.begin(), out.end());
    };
    to_rank(ea, ra);
    to_rank(eb, rb);
    ea = ra;
    eb = rb;
  }

  if (kind_ == Kind::DegLex) {
    // first differing variable from the top of the chain: larger exponent wins
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < ea.size() && j < eb.size()) {
      if (ea[i].first == eb[j].first) {
        if (ea[i].second != eb[j].second) return ea[i].second > eb[j].second ? 1 : -1;
        ++i;
        ++j;
      } else {
        return ea[i].first < eb[j].first ? 1 : -1;
      }
    }
    if (i < ea.size()) return 1;
    if (j < eb.size()) return -1;
    return 0;
  }

  // first differing variable from the bottom of the chain: smaller exponent wins
  auto i = static_cast<std::ptrdiff_t>(ea.size()) - 1;
  auto j = static_cast<std::ptrdiff_t>(eb.size()) - 1;
  while (i >= 0 && j >= 0) {
    if (ea[i].first == eb[j].first) {
      if (ea[i].second != eb[j].second) return ea[i].second < eb[j].second ? 1 : -1;
      --i;
      --j;
    } else {
      return ea[i].first > eb[j].first ? -1 : 1;
    }
  }
  if (i >= 0) return -1;
  if (j >= 0) return 1;
  return 0;
}

// -------------------------------------------------------------------- Ring

namespace {

MonomialOrder default_order(std::size_t n) {
  std::vector<VarId> chain(n);
  for (VarId v = 0; v < n; ++v) chain[v] = v;
  return MonomialOrder::deglex(std::move(chain));
}

}  // namespace

Ring::Ring(std::vector<Variable> variables, std::optional<MonomialOrder> order,
           std::optional<std::pair<int, int>> tensor_shape)
    : variables_(std::move(variables)),
      order_(order ? std::move(*order) : default_order(variables_.size())),
      tensor_shape_(tensor_shape) {
  for (VarId v = 0; v < variables_.size(); ++v) {
    if (!lookup_.emplace(variables_[v], v).second) {
      throw std::invalid_argument("duplicate variable " + variables_[v].name());
    }
  }
  if (order_.chain().size() != variables_.size()) {
    throw std::invalid_argument("monomial order chain does not match the ring's variables");
  }
}

RingPtr Ring::make(std::vector<Variable> variables, std::optional<MonomialOrder> order) {
  return std::make_shared<const Ring>(std::move(variables), std::move(order));
}

std::optional<VarId> Ring::find(const Variable& v) const {
  auto it = lookup_.find(v);
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

VarId Ring::id(const Variable& v) const {
  auto found = find(v);
  if (!found) throw std::invalid_argument("unknown variable " + v.name());
  return *found;
}

VarId tensor_var_id(int m, int n, int i, int j, int k) {
  if (i < 1 || i > m || j < 1 || j > n || k < 1 || k > 2) {
    throw std::out_of_range("tensor index (" + std::to_string(i) + "," + std::to_string(j) + "," +
                            std::to_string(k) + ") out of range");
  }
  return static_cast<VarId>((k - 1) * m * n + (j - 1) * m + (i - 1));
}

RingPtr tensor_ring(int m, int n, std::vector<Variable> extra) {
  if (m < 1 || n < 1) throw std::invalid_argument("tensor dimensions must be positive");
  std::vector<Variable> vars;
  vars.reserve(2 * m * n + extra.size());
  for (int k = 1; k <= 2; ++k) {
    for (int j = 1; j <= n; ++j) {
      for (int i = 1; i <= m; ++i) vars.push_back({"T", {i, j, k}});
    }
  }
  for (auto& v : extra) vars.push_back(std::move(v));
  auto order = default_order(vars.size());
  return std::make_shared<const Ring>(std::move(vars), std::move(order), std::pair{m, n});
}

RingPtr indexed_ring(const std::string& symbol, int n) {
  if (n < 0) throw std::invalid_argument("indexed ring needs n >= 0");
  std::vector<Variable> vars;
  std::vector<VarId> chain;
  for (int k = 0; k <= n; ++k) vars.push_back({symbol, {k}});
  for (int k = n; k >= 0; --k) chain.push_back(static_cast<VarId>(k));
  return Ring::make(std::move(vars), MonomialOrder::degrevlex(std::move(chain)));
}

std::size_t max_terms() {
  static const std::size_t limit = [] {
    if (const char* env = std::getenv("TIV_MAX_TERMS")) {
      char* end = nullptr;
      auto v = std::strtoull(env, &end, 10);
      if (end != env && v > 0) return static_cast<std::size_t>(v);
    }
    return std::size_t{5'000'000};
  }();
  return limit;
}

// -------------------------------------------------------------- Polynomial

namespace {

bool term_less(const Polynomial::Term& a, const Polynomial::Term& b) { return a.monomial < b.monomial; }

void check_limit(std::size_t n) {
  if (n > max_terms()) {
    throw ExpansionLimitError("expansion exceeds " + std::to_string(max_terms()) +
                              " terms (raise TIV_MAX_TERMS to allow it)");
  }
}

}  // namespace

Polynomial::Polynomial(RingPtr ring) : ring_(std::move(ring)) {
  if (!ring_) throw std::invalid_argument("polynomial needs a ring");
}

Polynomial::Polynomial(RingPtr ring, const Rational& constant) : Polynomial(std::move(ring)) {
  if (constant != 0) terms_.push_back({Monomial{}, constant});
}

Polynomial::Polynomial(RingPtr ring, Monomial m, const Rational& coeff) : Polynomial(std::move(ring)) {
  for (const auto& [v, e] : m.entries()) {
    if (v >= ring_->size()) throw std::out_of_range("monomial variable outside ring");
  }
  if (coeff != 0) terms_.push_back({std::move(m), coeff});
}

Polynomial::Polynomial(RingPtr ring, std::vector<Term> terms) : Polynomial(std::move(ring)) {
  std::sort(terms.begin(), terms.end(), term_less);
  for (auto& t : terms) {
    if (!terms_.empty() && terms_.back().monomial == t.monomial) {
      terms_.back().coeff += t.coeff;
    } else {
      if (!terms_.empty() && terms_.back().coeff == 0) terms_.pop_back();
      terms_.push_back(std::move(t));
    }
  }
  if (!terms_.empty() && terms_.back().coeff == 0) terms_.pop_back();
}

Polynomial Polynomial::variable(RingPtr ring, VarId v) {
  if (v >= ring->size()) throw std::out_of_range("variable id outside ring");
  return Polynomial(std::move(ring), Monomial::variable(v));
}

Polynomial Polynomial::variable(RingPtr ring, const Variable& v) {
  auto id = ring->id(v);
  return variable(std::move(ring), id);
}

bool Polynomial::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].monomial.is_one()); }

Rational Polynomial::constant_term() const { return coefficient(Monomial{}); }

Rational Polynomial::coefficient(const Monomial& m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), Term{m, 0}, term_less);
  return it != terms_.end() && it->monomial == m ? it->coeff : Rational(0);
}

long Polynomial::degree() const {
  long d = -1;
  for (const auto& t : terms_) d = std::max(d, static_cast<long>(t.monomial.degree()));
  return d;
}

bool Polynomial::is_homogeneous() const {
  for (const auto& t : terms_) {
    if (t.monomial.degree() != terms_.front().monomial.degree()) return false;
  }
  return true;
}

std::vector<VarId> Polynomial::support() const {
  std::vector<VarId> s;
  for (const auto& t : terms_) {
    for (const auto& [v, e] : t.monomial.entries()) s.push_back(v);
  }
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

void Polynomial::require_same_ring(const Polynomial& q) const {
  if (!ring_->same_variables(*q.ring_)) throw std::invalid_argument("polynomials over different variable sets");
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

Polynomial Polynomial::operator+(const Polynomial& q) const {
  require_same_ring(q);
  Polynomial r(ring_);
  r.terms_.reserve(terms_.size() + q.terms_.size());
  auto a = terms_.begin();
  auto b = q.terms_.begin();
  while (a != terms_.end() && b != q.terms_.end()) {
    if (a->monomial < b->monomial) {
      r.terms_.push_back(*a++);
    } else if (b->monomial < a->monomial) {
      r.terms_.push_back(*b++);
    } else {
      Rational c = a->coeff + b->coeff;
      if (c != 0) r.terms_.push_back({a->monomial, std::move(c)});
      ++a;
      ++b;
    }
  }
  r.terms_.insert(r.terms_.end(), a, terms_.end());
  r.terms_.insert(r.terms_.end(), b, q.terms_.end());
  return r;
}

Polynomial Polynomial::operator-(const Polynomial& q) const { return *this + (-q); }

Polynomial Polynomial::operator*(const Polynomial& q) const {
  require_same_ring(q);
  PolyAccumulator acc(ring_);
  acc.add_product(*this, q);
  return std::move(acc).finish();
}

Polynomial Polynomial::operator*(const Rational& c) const {
  if (c == 0) return Polynomial(ring_);
  Polynomial r = *this;
  for (auto& t : r.terms_) t.coeff *= c;
  return r;
}

Polynomial operator*(const Rational& c, const Polynomial& p) { return p * c; }

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial result(ring_, Rational(1));
  Polynomial base = *this;
  while (e) {
    if (e & 1U) result = result * base;
    e >>= 1U;
    if (e) base = base * base;
  }
  return result;
}

Polynomial Polynomial::derivative(VarId v) const {
  std::vector<Term> out;
  for (const auto& t : terms_) {
    auto e = t.monomial.exponent(v);
    if (e == 0) continue;
    out.push_back({t.monomial / Monomial::variable(v), t.coeff * e});
  }
  return Polynomial(ring_, std::move(out));
}

Polynomial Polynomial::embed(const RingPtr& target) const {
  if (target == ring_) return *this;
  std::vector<VarId> map(ring_->size());
  for (VarId v = 0; v < ring_->size(); ++v) {
    auto found = target->find(ring_->variable(v));
    map[v] = found ? *found : UINT32_MAX;
  }
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    std::vector<Monomial::Entry> entries;
    for (const auto& [v, e] : t.monomial.entries()) {
      if (map[v] == UINT32_MAX) {
        throw std::invalid_argument("variable " + ring_->variable(v).name() + " missing from target ring");
      }
      entries.emplace_back(map[v], e);
    }
    out.push_back({Monomial(std::move(entries)), t.coeff});
  }
  return Polynomial(target, std::move(out));
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  return a.ring_->same_variables(*b.ring_) && a.terms_ == b.terms_;
}

// --------------------------------------------------------- PolyAccumulator

void PolyAccumulator::add(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) it->second += c;
}

void PolyAccumulator::add(const Polynomial& p, const Rational& scale) {
  if (!p.ring()->same_variables(*ring_)) throw std::invalid_argument("polynomials over different variable sets");
  for (const auto& t : p.terms()) add(t.monomial, t.coeff * scale);
  check_limit(terms_.size());
}

void PolyAccumulator::add_product(const Polynomial& p, const Polynomial& q, const Rational& scale) {
  if (!p.ring()->same_variables(*ring_) || !q.ring()->same_variables(*ring_)) {
    throw std::invalid_argument("polynomials over different variable sets");
  }
  if (scale == 0) return;
  Rational c;
  for (const auto& a : p.terms()) {
    Rational ac = a.coeff * scale;
    for (const auto& b : q.terms()) {
      mpq_mul(c.get_mpq_t(), ac.get_mpq_t(), b.coeff.get_mpq_t());
      add(a.monomial * b.monomial, c);
    }
    check_limit(terms_.size());
  }
}

Polynomial PolyAccumulator::finish() && {
  std::vector<Polynomial::Term> out;
  out.reserve(terms_.size());
  for (auto& [m, c] : terms_) {
    if (c != 0) out.push_back({m, std::move(c)});
  }
  terms_.clear();
  return Polynomial(ring_, std::move(out));
}

// ------------------------------------------------------- leading monomials

std::pair<Monomial, Rational> leading_term(const Polynomial& p, const MonomialOrder& order) {
  if (p.is_zero()) throw std::domain_error("leading monomial of the zero polynomial");
  const Polynomial::Term* best = &p.terms().front();
  for (const auto& t : p.terms()) {
    if (order.compare(t.monomial, best->monomial) > 0) best = &t;
  }
  return {best->monomial, best->coeff};
}

std::pair<Monomial, Rational> leading_term(const Polynomial& p) { return leading_term(p, p.ring()->order()); }

Monomial leading_monomial(const Polynomial& p, const MonomialOrder& order) { return leading_term(p, order).first; }

Monomial leading_monomial(const Polynomial& p) { return leading_term(p).first; }

// ------------------------------------------------- substitution/evaluation

Polynomial substitute(const Polynomial& p, const Substitution& map, const RingPtr& target) {
  std::vector<std::vector<Polynomial>> powers(p.ring()->size());
  auto power = [&](VarId v, std::uint32_t e) -> const Polynomial& {
    if (v >= map.size() || !map[v]) {
      throw std::invalid_argument("substitution does not map variable " + p.ring()->variable(v).name());
    }
    auto& cache = powers[v];
    if (cache.empty()) {
      if (!map[v]->ring()->same_variables(*target)) {
        throw std::invalid_argument("substitution image outside the target ring");
      }
      cache.push_back(*map[v]);
    }
    while (cache.size() < e) cache.push_back(cache.back() * cache.front());
    return cache[e - 1];
  };

  PolyAccumulator acc(target);
  for (const auto& t : p.terms()) {
    Polynomial term(target, t.coeff);
    for (const auto& [v, e] : t.monomial.entries()) term = term * power(v, e);
    acc.add(term);
  }
  return std::move(acc).finish();
}

Polynomial substitute(const Polynomial& p, const std::map<VarId, Polynomial>& images) {
  const auto& ring = p.ring();
  Substitution map(ring->size());
  for (VarId v = 0; v < ring->size(); ++v) {
    auto it = images.find(v);
    map[v] = it != images.end() ? it->second : Polynomial::variable(ring, v);
  }
  return substitute(p, map, ring);
}

Rational evaluate(const Polynomial& p, const Assignment& point) {
  std::vector<std::vector<Rational>> powers(p.ring()->size());
  Rational sum = 0;
  Rational term;
  for (const auto& t : p.terms()) {
    term = t.coeff;
    for (const auto& [v, e] : t.monomial.entries()) {
      if (v >= point.size() || !point[v]) {
        throw std::invalid_argument("no value assigned to " + p.ring()->variable(v).name());
      }
      auto& cache = powers[v];
      if (cache.empty()) cache.push_back(*point[v]);
      while (cache.size() < e) cache.push_back(cache.back() * cache.front());
      term *= cache[e - 1];
    }
    sum += term;
  }
  return sum;
}

// -------------------------------------------------------------- printing

std::string to_string(const Monomial& m, const Ring& ring) {
  std::string s;
  for (const auto& [v, e] : m.entries()) {
    if (!s.empty()) s += '*';
    s += ring.variable(v).name();
    if (e > 1) s += '^' + std::to_string(e);
  }
  return s.empty() ? "1" : s;
}

std::string to_string(const Polynomial& p, const MonomialOrder& order, bool pretty) {
  if (p.is_zero()) return "0";
  std::vector<const Polynomial::Term*> sorted;
  for (const auto& t : p.terms()) sorted.push_back(&t);
  std::sort(sorted.begin(), sorted.end(),
            [&](const auto* a, const auto* b) { return order.compare(a->monomial, b->monomial) > 0; });

  std::string out;
  bool first = true;
  for (const auto* t : sorted) {
    bool negative = t->coeff < 0;
    Rational magnitude = abs(t->coeff);
    if (first) {
      if (negative) out += '-';
    } else {
      out += pretty ? "\n" : " ";
      out += negative ? "- " : "+ ";
    }
    first = false;
    if (t->monomial.is_one()) {
      out += to_string(magnitude);
    } else {
      if (magnitude != 1) out += to_string(magnitude) + "*";
      out += to_string(t->monomial, *p.ring());
    }
  }
  return out;
}

std::string to_string(const Polynomial& p, bool pretty) { return to_string(p, p.ring()->order(), pretty); }

// ---------------------------------------------------------------- parsing

namespace {

class Parser {
 public:
  Parser(std::string_view text, const RingPtr& ring, const SymbolResolver& extra)
      : text_(text), ring_(ring), extra_(extra) {}

  Polynomial parse() {
    Polynomial p = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("parse error at offset " + std::to_string(pos_) + ": " + what);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Polynomial expr() {
    Polynomial sum(ring_);
    bool negate = false;
    if (accept('-')) {
      negate = true;
    } else {
      accept('+');
    }
    Polynomial t = term();
    sum = negate ? -t : t;
    for (;;) {
      if (accept('+')) {
        sum += term();
      } else if (accept('-')) {
        sum -= term();
      } else {
        return sum;
      }
    }
  }

  Polynomial term() {
    Polynomial prod = power();
    for (;;) {
      if (accept('*')) {
        prod = prod * power();
      } else if (accept('/')) {
        Polynomial d = power();
        if (!d.is_constant() || d.is_zero()) fail("division only by nonzero constants");
        prod = prod * (Rational(1) / d.constant_term());
      } else {
        return prod;
      }
    }
  }

  Polynomial power() {
    Polynomial base = atom();
    if (accept('^')) {
      skip_ws();
      auto digits = read_digits();
      if (digits.empty()) fail("expected exponent");
      base = base.pow(static_cast<unsigned>(std::stoul(digits)));
    }
    return base;
  }

  std::string read_digits() {
    std::string d;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) d += text_[pos_++];
    return d;
  }

  Polynomial atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial p = expr();
      if (!accept(')')) fail("expected ')'");
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      return Polynomial(ring_, Rational(Integer(read_digits(), 10)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    fail("unexpected '" + std::string(1, c) + "'");
  }

  Polynomial identifier() {
    std::string name;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      name += text_[pos_++];
    }
    std::vector<int> index;
    bool bracketed = false;
    if (accept('[') || (accept('{'))) {
      bracketed = true;
      char close = text_[pos_ - 1] == '[' ? ']' : '}';
      do {
        skip_ws();
        bool neg = pos_ < text_.size() && text_[pos_] == '-';
        if (neg) ++pos_;
        auto digits = read_digits();
        if (digits.empty()) fail("expected index");
        index.push_back((neg ? -1 : 1) * std::stoi(digits));
      } while (accept(','));
      if (!accept(close)) fail(std::string("expected '") + close + "'");
    }
    if (auto p = resolve(name, index)) return *p;
    if (!bracketed) {
      // "U12" -> symbol "U", index 12
      auto split = name.find_last_not_of("0123456789");
      if (split != std::string::npos && split + 1 < name.size()) {
        std::string symbol = name.substr(0, split + 1);
        if (symbol.back() == '_') symbol.pop_back();
        if (auto p = resolve(symbol, {std::stoi(name.substr(split + 1))})) return *p;
      }
    }
    fail("unknown identifier '" + Variable{name, index}.name() + "'");
  }

  std::optional<Polynomial> resolve(const std::string& symbol, const std::vector<int>& index) {
    if (extra_) {
      if (auto p = extra_(symbol, index)) return p;
    }
    if (auto v = ring_->find(Variable{symbol, index})) return Polynomial::variable(ring_, *v);
    return std::nullopt;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  const RingPtr& ring_;
  const SymbolResolver& extra_;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, const RingPtr& ring, const SymbolResolver& extra) {
  return Parser(text, ring, extra).parse();
}

}  // namespace tiv
