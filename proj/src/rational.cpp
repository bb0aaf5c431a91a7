#include "tiv/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace tiv {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool is_integer_literal(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto s = trim(text);
  auto slash = s.find('/');
  auto num = trim(s.substr(0, slash));
  auto den = slash == std::string_view::npos ? std::string_view{"1"} : trim(s.substr(slash + 1));
  if (!is_integer_literal(num) || !is_integer_literal(den)) {
    throw std::invalid_argument("not a rational number: '" + std::string(text) + "'");
  }
  if (num.front() == '+') num.remove_prefix(1);
  if (den.front() == '+') den.remove_prefix(1);
  Integer p(std::string(num), 10);
  Integer q(std::string(den), 10);
  if (q == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  Rational r(p, q);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& q) { return q.get_str(); }

std::size_t height(const Rational& q) {
  return mpz_sizeinbase(q.get_num_mpz_t(), 2) + mpz_sizeinbase(q.get_den_mpz_t(), 2);
}

Rational pow(const Rational& base, unsigned exponent) {
  Rational r;
  mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), exponent);
  mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), exponent);
  r.canonicalize();
  return r;
}

Integer binomial(unsigned n, unsigned k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

}  // namespace tiv
