#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <string_view>

namespace tiv {

/// Arbitrary-precision rational; always kept canonical (lowest terms, positive denominator).
using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "p", "p/q" or "-p/q" (surrounding whitespace allowed). Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

/// "p/q" in lowest terms, or just "p" when the denominator is 1.
std::string to_string(const Rational& q);

/// Size in bits of numerator plus denominator; used for pivot selection.
std::size_t height(const Rational& q);

Rational pow(const Rational& base, unsigned exponent);

Integer binomial(unsigned n, unsigned k);

}  // namespace tiv
