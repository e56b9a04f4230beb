#pragma once

#include <gmpxx.h>

#include <map>
#include <string>
#include <string_view>

namespace cmzv {

using Integer = mpz_class;
using Rational = mpq_class;

/// Exact fraction string, always of the form "p/q" (q = 1 included).
std::string to_fraction_string(const Rational& q);

/// Short human form: "3", "-1/2".
std::string to_display_string(const Rational& q);

/// Accepts "p", "p/q", with optional sign. Throws InvalidInput otherwise.
Rational parse_rational(std::string_view text);

double to_double(const Rational& q);

Rational rational_pow(const Rational& base, long exponent);

/// Prime factorization of a positive integer by trial division.
std::map<Integer, long> factor_integer(const Integer& n);

/// Exponents over primes of a positive rational (negative for the denominator).
std::map<Integer, long> factor_rational(const Rational& q);

} // namespace cmzv
