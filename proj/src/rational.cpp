#include "cmzv/rational.hpp"

#include "cmzv/errors.hpp"

#include <cctype>

namespace cmzv {

std::string to_fraction_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string to_display_string(const Rational& q) { return q.get_str(); }

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto valid_int = [](std::string_view part, bool allow_sign) {
    if (part.empty()) return false;
    std::size_t i = 0;
    if (allow_sign && (part[0] == '-' || part[0] == '+')) ++i;
    if (i == part.size()) return false;
    for (; i < part.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(part[i]))) return false;
    return true;
  };
  auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num, true) || !valid_int(den, false))
    throw invalid_input("not a rational number: '" + s + "'");
  if (num[0] == '+') num.erase(0, 1);
  Integer d(den);
  if (d == 0) throw invalid_input("zero denominator in '" + s + "'");
  Rational q(Integer(num), d);
  q.canonicalize();
  return q;
}

double to_double(const Rational& q) { return q.get_d(); }

Rational rational_pow(const Rational& base, long exponent) {
  if (exponent < 0) {
    if (base == 0) throw domain_error("zero raised to a negative power");
    Rational inv = 1 / base;
    return rational_pow(inv, -exponent);
  }
  Integer num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(exponent));
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(exponent));
  Rational out(num, den);
  out.canonicalize();
  return out;
}

std::map<Integer, long> factor_integer(const Integer& n) {
  if (n <= 0) throw domain_error("factor_integer expects a positive integer");
  std::map<Integer, long> out;
  Integer rest = n;
  for (Integer p = 2; p * p <= rest; ++p) {
    while (rest % p == 0) {
      ++out[p];
      rest /= p;
    }
  }
  if (rest > 1) ++out[rest];
  return out;
}

std::map<Integer, long> factor_rational(const Rational& q) {
  if (q <= 0) throw domain_error("factor_rational expects a positive rational");
  auto out = factor_integer(q.get_num());
  for (const auto& [p, e] : factor_integer(q.get_den())) out[p] -= e;
  return out;
}

} // namespace cmzv
