#include "cmzv/etaspace.hpp"

#include "cmzv/errors.hpp"

#include <sstream>

namespace cmzv {

VElement VElement::basis(int shift, int exponent, Rational coeff) {
  VElement v;
  v.add({shift, exponent}, coeff);
  return v;
}

void VElement::add(VKey key, const Rational& coeff) {
  if (key.shift < 0 || key.exponent < 1)
    throw invalid_input("V basis needs shift >= 0 and exponent >= 1");
  if (coeff == 0) return;
  auto [it, inserted] = terms_.try_emplace(key, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

Rational VElement::coefficient(VKey key) const {
  auto it = terms_.find(key);
  return it == terms_.end() ? Rational(0) : it->second;
}

VElement& VElement::operator+=(const VElement& other) {
  for (const auto& [k, c] : other.terms_) add(k, c);
  return *this;
}

VElement VElement::operator+(const VElement& other) const {
  VElement out = *this;
  out += other;
  return out;
}

VElement VElement::operator-(const VElement& other) const { return *this + other * Rational(-1); }

VElement VElement::operator*(const Rational& scalar) const {
  VElement out;
  if (scalar == 0) return out;
  for (const auto& [k, c] : terms_) out.terms_.emplace(k, c * scalar);
  return out;
}

std::string VElement::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    out << (first ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + "));
    first = false;
    Rational mag = abs(c);
    if (mag != 1) out << mag.get_str() << '*';
    out << "1/";
    if (k.shift == 0)
      out << 'x';
    else
      out << "(x+" << k.shift << ')';
    if (k.exponent != 1) out << '^' << k.exponent;
  }
  return out.str();
}

VElement eta(const VElement& v) {
  VElement out;
  for (const auto& [k, c] : v.terms()) {
    Rational scale = c / Rational(k.shift + 1);
    out.add({0, k.exponent}, scale);
    out.add({k.shift + 1, k.exponent}, -scale);
  }
  return out;
}

VElement eta_power(VElement v, unsigned times) {
  for (unsigned i = 0; i < times; ++i) v = eta(v);
  return v;
}

Rational eval_at(const VElement& v, const Rational& t) {
  if (t <= 0) throw domain_error("eval_at requires t > 0");
  Rational total = 0;
  for (const auto& [k, c] : v.terms()) total += c * rational_pow(t + k.shift, -k.exponent);
  return total;
}

namespace {

void check_sum_formula_domain(int r, int k) {
  if (r < 2) throw domain_error("sum formula requires r >= 2");
  if (k <= 2 * (r - 1))
    throw domain_error("sum formula requires k > 2(r-1); got r=" + std::to_string(r) +
                       ", k=" + std::to_string(k));
}

} // namespace

Rational sum_formula_rhs(int r, int k) {
  check_sum_formula_domain(r, k);
  const int l = k - 2 * (r - 1);
  return eval_at(eta_power(VElement::basis(0, l), static_cast<unsigned>(r - 1)), 1);
}

Rational sum_formula_weight(const std::vector<int>& ks) {
  const int r = static_cast<int>(ks.size());
  Rational w = 1;
  int suffix = 0;
  // factors for j = r down to 1: (k_j + ... + k_r) - 2(r - j)
  for (int j = r; j >= 1; --j) {
    suffix += ks[static_cast<std::size_t>(j - 1)];
    w *= suffix - 2 * (r - j);
  }
  return w;
}

std::vector<SumFormulaTerm> sum_formula_lhs_terms(int r, int k) {
  check_sum_formula_domain(r, k);
  std::vector<SumFormulaTerm> out;
  for (const auto& c : compositions_of(k, r)) {
    std::vector<int> shifted = c.parts();
    shifted.back() += 1;
    out.push_back({c.parts(), Composition(std::move(shifted)), sum_formula_weight(c.parts())});
  }
  return out;
}

namespace {

void check_telescoping(int K, const Rational& c, const Rational& x) {
  if (K < 2) throw domain_error("telescoping identity requires K >= 2");
  if (c <= 0 || x <= 0) throw domain_error("telescoping identity requires c > 0 and x > 0");
}

} // namespace

Rational telescoping_lhs(int K, const Rational& c, const Rational& x) {
  check_telescoping(K, c, x);
  Rational total = 0;
  for (int n1 = 1; n1 < K; ++n1) total += rational_pow(x, -n1) * rational_pow(x + c, -(K - n1));
  return total;
}

Rational telescoping_rhs(int K, const Rational& c, const Rational& x) {
  check_telescoping(K, c, x);
  return (rational_pow(x, -(K - 1)) - rational_pow(x + c, -(K - 1))) / c;
}

} // namespace cmzv
