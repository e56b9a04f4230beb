#pragma once

#include "cmzv/compositions.hpp"
#include "cmzv/rational.hpp"

#include <compare>
#include <map>
#include <string>
#include <vector>

namespace cmzv {

/// Basis element 1 / (x + shift)^exponent.
struct VKey {
  int shift = 0;
  int exponent = 1;
  auto operator<=>(const VKey&) const = default;
};

/// Element of the Q-span of 1/(x+n)^l, n >= 0, l >= 1, kept in canonical
/// (shift, exponent) order without zero coefficients.
class VElement {
public:
  VElement() = default;

  static VElement basis(int shift, int exponent, Rational coeff = 1);

  void add(VKey key, const Rational& coeff);

  const std::map<VKey, Rational>& terms() const noexcept { return terms_; }
  bool empty() const noexcept { return terms_.empty(); }
  Rational coefficient(VKey key) const;

  VElement& operator+=(const VElement& other);
  VElement operator+(const VElement& other) const;
  VElement operator-(const VElement& other) const;
  VElement operator*(const Rational& scalar) const;
  bool operator==(const VElement&) const = default;

  std::string to_string() const;

private:
  std::map<VKey, Rational> terms_;
};

/// eta(1/(x+n)^l) = (1/(n+1)) (1/x^l - 1/(x+n+1)^l), extended linearly.
VElement eta(const VElement& v);

VElement eta_power(VElement v, unsigned times);

/// Exact value at x = t; requires t > 0.
Rational eval_at(const VElement& v, const Rational& t);

/// Right-hand side of the continuous sum formula: eta^{r-1}(1/x^{k-2(r-1)}) at x = 1.
/// Requires r >= 2 and k > 2(r-1).
Rational sum_formula_rhs(int r, int k);

/// Weight polynomial f(k1..kr) = k_r (k_{r-1}+k_r-2) ... (k_2+..+k_r-2(r-2)) (k-2(r-1)).
Rational sum_formula_weight(const std::vector<int>& ks);

struct SumFormulaTerm {
  std::vector<int> ks;       // (k1, ..., kr), sum k
  Composition composition;   // (k1, ..., k_{r-1}, 1 + k_r)
  Rational weight;           // f(k1, ..., kr); zero weights are kept
};

/// Every (k1..kr) with sum k, parts >= 1, in lexicographic order.
std::vector<SumFormulaTerm> sum_formula_lhs_terms(int r, int k);

/// Both sides of the telescoping identity
///   sum_{n1+n2=K, ni>=1} 1/(x^n1 (x+c)^n2) = (1/c)(1/x^{K-1} - 1/(x+c)^{K-1})
/// evaluated exactly. Requires K >= 2, c > 0, x > 0.
Rational telescoping_lhs(int K, const Rational& c, const Rational& x);
Rational telescoping_rhs(int K, const Rational& c, const Rational& x);

} // namespace cmzv
