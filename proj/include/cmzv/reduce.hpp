#pragma once

#include "cmzv/compositions.hpp"
#include "cmzv/quad.hpp"
#include "cmzv/rational.hpp"

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace cmzv {

/// Denominator (shift + v_1 + ... + v_index)^exponent, index is 1-based.
struct Factor {
  int index = 1;
  Rational shift = 0;
  int exponent = 1;

  bool operator==(const Factor&) const = default;
};

/// coeff * iterated integral over v_i in [bounds_i, inf) of the product of
/// the factors' reciprocals. A term with no variables is the rational coeff.
struct GenTerm {
  Rational coeff = 1;
  std::vector<Rational> bounds;
  std::vector<Factor> factors;

  static GenTerm from(const ShiftedCMZV& v);
  static GenTerm from(const Composition& c);

  int variables() const noexcept { return static_cast<int>(bounds.size()); }
  int weight() const noexcept;
  /// Factors sorted by (index, shift) with equal (index, shift) merged.
  void canonicalize();
  /// Every variable has a factor and the suffix exponent sums give convergence.
  bool is_convergent() const;
  std::string to_string() const;
};

/// Substitutes v_i -> v_i + (mu_i - mu_{i-1}) with mu_i the least shift among
/// factors of index >= i, so that every suffix has a zero-shift factor.
void absorb_shifts(GenTerm& t);

/// Integration by parts in variable `index` (1-based). Requires that the
/// variable carries exactly one factor with exponent >= 2. Returns the
/// boundary term (variable eliminated, shifts absorbed) followed by one
/// derivative term per factor of higher index.
std::vector<GenTerm> ibp_at(const GenTerm& t, int index);

/// ibp_at(t, 1) with the stricter contract that the first factor has shift 0.
std::vector<GenTerm> ibp_step(const GenTerm& t);

struct PartialFraction {
  Rational shift;
  int exponent = 1;
  Rational coeff;

  bool operator==(const PartialFraction&) const = default;
};

/// prod 1/(u + c_i)^{a_i} = sum coeff/(u + c)^e. Repeated shifts are merged
/// first. Output sorted by (shift, exponent), zero coefficients dropped.
std::vector<PartialFraction> partial_fractions(std::span<const std::pair<Rational, int>> factors);

/// Q-linear combination of 1, log p (p prime) and opaque basis values
/// B(m1..ms) = zeta^C_{m1..ms}(1,...,1,2) with s >= 3.
class SymbolicConstant {
public:
  using BasisId = std::vector<Rational>;

  SymbolicConstant() = default;
  explicit SymbolicConstant(Rational rational) : rational_(std::move(rational)) {}

  const Rational& rational() const noexcept { return rational_; }
  const std::map<Integer, Rational>& logs() const noexcept { return logs_; }
  const std::map<BasisId, Rational>& basis() const noexcept { return basis_; }

  void add_rational(const Rational& q) { rational_ += q; }
  /// Adds coeff * log(arg), arg > 0, expanded over primes.
  void add_log(const Rational& arg, const Rational& coeff);
  void add_log_prime(const Integer& p, const Rational& coeff);
  void add_basis(const BasisId& id, const Rational& coeff);

  SymbolicConstant& operator+=(const SymbolicConstant& other);
  SymbolicConstant operator*(const Rational& scalar) const;
  bool operator==(const SymbolicConstant&) const = default;

  bool is_zero() const noexcept { return rational_ == 0 && logs_.empty() && basis_.empty(); }

  /// "1 - log 2", "1/2*B(1,1,1) - 1/4*log 3".
  std::string to_string() const;

private:
  Rational rational_ = 0;
  std::map<Integer, Rational> logs_;
  std::map<BasisId, Rational> basis_;
};

/// Exact integral over [m, inf) of a one-variable expansion. The exponent-1
/// coefficients must sum to zero (Divergence otherwise).
SymbolicConstant integrate_tail(std::span<const PartialFraction> expansion, const Rational& m);

struct ReduceOptions {
  int depth_cap = kDefaultDepthCap;
  std::size_t step_budget = 10000;
};

struct Reduction {
  SymbolicConstant value;
  std::vector<std::string> findings;  // violated structural expectations
  std::size_t steps = 0;
};

/// Rewrites a convergent GenTerm into the basis; basis ids with s <= 2 are
/// resolved into rationals and logarithms. Throws Capacity when the step
/// budget is exhausted and Rewrite on shapes the strategy cannot handle.
Reduction reduce_term(const GenTerm& t, const ReduceOptions& options = {});

/// Reduction of zeta^C(c). Findings record any basis id whose bounds are not
/// integers summing to depth(c).
Reduction reduce_to_basis(const Composition& c, const ReduceOptions& options = {});

/// Numeric value of a symbolic constant: logs in double precision, basis
/// symbols through eval_numeric at `tol`. `log_offsets` perturbs log p (used
/// only to self-test verification harnesses).
NumericResult evaluate(const SymbolicConstant& value, double tol, int depth_cap = kDefaultDepthCap,
                       const std::map<Integer, double>& log_offsets = {});

/// ((k1..k_{r-1}, k_r - 1, 2), (k1..k_r, 2)) with
/// zeta^C(c) = zeta^C(first) + zeta^C(second).
std::pair<Composition, Composition> depth_embedding(const Composition& c);

/// All (m1..ms), s >= 1, m_i >= 1, summing to r; 2^{r-1} of them.
std::vector<std::vector<int>> basis_ids(int r);

/// zeta^C_{m1,m2}(1,2) = (1/m2) log((m1+m2)/m1).
SymbolicConstant depth2_basis_value(const Rational& m1, const Rational& m2);

/// Arguments (m1+m2)/m1 of the logarithms spanning the depth-2 basis with
/// m1 + m2 = r.
std::vector<Rational> depth2_log_arguments(int r);

} // namespace cmzv
