#pragma once

#include "cmzv/compositions.hpp"
#include "cmzv/rational.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace cmzv {

/// zeta^C_{m1..mr}(k1..kr): the CMZV integrand over [m1,inf) x ... x [mr,inf).
struct ShiftedCMZV {
  std::vector<Rational> bounds;
  Composition exponents;

  /// All bounds equal to 1.
  static ShiftedCMZV unshifted(const Composition& c);
  /// Throws InvalidInput when lengths differ or a bound is not positive.
  void validate() const;
  std::string to_string() const;
};

struct NumericResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::int64_t evaluations = 0;
  bool converged = true;
};

inline constexpr int kDefaultDepthCap = 6;

/// 1e-8 up to depth 3, 1e-5 beyond.
double default_tolerance(int depth);

/// Nested adaptive quadrature. The innermost variable is integrated in closed
/// form; the others are mapped to [0,1) by x = m + t/(1-t). Outer level budget
/// tol/2, each inner level tol/(2 * levels). Throws Divergence for
/// non-admissible exponents and Capacity above the depth cap; a missed
/// tolerance is reported through `converged`.
NumericResult eval_numeric(const ShiftedCMZV& v, double tol, int depth_cap = kDefaultDepthCap);
NumericResult eval_numeric(const Composition& c, double tol, int depth_cap = kDefaultDepthCap);

/// Same integral with real bounds and real exponents (used for non-integer
/// arguments inside the convergence domain).
NumericResult eval_numeric_real(std::span<const double> bounds, std::span<const double> exponents,
                                double tol, int depth_cap = kDefaultDepthCap);

/// (r-1)-dimensional integral of 1/(1 + y1 + y1 y2 + ... + y1...y_{r-1}) over
/// the unit cube, which equals zeta^C(1,...,1,2) of depth r.
NumericResult eval_unit_cube_ones(int r, double tol, int depth_cap = kDefaultDepthCap);

/// Fully numeric nested integral of f over [m1,inf) x ... x [md,inf).
NumericResult integrate_semi_infinite(std::span<const double> bounds,
                                      const std::function<double(std::span<const double>)>& f,
                                      double tol, int depth_cap = kDefaultDepthCap);

struct IdentitySide {
  std::vector<std::pair<ShiftedCMZV, Rational>> terms;
  Rational constant = 0;
};

struct IdentityReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double discrepancy = 0.0;
  double tolerance = 0.0;
  double error_estimate = 0.0;  // combined quadrature error of both sides
  bool converged = true;
  bool pass = false;
};

/// Evaluates both sides of sum(c_i * value_i) + constant and compares them
/// at `tol`. Each value is computed at tol/10.
IdentityReport verify_identity(const IdentitySide& lhs, const IdentitySide& rhs, double tol,
                               int depth_cap = kDefaultDepthCap);

} // namespace cmzv
