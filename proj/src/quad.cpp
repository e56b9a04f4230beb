#include "cmzv/quad.hpp"

#include "cmzv/errors.hpp"
#include "cmzv/gauss_kronrod.hpp"

#include <cmath>
#include <sstream>

namespace cmzv {

namespace {

constexpr int kMaxIntervalsOuter = 400;
constexpr int kMaxIntervalsInner = 200;

void check_tolerance(double tol) {
  if (!(tol > 0.0) || !std::isfinite(tol)) throw invalid_input("tolerance must be a positive number");
}

void check_depth(int depth, int depth_cap) {
  if (depth_cap < 1) throw invalid_input("depth cap must be at least 1");
  if (depth > depth_cap)
    throw capacity_error("depth " + std::to_string(depth) + " exceeds the configured cap " +
                         std::to_string(depth_cap));
}

// Nested evaluation of the CMZV integrand. Level i integrates x_i given the
// partial sum P = x_1 + ... + x_{i-1}.
class NestedCMZV {
public:
  NestedCMZV(std::span<const double> bounds, std::span<const double> exponents, double tol)
      : bounds_(bounds), exponents_(exponents), depth_(static_cast<int>(bounds.size())), tol_(tol) {}

  NumericResult run() {
    NumericResult out;
    if (depth_ == 1) {
      out.value = innermost(0.0);
      out.evaluations = evaluations_;
      return out;
    }
    const int levels = depth_ - 1;
    const double outer_tol = tol_ / 2.0;
    const double inner_tol = levels > 1 ? tol_ / (2.0 * levels) : 0.0;
    auto result = integrate_level(0, 0.0, outer_tol, inner_tol, 1.0, kMaxIntervalsOuter);
    out.value = result.value;
    out.error_estimate = result.rule_error + result.propagated_error;
    out.evaluations = evaluations_;
    out.converged = converged_ && std::isfinite(out.value);
    return out;
  }

private:
  double innermost(double prefix) {
    ++evaluations_;
    const double k = exponents_[static_cast<std::size_t>(depth_ - 1)];
    const double m = bounds_[static_cast<std::size_t>(depth_ - 1)];
    return std::pow(prefix + m, 1.0 - k) / (k - 1.0);
  }

  // Integral over x_level (and everything inside it), in units where the
  // enclosing integrands have been multiplied by `scale`.
  detail::Integration1D integrate_level(int level, double prefix, double own_tol, double inner_tol,
                                        double scale, int max_intervals) {
    const auto li = static_cast<std::size_t>(level);
    const double m = bounds_[li];
    const double k = exponents_[li];
    const bool last_numeric = level == depth_ - 2;
    auto integrand = [&](double t) -> detail::Estimate {
      // x = m + (prefix + m) t/(1-t), so prefix + x = (prefix + m)/u and the
      // Jacobian is (prefix + m)/u^2.
      const double u = 1.0 - t;
      const double base = prefix + m;
      const double x = m + base * t / u;
      const double multiplier = std::pow(base, 1.0 - k) * std::pow(u, k - 2.0);
      if (multiplier == 0.0) return {0.0, 0.0};
      if (last_numeric) return {multiplier * innermost(prefix + x), 0.0};
      const double node_scale = scale * multiplier;
      const double target = inner_tol / node_scale;
      auto inner = integrate_level(level + 1, prefix + x, target, inner_tol, node_scale,
                                   kMaxIntervalsInner);
      return {multiplier * inner.value, multiplier * (inner.rule_error + inner.propagated_error)};
    };
    auto result = detail::adaptive_gk15(integrand, 0.0, 1.0, own_tol, max_intervals);
    if (!result.converged) converged_ = false;
    return result;
  }

  std::span<const double> bounds_;
  std::span<const double> exponents_;
  int depth_;
  double tol_;
  std::int64_t evaluations_ = 0;
  bool converged_ = true;
};

} // namespace

ShiftedCMZV ShiftedCMZV::unshifted(const Composition& c) {
  return {std::vector<Rational>(static_cast<std::size_t>(c.depth()), Rational(1)), c};
}

void ShiftedCMZV::validate() const {
  if (bounds.size() != exponents.parts().size())
    throw invalid_input("bounds and exponents must have the same length");
  for (const auto& m : bounds)
    if (m <= 0) throw invalid_input("integration bounds must be positive");
}

std::string ShiftedCMZV::to_string() const {
  std::ostringstream out;
  out << "zetaC";
  bool all_one = true;
  for (const auto& m : bounds) all_one = all_one && m == 1;
  if (!all_one) {
    out << '_' << '{';
    for (std::size_t i = 0; i < bounds.size(); ++i) out << (i ? "," : "") << bounds[i].get_str();
    out << '}';
  }
  out << exponents.to_string();
  return out.str();
}

double default_tolerance(int depth) { return depth <= 3 ? 1e-8 : 1e-5; }

NumericResult eval_numeric(const ShiftedCMZV& v, double tol, int depth_cap) {
  v.validate();
  if (!is_admissible(v.exponents))
    throw divergence_error("exponents " + v.exponents.to_string() +
                           " are not admissible (last part must be >= 2)");
  std::vector<double> bounds;
  for (const auto& m : v.bounds) bounds.push_back(to_double(m));
  const auto exps = as_reals(v.exponents);
  return eval_numeric_real(bounds, exps, tol, depth_cap);
}

NumericResult eval_numeric(const Composition& c, double tol, int depth_cap) {
  return eval_numeric(ShiftedCMZV::unshifted(c), tol, depth_cap);
}

NumericResult eval_numeric_real(std::span<const double> bounds, std::span<const double> exponents,
                                double tol, int depth_cap) {
  check_tolerance(tol);
  if (bounds.size() != exponents.size() || bounds.empty())
    throw invalid_input("bounds and exponents must be nonempty and of equal length");
  for (double m : bounds)
    if (!(m > 0.0)) throw invalid_input("integration bounds must be positive");
  check_depth(static_cast<int>(exponents.size()), depth_cap);
  // Lower bounds >= 1 are the classical domain; smaller positive bounds only
  // improve convergence at infinity, which is what the suffix test measures.
  if (!in_convergence_domain(exponents))
    throw divergence_error("exponents lie outside the convergence domain");
  return NestedCMZV(bounds, exponents, tol).run();
}

NumericResult eval_unit_cube_ones(int r, double tol, int depth_cap) {
  check_tolerance(tol);
  if (r < 2) throw domain_error("unit-cube form needs r >= 2");
  check_depth(r - 1, depth_cap);
  const int dims = r - 1;
  std::int64_t evaluations = 0;
  bool converged = true;
  const double inner_tol = dims > 1 ? tol / (2.0 * dims) : 0.0;
  // Denominator 1 + y1 + y1 y2 + ... : carry the running sum and product.
  std::function<detail::Integration1D(int, double, double, double, double)> level =
      [&](int d, double sum, double product, double own_tol, double scale) {
        auto integrand = [&](double y) -> detail::Estimate {
          const double p = product * y;
          const double s = sum + p;
          if (d == dims - 1) {
            ++evaluations;
            return {1.0 / s, 0.0};
          }
          auto inner = level(d + 1, s, p, inner_tol / scale, scale);
          return {inner.value, inner.rule_error + inner.propagated_error};
        };
        auto res = detail::adaptive_gk15(integrand, 0.0, 1.0, own_tol,
                                         d == 0 ? kMaxIntervalsOuter : kMaxIntervalsInner);
        if (!res.converged) converged = false;
        return res;
      };
  auto res = level(0, 1.0, 1.0, tol / 2.0, 1.0);
  return {res.value, res.rule_error + res.propagated_error, evaluations, converged};
}

NumericResult integrate_semi_infinite(std::span<const double> bounds,
                                      const std::function<double(std::span<const double>)>& f,
                                      double tol, int depth_cap) {
  check_tolerance(tol);
  if (bounds.empty()) throw invalid_input("at least one dimension is required");
  const int dims = static_cast<int>(bounds.size());
  check_depth(dims, depth_cap);
  std::vector<double> x(bounds.size());
  std::int64_t evaluations = 0;
  bool converged = true;
  const double inner_tol = dims > 1 ? tol / (2.0 * dims) : 0.0;
  std::function<detail::Integration1D(int, double, double)> level = [&](int d, double own_tol,
                                                                         double scale) {
    const auto di = static_cast<std::size_t>(d);
    auto integrand = [&](double t) -> detail::Estimate {
      const double u = 1.0 - t;
      x[di] = bounds[di] + t / u;
      const double jac = 1.0 / (u * u);
      if (d == dims - 1) {
        ++evaluations;
        return {jac * f(x), 0.0};
      }
      auto inner = level(d + 1, inner_tol / (scale * jac), scale * jac);
      return {jac * inner.value, jac * (inner.rule_error + inner.propagated_error)};
    };
    auto res = detail::adaptive_gk15(integrand, 0.0, 1.0, own_tol,
                                     d == 0 ? kMaxIntervalsOuter : kMaxIntervalsInner);
    if (!res.converged) converged = false;
    return res;
  };
  auto res = level(0, tol / 2.0, 1.0);
  return {res.value, res.rule_error + res.propagated_error, evaluations, converged};
}

IdentityReport verify_identity(const IdentitySide& lhs, const IdentitySide& rhs, double tol,
                               int depth_cap) {
  check_tolerance(tol);
  IdentityReport report;
  report.tolerance = tol;
  auto side_value = [&](const IdentitySide& side) {
    double total = to_double(side.constant);
    for (const auto& [v, c] : side.terms) {
      auto res = eval_numeric(v, tol / 10.0, depth_cap);
      const double coeff = to_double(c);
      total += coeff * res.value;
      report.error_estimate += std::abs(coeff) * res.error_estimate;
      report.converged = report.converged && res.converged;
    }
    return total;
  };
  report.lhs = side_value(lhs);
  report.rhs = side_value(rhs);
  report.discrepancy = std::abs(report.lhs - report.rhs);
  report.pass = report.converged && report.discrepancy <= tol;
  return report;
}

} // namespace cmzv
