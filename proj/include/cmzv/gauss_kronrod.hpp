#pragma once

// Globally adaptive 7/15-point Gauss-Kronrod integration on a finite interval
// with an absolute tolerance. The integrand may itself be an approximation
// (a nested integral) and reports its own error, which is propagated
// separately from the rule error so that it never drives subdivision.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

namespace cmzv::detail {

struct Estimate {
  double value = 0.0;
  double error = 0.0;
};

struct Integration1D {
  double value = 0.0;
  double rule_error = 0.0;        // discretization error of this level
  double propagated_error = 0.0;  // integrated error of the integrand values
  int intervals = 0;
  bool converged = true;
};

// Abscissae and weights from QUADPACK qk15.
inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a, b;
  double value, rule_error, propagated_error;
  double roundoff;  // error floor set by rounding in the rule itself
  bool operator<(const Segment& other) const { return rule_error < other.rule_error; }
};

template <class F>
Segment gk15_segment(F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const Estimate fc = f(center);
  double kronrod = fc.value * kWgk[7];
  double gauss = fc.value * kWg[3];
  double abs_sum = std::abs(kronrod);
  double propagated = std::abs(kWgk[7] * fc.error);
  std::array<double, 15> values{};
  values[7] = fc.value;
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[static_cast<std::size_t>(j)];
    const Estimate lo = f(center - dx);
    const Estimate hi = f(center + dx);
    values[static_cast<std::size_t>(j)] = lo.value;
    values[static_cast<std::size_t>(14 - j)] = hi.value;
    const double w = kWgk[static_cast<std::size_t>(j)];
    kronrod += w * (lo.value + hi.value);
    abs_sum += w * (std::abs(lo.value) + std::abs(hi.value));
    propagated += w * (std::abs(lo.error) + std::abs(hi.error));
    if (j % 2 == 1) gauss += kWg[static_cast<std::size_t>(j / 2)] * (lo.value + hi.value);
  }
  // Deviation measure as in QUADPACK (resasc).
  const double mean = 0.5 * kronrod;
  double resasc = kWgk[7] * std::abs(values[7] - mean);
  for (int j = 0; j < 7; ++j)
    resasc += kWgk[static_cast<std::size_t>(j)] *
              (std::abs(values[static_cast<std::size_t>(j)] - mean) +
               std::abs(values[static_cast<std::size_t>(14 - j)] - mean));
  resasc *= std::abs(half);
  double err = std::abs((kronrod - gauss) * half);
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  const double resabs = abs_sum * std::abs(half);
  constexpr double eps = std::numeric_limits<double>::epsilon();
  const double roundoff = 50.0 * eps * resabs;
  if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) err = std::max(roundoff, err);
  return {a, b, kronrod * half, err, propagated * std::abs(half), roundoff};
}

template <class F>
Integration1D adaptive_gk15(F&& f, double a, double b, double tolerance, int max_intervals) {
  std::priority_queue<Segment> queue;
  queue.push(gk15_segment(f, a, b));
  Integration1D out;
  double total_value = queue.top().value;
  double total_error = queue.top().rule_error;
  int intervals = 1;
  while (total_error > tolerance && intervals < max_intervals) {
    Segment worst = queue.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) break;  // interval exhausted
    if (worst.rule_error <= worst.roundoff) break;  // bisection cannot beat rounding
    queue.pop();
    Segment left = gk15_segment(f, worst.a, mid);
    Segment right = gk15_segment(f, mid, worst.b);
    total_value += left.value + right.value - worst.value;
    total_error += left.rule_error + right.rule_error - worst.rule_error;
    queue.push(left);
    queue.push(right);
    ++intervals;
  }
  // Recompute sums to shed accumulated cancellation in the running totals.
  out.value = 0.0;
  out.rule_error = 0.0;
  out.propagated_error = 0.0;
  while (!queue.empty()) {
    const Segment& s = queue.top();
    out.value += s.value;
    out.rule_error += s.rule_error;
    out.propagated_error += s.propagated_error;
    queue.pop();
  }
  out.intervals = intervals;
  out.converged = out.rule_error <= tolerance;
  return out;
}

} // namespace cmzv::detail
