// One PASS/FAIL line per acceptance criterion; exit status is the number of
// failed criteria.

#include "cmzv/compositions.hpp"
#include "cmzv/etaspace.hpp"
#include "cmzv/poles.hpp"
#include "cmzv/quad.hpp"
#include "cmzv/reduce.hpp"
#include "cmzv/shuffle.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>

using namespace cmzv;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

int failures = 0;

void run(int id, const char* title, double time_limit_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out.fail(std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (time_limit_s > 0 && secs >= time_limit_s) {
    std::ostringstream why;
    why << "took " << secs << " s, limit " << time_limit_s << " s";
    out.fail(why.str());
  }
  if (!out.pass) ++failures;
  std::printf("%s criterion %d: %s (%.3f s)%s%s\n", out.pass ? "PASS" : "FAIL", id, title, secs,
              out.detail.empty() ? "" : " - ", out.detail.c_str());
  std::fflush(stdout);
}

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(3);
  s << v;
  return s.str();
}

std::vector<Composition> admissible_up_to(int max_w) {
  std::vector<Composition> out;
  for (int w = 2; w <= max_w; ++w)
    for (auto& c : admissible_compositions(w)) out.push_back(c);
  return out;
}

Outcome depth_one() {
  Outcome o;
  double worst = 0;
  for (int k = 1; k <= 8; ++k) {
    const auto r = eval_numeric(Composition({1 + k}), 1e-10);
    const double err = std::abs(r.value - 1.0 / k);
    worst = std::max(worst, err);
    if (!(err <= 1e-9)) o.fail("k=" + std::to_string(k) + " off by " + fmt(err));
  }
  if (o.pass) o.detail = "max error " + fmt(worst);
  return o;
}

Outcome depth_two() {
  Outcome o;
  const auto base = eval_numeric(Composition({1, 2}), 1e-10);
  double worst = std::abs(base.value - std::log(2.0));
  if (!(worst <= 1e-8)) o.fail("zeta(1,2) off by " + fmt(worst));
  for (int m1 = 1; m1 <= 5; ++m1) {
    for (int m2 = 1; m1 + m2 <= 6; ++m2) {
      ShiftedCMZV v{{Rational(m1), Rational(m2)}, Composition({1, 2})};
      const double expected = std::log(double(m1 + m2) / m1) / m2;
      const double err = std::abs(eval_numeric(v, 1e-10).value - expected);
      worst = std::max(worst, err);
      if (!(err <= 1e-8)) o.fail(v.to_string() + " off by " + fmt(err));
    }
  }
  if (o.pass) o.detail = "max error " + fmt(worst);
  return o;
}

Outcome unit_cube() {
  Outcome o;
  double worst = 0;
  for (int r = 2; r <= 4; ++r) {
    const auto cube = eval_unit_cube_ones(r, 1e-8);
    std::vector<int> parts(static_cast<std::size_t>(r), 1);
    parts.back() = 2;
    const auto direct = eval_numeric(Composition(parts), 1e-8);
    const double err = std::abs(cube.value - direct.value);
    worst = std::max(worst, err);
    if (!(err <= 1e-6) || !cube.converged || !direct.converged) o.fail("r=" + std::to_string(r) + " differs by " + fmt(err));
  }
  if (o.pass) o.detail = "max difference " + fmt(worst);
  return o;
}

Outcome sum_formula() {
  Outcome o;
  auto closed = [](int r, int k) -> Rational {
    auto inv = [](int b, int e) { return rational_pow(Rational(b), -e); };
    if (r == 2) return 1 - inv(2, k - 2);
    if (r == 3) return Rational(1, 2) - inv(2, k - 4) + Rational(1, 2) * inv(3, k - 4);
    return Rational(1, 6) - Rational(1, 2) * inv(2, k - 6) + Rational(1, 2) * inv(3, k - 6) -
           Rational(1, 6) * inv(4, k - 6);
  };
  int exact = 0;
  for (int r = 2; r <= 4; ++r)
    for (int k = 2 * (r - 1) + 1; k <= 12; ++k, ++exact)
      if (sum_formula_rhs(r, k) != closed(r, k))
        o.fail("rhs mismatch at r=" + std::to_string(r) + " k=" + std::to_string(k));
  struct Case {
    int r, k;
    double tol;
  };
  double worst = 0;
  for (const Case c : {Case{2, 4, 1e-6}, Case{2, 6, 1e-6}, Case{3, 7, 1e-6}, Case{3, 9, 1e-6}, Case{4, 9, 1e-3}}) {
    const auto terms = sum_formula_lhs_terms(c.r, c.k);
    double total = 0;
    for (const auto& t : terms) total += std::abs(to_double(t.weight));
    const double term_tol = std::min(1e-8, c.tol / (10 * total));
    double lhs = 0;
    for (const auto& t : terms)
      if (t.weight != 0) lhs += to_double(t.weight) * eval_numeric(t.composition, term_tol).value;
    const double err = std::abs(lhs - to_double(sum_formula_rhs(c.r, c.k)));
    worst = std::max(worst, err);
    if (!(err <= c.tol)) o.fail("lhs (" + std::to_string(c.r) + "," + std::to_string(c.k) + ") off by " + fmt(err));
  }
  if (o.pass) o.detail = std::to_string(exact) + " exact right-hand sides, max numeric error " + fmt(worst);
  return o;
}

Outcome shuffle_homomorphism() {
  Outcome o;
  const auto comps = admissible_up_to(7);
  int pairs = 0;
  double worst = 0;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    for (std::size_t j = i; j < comps.size(); ++j) {
      const auto& a = comps[i];
      const auto& b = comps[j];
      if (a.weight() + b.weight() > 7) continue;
      ++pairs;
      const auto prod = shuffle(word_from_composition(a), word_from_composition(b));
      const double tol = 1e-5 / (20 * to_double(prod.mass()));
      double lhs = 0;
      for (const auto& [c, q] : z_map(prod).terms) lhs += to_double(q) * eval_numeric(c, tol).value;
      const double rhs = eval_numeric(a, tol).value * eval_numeric(b, tol).value;
      const double err = std::abs(lhs - rhs);
      worst = std::max(worst, err);
      if (!(err <= 1e-5)) o.fail(a.to_string() + " x " + b.to_string() + " off by " + fmt(err));
    }
  }
  // 2 zeta(2,2) + 4 zeta(1,3) = zeta(2)^2, symbolically
  SymbolicConstant sum;
  for (const auto& [c, q] : z_map(shuffle("yx", "yx")).terms) sum += reduce_to_basis(c).value * q;
  if (!(sum == SymbolicConstant(1))) o.fail("symbolic check gave " + sum.to_string());
  if (o.pass) o.detail = std::to_string(pairs) + " pairs, max error " + fmt(worst) + "; exact 2(1-log 2)+4(log 2/2-1/4) = 1";
  return o;
}

Outcome depth_embedding_check() {
  Outcome o;
  double worst = 0;
  int n = 0;
  for (const auto& c : admissible_up_to(5)) {
    const auto [a, b] = depth_embedding(c);
    const double err =
        std::abs(eval_numeric(c, 1e-8).value - eval_numeric(a, 1e-8).value - eval_numeric(b, 1e-8).value);
    worst = std::max(worst, err);
    ++n;
    if (!(err <= 1e-6)) o.fail(c.to_string() + " off by " + fmt(err));
  }
  if (o.pass) o.detail = std::to_string(n) + " compositions, max error " + fmt(worst);
  return o;
}

Outcome reduction() {
  Outcome o;
  double worst = 0;
  int n = 0;
  for (const auto& c : admissible_up_to(6)) {
    const auto red = reduce_to_basis(c);
    const double err = std::abs(evaluate(red.value, 1e-9).value - eval_numeric(c, 1e-9).value);
    worst = std::max(worst, err);
    ++n;
    if (!(err <= 1e-6)) o.fail(c.to_string() + " residual " + fmt(err));
    if (!red.findings.empty()) o.fail(c.to_string() + ": " + red.findings.front());
    for (const auto& [id, q] : red.value.basis()) {
      Rational s = 0;
      bool integral = true;
      for (const auto& m : id) {
        integral = integral && m.get_den() == 1;
        s += m;
      }
      if (!integral || s != c.depth()) o.fail(c.to_string() + " has a basis id not summing to its depth");
    }
  }
  for (int r = 1; r <= 10; ++r)
    if (basis_ids(r).size() != (std::size_t{1} << (r - 1))) o.fail("basis count wrong at r=" + std::to_string(r));
  if (o.pass) o.detail = std::to_string(n) + " reductions, max residual " + fmt(worst) + "; counts 2^(r-1) for r<=10";
  return o;
}

Outcome convergence_bound_check() {
  Outcome o;
  int n = 0, at_bound = 0;
  std::string first;
  for (const auto& c : admissible_up_to(6)) {
    const double v = eval_numeric(c, default_tolerance(c.depth())).value;
    const double bound = convergence_bound(as_reals(c));
    ++n;
    if (!(v > 0 && v < bound)) {
      ++at_bound;
      if (first.empty()) first = c.to_string() + " value " + fmt(v) + " bound " + fmt(bound);
    }
  }
  if (at_bound) o.fail(std::to_string(at_bound) + " of " + std::to_string(n) + " not strictly below the bound, first " + first);
  else o.detail = std::to_string(n) + " compositions strictly inside (0, bound)";
  return o;
}

Outcome poles() {
  Outcome o;
  for (int k = 1; k <= 8; ++k) {
    std::set<Hyperplane> expected;
    for (int j = 0; j < k; ++j) expected.insert(Hyperplane{{1}, 1 - j});
    if (pole_hyperplanes(1, k) != expected) o.fail("depth-1 set wrong at k_max=" + std::to_string(k));
  }
  std::size_t perms = 0;
  for (int r = 1; r <= 6; ++r) {
    std::vector<int> sigma(static_cast<std::size_t>(r));
    std::iota(sigma.begin(), sigma.end(), 1);
    do {
      const auto m = perm_min_sequence(sigma);
      ++perms;
      if (m.back() != 1 || !std::is_sorted(m.rbegin(), m.rend())) o.fail("running minima wrong");
    } while (std::next_permutation(sigma.begin(), sigma.end()));
  }
  if (o.pass) o.detail = "depth-1 sets {1,0,...,1-j} for k_max<=8; " + std::to_string(perms) + " permutations checked";
  return o;
}

} // namespace

int main() {
  run(1, "depth-1 values 1/k within 1e-9, k=1..8", 1.0, depth_one);
  run(2, "zeta(1,2) = log 2 and shifted depth-2 closed form within 1e-8", 0, depth_two);
  run(3, "unit cube vs semi-infinite quadrature within 1e-6, r=2..4", 60.0, unit_cube);
  run(4, "sum formula: exact right sides, numeric left sides", 600.0, sum_formula);
  run(5, "shuffle homomorphism within 1e-5, total weight <= 7", 0, shuffle_homomorphism);
  run(6, "depth embedding within 1e-6, weight <= 5", 0, depth_embedding_check);
  run(7, "reduction residual within 1e-6, basis ids, 2^(r-1) count", 0, reduction);
  run(8, "0 < value < convergence bound, weight <= 6", 0, convergence_bound_check);
  run(9, "depth-1 pole candidates and running-minimum properties", 0, poles);
  std::printf("%d of 9 criteria failed\n", failures);
  return failures;
}
