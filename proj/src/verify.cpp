#include "cmzv/verify.hpp"

#include "cmzv/errors.hpp"
#include "cmzv/etaspace.hpp"
#include "cmzv/poles.hpp"
#include "cmzv/shuffle.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

namespace cmzv {

std::size_t VerifyReport::failures() const {
  return static_cast<std::size_t>(
      std::count_if(checks.begin(), checks.end(), [](const CheckResult& c) { return !c.pass; }));
}

namespace {

using Task = std::function<CheckResult()>;

// Memoizes quadrature results shared between checks (a composition shows up in
// many shuffle products). Two threads may race to fill the same key; both
// compute the same value and the first insert wins.
class NumericCache {
public:
  explicit NumericCache(int depth_cap) : depth_cap_(depth_cap) {}

  NumericResult get(const ShiftedCMZV& v, double tol) {
    std::ostringstream key;
    key << v.to_string() << '@' << tol;
    {
      std::lock_guard lock(mutex_);
      if (auto it = memo_.find(key.str()); it != memo_.end()) return it->second;
    }
    NumericResult res = eval_numeric(v, tol, depth_cap_);
    std::lock_guard lock(mutex_);
    return memo_.emplace(key.str(), res).first->second;
  }

  NumericResult get(const Composition& c, double tol) { return get(ShiftedCMZV::unshifted(c), tol); }

private:
  int depth_cap_;
  std::mutex mutex_;
  std::map<std::string, NumericResult> memo_;
};

struct Context {
  VerifyOptions options;
  NumericCache cache;
  std::map<Integer, double> log_offsets;
  ReduceOptions reduce_options;

  explicit Context(const VerifyOptions& o) : options(o), cache(o.depth_cap) {
    if (o.corrupt) log_offsets[Integer(2)] = 1e-3;
    reduce_options.depth_cap = o.depth_cap;
    reduce_options.step_budget = o.step_budget;
  }

  int weight(int fallback) const { return options.max_weight > 0 ? options.max_weight : fallback; }
  double tol(double fallback) const { return options.tolerance > 0 ? options.tolerance : fallback; }
};

CheckResult numeric_check(std::string suite, std::string name, double lhs, double rhs, double tol,
                          bool converged = true) {
  CheckResult r;
  r.suite = std::move(suite);
  r.name = std::move(name);
  r.lhs = lhs;
  r.rhs = rhs;
  r.discrepancy = std::abs(lhs - rhs);
  r.tolerance = tol;
  r.pass = converged && std::isfinite(r.discrepancy) && r.discrepancy <= tol;
  if (!converged) r.detail = "quadrature did not converge";
  return r;
}

CheckResult exact_check(std::string suite, std::string name, const Rational& lhs, const Rational& rhs) {
  CheckResult r;
  r.suite = std::move(suite);
  r.name = std::move(name);
  r.lhs = to_double(lhs);
  r.rhs = to_double(rhs);
  r.discrepancy = std::abs(to_double(Rational(lhs - rhs)));
  r.pass = lhs == rhs;
  r.detail = "exact: " + to_display_string(lhs) + " vs " + to_display_string(rhs);
  return r;
}

CheckResult flag_check(std::string suite, std::string name, bool ok, std::string detail) {
  CheckResult r;
  r.suite = std::move(suite);
  r.name = std::move(name);
  r.pass = ok;
  r.detail = std::move(detail);
  return r;
}

// Sum of coeff * zeta over a Z-image, each term evaluated at `term_tol`.
NumericResult z_value(Context& ctx, const ZImage& img, double term_tol) {
  NumericResult out;
  out.value = to_double(img.constant);
  for (const auto& [c, q] : img.terms) {
    auto res = ctx.cache.get(c, term_tol);
    const double w = to_double(q);
    out.value += w * res.value;
    out.error_estimate += std::abs(w) * res.error_estimate;
    out.converged = out.converged && res.converged;
  }
  return out;
}

void shuffle_suite(Context& ctx, std::vector<Task>& tasks) {
  const int max_w = ctx.weight(7);
  const double tol = ctx.tol(1e-5);
  std::vector<Composition> comps;
  for (int w = 2; w <= max_w; ++w)
    for (auto& c : admissible_compositions(w)) comps.push_back(c);

  for (std::size_t i = 0; i < comps.size(); ++i) {
    for (std::size_t j = i; j < comps.size(); ++j) {
      const Composition a = comps[i], b = comps[j];
      if (a.weight() + b.weight() > max_w) continue;
      tasks.push_back([&ctx, a, b, tol] {
        const auto prod = shuffle(word_from_composition(a), word_from_composition(b));
        const auto img = z_map(prod);
        const double term_tol = tol / (20.0 * std::max(1.0, to_double(prod.mass())));
        auto lhs = z_value(ctx, img, term_tol);
        auto za = ctx.cache.get(a, term_tol);
        auto zb = ctx.cache.get(b, term_tol);
        return numeric_check("shuffle", a.to_string() + " x " + b.to_string(), lhs.value,
                             za.value * zb.value, tol,
                             lhs.converged && za.converged && zb.converged);
      });
    }
  }

  // Depth-1 pairs also hold exactly after reduction: zeta(a) zeta(b) = 1/((a-1)(b-1)).
  for (int a = 2; a <= max_w; ++a) {
    for (int b = a; a + b <= max_w; ++b) {
      tasks.push_back([&ctx, a, b] {
        const auto img = z_map(shuffle(word_from_composition(Composition({a})),
                                       word_from_composition(Composition({b}))));
        SymbolicConstant sum(img.constant);
        for (const auto& [c, q] : img.terms) sum += reduce_to_basis(c, ctx.reduce_options).value * q;
        const Rational expected = Rational(1) / Rational((a - 1) * (b - 1));
        CheckResult r;
        r.suite = "shuffle";
        r.name = "exact (" + std::to_string(a) + ") x (" + std::to_string(b) + ")";
        const double got = evaluate(sum, 1e-10, ctx.options.depth_cap, ctx.log_offsets).value;
        r.lhs = got;
        r.rhs = to_double(expected);
        r.discrepancy = std::abs(got - r.rhs);
        r.pass = sum == SymbolicConstant(expected) && ctx.log_offsets.empty();
        r.detail = sum.to_string();
        if (!ctx.log_offsets.empty()) {
          // The symbolic identity cannot be perturbed; fall back to the
          // evaluated form so a corrupted constant is still detected.
          r.pass = r.discrepancy <= 1e-12;
        }
        return r;
      });
    }
  }
}

void embedding_suite(Context& ctx, std::vector<Task>& tasks) {
  const int max_w = ctx.weight(5);
  const double tol = ctx.tol(1e-6);
  for (int w = 2; w <= max_w; ++w) {
    for (const auto& c : admissible_compositions(w)) {
      tasks.push_back([&ctx, c, tol] {
        const auto [lowered, kept] = depth_embedding(c);
        auto v = ctx.cache.get(c, tol / 10);
        auto v1 = ctx.cache.get(lowered, tol / 10);
        auto v2 = ctx.cache.get(kept, tol / 10);
        auto r = numeric_check("embedding", c.to_string(), v.value, v1.value + v2.value, tol,
                               v.converged && v1.converged && v2.converged);
        r.detail = lowered.to_string() + " + " + kept.to_string() + (r.detail.empty() ? "" : "; " + r.detail);
        return r;
      });
    }
  }
}

void unitcube_suite(Context& ctx, std::vector<Task>& tasks) {
  const int max_r = std::max(4, ctx.options.max_weight > 0 ? ctx.options.max_weight - 1 : 4);
  const double tol = ctx.tol(1e-6);
  for (int r = 2; r <= std::min(max_r, ctx.options.depth_cap); ++r) {
    tasks.push_back([&ctx, r, tol] {
      auto cube = eval_unit_cube_ones(r, tol / 10, ctx.options.depth_cap);
      std::vector<int> parts(static_cast<std::size_t>(r), 1);
      parts.back() = 2;
      auto direct = ctx.cache.get(Composition(parts), tol / 10);
      return numeric_check("unitcube", "r=" + std::to_string(r), cube.value, direct.value, tol,
                           cube.converged && direct.converged);
    });
  }
}

void bounds_suite(Context& ctx, std::vector<Task>& tasks) {
  const int max_w = ctx.weight(6);
  for (int w = 2; w <= max_w; ++w) {
    for (const auto& c : admissible_compositions(w)) {
      tasks.push_back([&ctx, c] {
        const double tol = ctx.tol(default_tolerance(c.depth()));
        auto v = ctx.cache.get(c, tol);
        const auto sigma = as_reals(c);
        const double bound = convergence_bound(sigma);
        CheckResult r;
        r.suite = "bounds";
        r.name = c.to_string();
        r.lhs = v.value;
        r.rhs = bound;
        r.discrepancy = bound - v.value;
        r.pass = v.converged && v.value > 0 && v.value < bound;
        r.detail = "0 < value < bound";
        return r;
      });
    }
  }
}

void reduction_suite(Context& ctx, std::vector<Task>& tasks) {
  const int max_w = ctx.weight(6);
  const double tol = ctx.tol(1e-6);
  for (int w = 2; w <= max_w; ++w) {
    for (const auto& c : admissible_compositions(w)) {
      tasks.push_back([&ctx, c, tol] {
        auto red = reduce_to_basis(c, ctx.reduce_options);
        auto reduced = evaluate(red.value, tol / 10, ctx.options.depth_cap, ctx.log_offsets);
        auto direct = ctx.cache.get(c, tol / 10);
        auto r = numeric_check("reduction", c.to_string(), reduced.value, direct.value, tol,
                               reduced.converged && direct.converged);
        for (const auto& [id, q] : red.value.basis()) {
          Rational sum = 0;
          bool integral = true;
          for (const auto& m : id) {
            integral = integral && m.get_den() == 1 && m > 0;
            sum += m;
          }
          if (!integral || sum != c.depth()) red.findings.push_back("basis id does not partition the depth");
        }
        if (!red.findings.empty()) {
          r.pass = false;
          for (const auto& f : red.findings) r.detail += (r.detail.empty() ? "" : "; ") + f;
        } else if (r.detail.empty()) {
          r.detail = red.value.to_string();
        }
        return r;
      });
    }
  }
  for (int r = 1; r <= 10; ++r) {
    tasks.push_back([r] {
      const auto ids = basis_ids(r);
      bool ok = ids.size() == (std::size_t{1} << (r - 1));
      for (const auto& id : ids) {
        int s = 0;
        for (int m : id) s += m;
        ok = ok && s == r && id.back() > 0;
      }
      return flag_check("reduction", "basis count r=" + std::to_string(r), ok,
                        std::to_string(ids.size()) + " ids");
    });
  }
}

void sumformula_suite(Context& ctx, std::vector<Task>& tasks) {
  // Closed forms for depths 2, 3, 4 as functions of the total weight k.
  auto closed = [](int r, int k) -> Rational {
    auto inv_pow = [](int base, int e) { return rational_pow(Rational(base), -e); };
    switch (r) {
    case 2:
      return 1 - inv_pow(2, k - 2);
    case 3:
      return Rational(1, 2) - inv_pow(2, k - 4) + Rational(1, 2) * inv_pow(3, k - 4);
    default:
      return Rational(1, 6) - Rational(1, 2) * inv_pow(2, k - 6) + Rational(1, 2) * inv_pow(3, k - 6) -
             Rational(1, 6) * inv_pow(4, k - 6);
    }
  };
  for (int r = 2; r <= 4; ++r) {
    for (int k = 2 * (r - 1) + 1; k <= 12; ++k) {
      tasks.push_back([r, k, closed] {
        return exact_check("sumformula", "rhs r=" + std::to_string(r) + " k=" + std::to_string(k),
                           sum_formula_rhs(r, k), closed(r, k));
      });
    }
  }

  struct Case {
    int r, k;
    double tol;
  };
  const std::vector<Case> cases = {{2, 4, 1e-6}, {2, 6, 1e-6}, {3, 7, 1e-6}, {3, 9, 1e-6}, {4, 9, 1e-3}};
  for (const auto& cs : cases) {
    if (cs.r > ctx.options.depth_cap) continue;
    tasks.push_back([&ctx, cs] {
      const double tol = ctx.tol(cs.tol);
      const auto terms = sum_formula_lhs_terms(cs.r, cs.k);
      double total_weight = 0;
      for (const auto& t : terms) total_weight += std::abs(to_double(t.weight));
      const double term_tol = std::min(1e-8, tol / (10.0 * std::max(1.0, total_weight)));
      double lhs = 0;
      bool converged = true;
      for (const auto& t : terms) {
        if (t.weight == 0) continue;
        auto v = ctx.cache.get(t.composition, term_tol);
        lhs += to_double(t.weight) * v.value;
        converged = converged && v.converged;
      }
      return numeric_check("sumformula", "lhs r=" + std::to_string(cs.r) + " k=" + std::to_string(cs.k),
                           lhs, to_double(sum_formula_rhs(cs.r, cs.k)), tol, converged);
    });
  }
}

Rational random_rational(std::mt19937_64& rng, int num_max, int den_max) {
  std::uniform_int_distribution<int> num(1, num_max), den(1, den_max);
  Rational q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

void eta_suite(Context& ctx, std::vector<Task>& tasks) {
  std::mt19937_64 rng(ctx.options.seed);
  std::uniform_int_distribution<int> K(2, 7), c(1, 6);
  for (int i = 0; i < 20; ++i) {
    const int k = K(rng), cc = c(rng);
    const Rational x = random_rational(rng, 50, 17);
    tasks.push_back([k, cc, x] {
      return exact_check("eta",
                         "telescoping K=" + std::to_string(k) + " c=" + std::to_string(cc) +
                             " x=" + to_display_string(x),
                         telescoping_lhs(k, Rational(cc), x), telescoping_rhs(k, Rational(cc), x));
    });
  }
  std::uniform_int_distribution<int> shift(0, 4), expo(1, 4), coef(-9, 9);
  for (int i = 0; i < 20; ++i) {
    VElement u, v;
    for (int j = 0; j < 3; ++j) {
      u.add({shift(rng), expo(rng)}, Rational(coef(rng)));
      v.add({shift(rng), expo(rng)}, Rational(coef(rng)));
    }
    const Rational a = random_rational(rng, 9, 5), b = random_rational(rng, 9, 5);
    const Rational t = random_rational(rng, 30, 7);
    tasks.push_back([u, v, a, b, t, i] {
      const VElement lhs = eta(u * a + v * b);
      const VElement rhs = eta(u) * a + eta(v) * b;
      auto r = exact_check("eta", "linearity #" + std::to_string(i), eval_at(lhs, t), eval_at(rhs, t));
      r.pass = r.pass && lhs == rhs;
      return r;
    });
  }
}

void poles_suite(Context&, std::vector<Task>& tasks) {
  for (int k_max = 1; k_max <= 8; ++k_max) {
    tasks.push_back([k_max] {
      std::set<Hyperplane> expected;
      for (int j = 0; j < k_max; ++j) expected.insert(Hyperplane{{1}, 1 - j});
      const auto got = pole_hyperplanes(1, k_max);
      const bool has_true_pole = got.contains(Hyperplane{{1}, 1});
      std::vector<std::vector<double>> samples;
      for (int i = 1; i <= 40; ++i) samples.push_back({1.0 + 0.25 * i});
      bool disjoint = true;
      for (const auto& h : got) disjoint = disjoint && !hyperplane_meets_domain(h, samples, 0.0);
      return flag_check("poles", "depth-1 candidates k_max=" + std::to_string(k_max),
                        got == expected && has_true_pole && disjoint,
                        std::to_string(got.size()) + " hyperplanes");
    });
  }
  for (int r = 1; r <= 6; ++r) {
    tasks.push_back([r] {
      std::vector<int> sigma(static_cast<std::size_t>(r));
      for (int i = 0; i < r; ++i) sigma[static_cast<std::size_t>(i)] = i + 1;
      std::size_t count = 0;
      bool ok = true;
      do {
        const auto m = perm_min_sequence(sigma);
        ok = ok && m.size() == sigma.size() && m.front() == sigma.front() && m.back() == 1 &&
             std::is_sorted(m.rbegin(), m.rend());
        ++count;
      } while (std::next_permutation(sigma.begin(), sigma.end()));
      return flag_check("poles", "running minima r=" + std::to_string(r), ok,
                        std::to_string(count) + " permutations");
    });
  }
  tasks.push_back([] {
    const double v = depth1_value(3.0);
    return numeric_check("poles", "depth-1 value at s=3", v, 0.5, 1e-15);
  });
}

void anchors_suite(Context& ctx, std::vector<Task>& tasks) {
  const double tol = ctx.tol(1e-8);
  for (int m1 = 1; m1 <= 5; ++m1) {
    for (int m2 = 1; m1 + m2 <= 6; ++m2) {
      tasks.push_back([&ctx, m1, m2, tol] {
        ShiftedCMZV v{{Rational(m1), Rational(m2)}, Composition({1, 2})};
        auto numeric = ctx.cache.get(v, tol / 10);
        auto closed = evaluate(depth2_basis_value(Rational(m1), Rational(m2)), tol, ctx.options.depth_cap,
                               ctx.log_offsets);
        return numeric_check("anchors", v.to_string(), numeric.value, closed.value, tol, numeric.converged);
      });
    }
  }
  for (int k = 1; k <= 8; ++k) {
    tasks.push_back([&ctx, k, tol] {
      auto v = ctx.cache.get(Composition({k + 1}), tol / 10);
      return numeric_check("anchors", "(" + std::to_string(k + 1) + ")", v.value, 1.0 / k, tol, v.converged);
    });
  }
}

using SuiteFn = void (*)(Context&, std::vector<Task>&);

const std::vector<std::pair<std::string, SuiteFn>>& suite_table() {
  static const std::vector<std::pair<std::string, SuiteFn>> table = {
      {"shuffle", shuffle_suite},       {"embedding", embedding_suite}, {"unitcube", unitcube_suite},
      {"bounds", bounds_suite},         {"reduction", reduction_suite}, {"sumformula", sumformula_suite},
      {"eta", eta_suite},               {"poles", poles_suite},         {"anchors", anchors_suite},
  };
  return table;
}

} // namespace

std::vector<std::string> verification_suites() {
  std::vector<std::string> out;
  for (const auto& [name, fn] : suite_table()) out.push_back(name);
  return out;
}

VerifyReport run_verification(std::string_view suite, const VerifyOptions& options) {
  if (options.jobs < 1) throw invalid_input("jobs must be >= 1");
  if (options.depth_cap < 1) throw invalid_input("depth cap must be >= 1");
  if (options.tolerance < 0) throw invalid_input("tolerance must be positive");
  if (options.max_weight < 0) throw invalid_input("max weight must be positive");

  Context ctx(options);
  std::vector<Task> tasks;
  bool found = false;
  for (const auto& [name, fn] : suite_table()) {
    if (suite == "all" || suite == name) {
      fn(ctx, tasks);
      found = true;
    }
  }
  if (!found) throw invalid_input("unknown verification suite '" + std::string(suite) + "'");

  std::vector<CheckResult> results(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      try {
        results[i] = tasks[i]();
      } catch (const std::exception& e) {
        results[i].name = "task #" + std::to_string(i);
        results[i].pass = false;
        results[i].detail = e.what();
      }
    }
  };
  const auto n = std::min<std::size_t>(static_cast<std::size_t>(options.jobs), tasks.size());
  if (n <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t i = 0; i < n; ++i) pool.emplace_back(worker);
  }
  return VerifyReport{std::move(results)};
}

} // namespace cmzv
