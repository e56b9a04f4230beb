#include "cmzv/reduce.hpp"

#include "cmzv/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

namespace cmzv {

// ---------------------------------------------------------------- GenTerm

GenTerm GenTerm::from(const ShiftedCMZV& v) {
  v.validate();
  GenTerm t;
  t.bounds = v.bounds;
  for (int i = 0; i < v.exponents.depth(); ++i)
    t.factors.push_back({i + 1, Rational(0), v.exponents[static_cast<std::size_t>(i)]});
  return t;
}

GenTerm GenTerm::from(const Composition& c) { return from(ShiftedCMZV::unshifted(c)); }

int GenTerm::weight() const noexcept {
  int w = 0;
  for (const auto& f : factors) w += f.exponent;
  return w;
}

void GenTerm::canonicalize() {
  std::sort(factors.begin(), factors.end(), [](const Factor& a, const Factor& b) {
    if (a.index != b.index) return a.index < b.index;
    return a.shift < b.shift;
  });
  std::vector<Factor> merged;
  for (const auto& f : factors) {
    if (!merged.empty() && merged.back().index == f.index && merged.back().shift == f.shift)
      merged.back().exponent += f.exponent;
    else
      merged.push_back(f);
  }
  factors = std::move(merged);
}

bool GenTerm::is_convergent() const {
  const int s = variables();
  std::vector<int> per_index(static_cast<std::size_t>(s) + 1, 0);
  for (const auto& f : factors) {
    if (f.index < 1 || f.index > s || f.exponent < 1) return false;
    per_index[static_cast<std::size_t>(f.index)] += f.exponent;
  }
  int suffix = 0;
  for (int j = s; j >= 1; --j) {
    if (per_index[static_cast<std::size_t>(j)] == 0) return false;
    suffix += per_index[static_cast<std::size_t>(j)];
    if (suffix < s - j + 2) return false;
  }
  return true;
}

std::string GenTerm::to_string() const {
  std::ostringstream out;
  out << coeff.get_str() << " * I[";
  for (std::size_t i = 0; i < bounds.size(); ++i) out << (i ? "," : "") << bounds[i].get_str();
  out << "](";
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const auto& f = factors[i];
    out << (i ? " " : "") << "(P" << f.index;
    if (f.shift != 0) out << '+' << f.shift.get_str();
    out << ")^" << f.exponent;
  }
  out << ')';
  return out.str();
}

void absorb_shifts(GenTerm& t) {
  const int s = t.variables();
  if (s == 0) return;
  std::vector<std::optional<Rational>> mu(static_cast<std::size_t>(s) + 2);
  for (const auto& f : t.factors) {
    auto& slot = mu[static_cast<std::size_t>(f.index)];
    if (!slot || f.shift < *slot) slot = f.shift;
  }
  for (int i = s - 1; i >= 1; --i) {
    const auto& next = mu[static_cast<std::size_t>(i + 1)];
    auto& cur = mu[static_cast<std::size_t>(i)];
    if (!cur || (next && *next < *cur)) cur = next;
  }
  for (int i = 1; i <= s; ++i)
    if (!mu[static_cast<std::size_t>(i)]) throw rewrite_error("term has no factor for its last variable");
  Rational previous = 0;
  for (int i = 1; i <= s; ++i) {
    const Rational& m = *mu[static_cast<std::size_t>(i)];
    t.bounds[static_cast<std::size_t>(i - 1)] += m - previous;
    previous = m;
  }
  for (auto& f : t.factors) f.shift -= *mu[static_cast<std::size_t>(f.index)];
}

// ------------------------------------------------------ integration by parts

std::vector<GenTerm> ibp_at(const GenTerm& t, int index) {
  const int s = t.variables();
  if (index < 1 || index > s) throw rewrite_error("ibp: variable index out of range");
  const Factor* pivot = nullptr;
  for (const auto& f : t.factors) {
    if (f.index != index) continue;
    if (pivot) throw rewrite_error("ibp: variable " + std::to_string(index) + " carries several factors");
    pivot = &f;
  }
  if (!pivot) throw rewrite_error("ibp: variable " + std::to_string(index) + " carries no factor");
  const int a = pivot->exponent;
  if (a < 2) throw rewrite_error("ibp: pivot exponent must be at least 2");
  const Rational& m = t.bounds[static_cast<std::size_t>(index - 1)];

  std::vector<GenTerm> out;

  GenTerm boundary;
  boundary.coeff = t.coeff / Rational(a - 1);
  for (int i = 1; i <= s; ++i)
    if (i != index) boundary.bounds.push_back(t.bounds[static_cast<std::size_t>(i - 1)]);
  for (const auto& f : t.factors) {
    if (f.index < index) {
      boundary.factors.push_back(f);
    } else if (f.index == index) {
      if (index > 1)
        boundary.factors.push_back({index - 1, f.shift + m, a - 1});
      else
        boundary.coeff *= rational_pow(f.shift + m, 1 - a);
    } else {
      boundary.factors.push_back({f.index - 1, f.shift + m, f.exponent});
    }
  }
  boundary.canonicalize();
  absorb_shifts(boundary);
  out.push_back(std::move(boundary));

  for (std::size_t j = 0; j < t.factors.size(); ++j) {
    const auto& f = t.factors[j];
    if (f.index <= index) continue;
    GenTerm d = t;
    d.coeff *= Rational(-f.exponent) / Rational(a - 1);
    for (auto& g : d.factors)
      if (g.index == index) g.exponent -= 1;
    d.factors[j].exponent += 1;
    d.canonicalize();
    out.push_back(std::move(d));
  }
  return out;
}

std::vector<GenTerm> ibp_step(const GenTerm& t) {
  for (const auto& f : t.factors)
    if (f.index == 1 && f.shift != 0) throw rewrite_error("ibp_step: first factor must have shift 0");
  return ibp_at(t, 1);
}

// --------------------------------------------------------- partial fractions

namespace {

Integer binomial(long n, long k) {
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return out;
}

} // namespace

std::vector<PartialFraction> partial_fractions(std::span<const std::pair<Rational, int>> factors) {
  if (factors.empty()) throw invalid_input("partial_fractions needs at least one factor");
  std::map<Rational, int> merged;
  for (const auto& [c, a] : factors) {
    if (a < 1) throw invalid_input("partial_fractions: exponents must be positive");
    merged[c] += a;
  }
  std::vector<PartialFraction> out;
  for (const auto& [cj, aj] : merged) {
    // Laurent expansion around u = -cj in t = u + cj: the other factors
    // (t + d)^{-a} with d = ci - cj, as a power series truncated at t^{aj-1}.
    std::vector<Rational> series(static_cast<std::size_t>(aj), Rational(0));
    series[0] = 1;
    for (const auto& [ci, ai] : merged) {
      if (ci == cj) continue;
      const Rational d = ci - cj;
      std::vector<Rational> factor(static_cast<std::size_t>(aj));
      for (int n = 0; n < aj; ++n) {
        Rational coeff(binomial(ai + n - 1, n));
        if (n % 2 == 1) coeff = -coeff;
        factor[static_cast<std::size_t>(n)] = coeff * rational_pow(d, -(ai + n));
      }
      std::vector<Rational> product(static_cast<std::size_t>(aj), Rational(0));
      for (int p = 0; p < aj; ++p)
        for (int q = 0; p + q < aj; ++q)
          product[static_cast<std::size_t>(p + q)] +=
              series[static_cast<std::size_t>(p)] * factor[static_cast<std::size_t>(q)];
      series = std::move(product);
    }
    for (int e = aj; e >= 1; --e) {
      const Rational& coeff = series[static_cast<std::size_t>(aj - e)];
      if (coeff != 0) out.push_back({cj, e, coeff});
    }
  }
  std::sort(out.begin(), out.end(), [](const PartialFraction& x, const PartialFraction& y) {
    if (x.shift != y.shift) return x.shift < y.shift;
    return x.exponent < y.exponent;
  });
  return out;
}

// -------------------------------------------------------- SymbolicConstant

void SymbolicConstant::add_log_prime(const Integer& p, const Rational& coeff) {
  if (coeff == 0) return;
  auto [it, inserted] = logs_.try_emplace(p, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) logs_.erase(it);
  }
}

void SymbolicConstant::add_log(const Rational& arg, const Rational& coeff) {
  if (arg <= 0) throw domain_error("logarithm of a non-positive number");
  if (coeff == 0) return;
  for (const auto& [p, e] : factor_rational(arg))
    if (e != 0) add_log_prime(p, coeff * e);
}

void SymbolicConstant::add_basis(const BasisId& id, const Rational& coeff) {
  if (coeff == 0) return;
  auto [it, inserted] = basis_.try_emplace(id, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) basis_.erase(it);
  }
}

SymbolicConstant& SymbolicConstant::operator+=(const SymbolicConstant& other) {
  rational_ += other.rational_;
  for (const auto& [p, c] : other.logs_) add_log_prime(p, c);
  for (const auto& [id, c] : other.basis_) add_basis(id, c);
  return *this;
}

SymbolicConstant SymbolicConstant::operator*(const Rational& scalar) const {
  SymbolicConstant out;
  if (scalar == 0) return out;
  out.rational_ = rational_ * scalar;
  for (const auto& [p, c] : logs_) out.logs_.emplace(p, c * scalar);
  for (const auto& [id, c] : basis_) out.basis_.emplace(id, c * scalar);
  return out;
}

std::string SymbolicConstant::to_string() const {
  std::ostringstream out;
  bool first = true;
  auto emit = [&](const Rational& c, const std::string& symbol) {
    const Rational mag = abs(c);
    out << (first ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + "));
    first = false;
    if (symbol.empty())
      out << mag.get_str();
    else if (mag == 1)
      out << symbol;
    else
      out << mag.get_str() << '*' << symbol;
  };
  if (rational_ != 0) emit(rational_, "");
  for (const auto& [p, c] : logs_) emit(c, "log " + p.get_str());
  for (const auto& [id, c] : basis_) {
    std::string sym = "B(";
    for (std::size_t i = 0; i < id.size(); ++i) sym += (i ? "," : "") + id[i].get_str();
    emit(c, sym + ")");
  }
  if (first) return "0";
  return out.str();
}

SymbolicConstant integrate_tail(std::span<const PartialFraction> expansion, const Rational& m) {
  if (m <= 0) throw domain_error("integrate_tail: lower bound must be positive");
  SymbolicConstant out;
  Rational log_mass = 0;
  for (const auto& pf : expansion) {
    const Rational base = m + pf.shift;
    if (base <= 0) throw domain_error("integrate_tail: pole inside the integration range");
    if (pf.exponent == 1) {
      log_mass += pf.coeff;
      // integral from m to inf of sum c/(u + shift) = -sum c log(m + shift)
      out.add_log(base, -pf.coeff);
    } else {
      out.add_rational(pf.coeff * rational_pow(base, 1 - pf.exponent) / Rational(pf.exponent - 1));
    }
  }
  if (log_mass != 0)
    throw divergence_error("integrate_tail: 1/u terms do not cancel (coefficient sum " +
                           log_mass.get_str() + ")");
  return out;
}

// ---------------------------------------------------------------- reduction

namespace {

std::vector<std::pair<Rational, int>> factors_at(const GenTerm& t, int index) {
  std::vector<std::pair<Rational, int>> out;
  for (const auto& f : t.factors)
    if (f.index == index) out.emplace_back(f.shift, f.exponent);
  return out;
}

// After partial fractions every inner variable carries one factor. Shift
// P_i by that factor's shift (the least shift for the last variable); the
// bound of v_i moves by sigma_i - sigma_{i-1}, which may be negative. Returns
// false when some bound would stop being positive.
bool align_shifts(GenTerm& t) {
  const int s = t.variables();
  std::vector<std::optional<Rational>> sigma(static_cast<std::size_t>(s) + 1);
  for (const auto& f : t.factors) {
    auto& slot = sigma[static_cast<std::size_t>(f.index)];
    if (!slot || f.shift < *slot) slot = f.shift;
  }
  std::vector<Rational> bounds = t.bounds;
  Rational previous = 0;
  for (int i = 1; i <= s; ++i) {
    const auto& cur = sigma[static_cast<std::size_t>(i)];
    if (!cur) return false;
    bounds[static_cast<std::size_t>(i - 1)] += *cur - previous;
    if (bounds[static_cast<std::size_t>(i - 1)] <= 0) return false;
    previous = *cur;
  }
  t.bounds = std::move(bounds);
  for (auto& f : t.factors) f.shift -= *sigma[static_cast<std::size_t>(f.index)];
  return true;
}

GenTerm with_index_replaced(const GenTerm& t, int index, std::vector<Factor> replacement,
                            const Rational& coeff_scale) {
  GenTerm out;
  out.coeff = t.coeff * coeff_scale;
  out.bounds = t.bounds;
  for (const auto& f : t.factors)
    if (f.index != index) out.factors.push_back(f);
  for (auto& f : replacement) out.factors.push_back(std::move(f));
  out.canonicalize();
  return out;
}

} // namespace

Reduction reduce_term(const GenTerm& start, const ReduceOptions& options) {
  if (start.variables() > options.depth_cap)
    throw capacity_error("depth " + std::to_string(start.variables()) + " exceeds the configured cap " +
                         std::to_string(options.depth_cap));
  if (!start.is_convergent()) throw divergence_error("term does not converge: " + start.to_string());

  Reduction out;
  std::vector<GenTerm> work{start};
  while (!work.empty()) {
    GenTerm cur = std::move(work.back());
    work.pop_back();
    if (++out.steps > options.step_budget)
      throw capacity_error("reduction exceeded the step budget of " + std::to_string(options.step_budget) +
                           " terms");
    cur.canonicalize();
    if (cur.coeff == 0) continue;
    const int s = cur.variables();

    if (s == 0) {
      out.value.add_rational(cur.coeff);
      continue;
    }
    if (s == 1) {
      const auto pf = partial_fractions(factors_at(cur, 1));
      out.value += integrate_tail(pf, cur.bounds[0]) * cur.coeff;
      continue;
    }

    // Inner variables: one factor each, via partial fractions.
    bool split = false;
    for (int i = 1; i < s && !split; ++i) {
      const auto fs = factors_at(cur, i);
      if (fs.size() < 2) continue;
      for (const auto& pf : partial_fractions(fs))
        work.push_back(with_index_replaced(cur, i, {{i, pf.shift, pf.exponent}}, pf.coeff));
      split = true;
    }
    if (split) continue;

    if (!align_shifts(cur))
      throw rewrite_error("shifts cannot be moved into positive bounds: " + cur.to_string());

    const auto last = factors_at(cur, s);
    if (last.size() == 2 && last[0].second == 1 && last[1].second == 1) {
      // 1/(P (P + d)) = (1/P) * integral over w in [d, inf) of (P + w)^-2:
      // reintroduce that variable.
      const Rational d = last[1].first - last[0].first;
      GenTerm grown = with_index_replaced(cur, s, {{s, Rational(0), 1}, {s + 1, Rational(0), 2}}, 1);
      grown.bounds.push_back(d);
      work.push_back(std::move(grown));
      continue;
    }
    if (last.size() >= 2) {
      // Keep the 1/u pieces in convergent pairs around the smallest shift.
      const auto pf = partial_fractions(last);
      std::optional<Rational> anchor;
      Rational mass = 0;
      for (const auto& piece : pf) {
        if (piece.exponent == 1) {
          mass += piece.coeff;
          if (!anchor || piece.shift < *anchor) anchor = piece.shift;
        } else {
          work.push_back(with_index_replaced(cur, s, {{s, piece.shift, piece.exponent}}, piece.coeff));
        }
      }
      if (mass != 0) throw rewrite_error("divergent innermost expansion in " + cur.to_string());
      for (const auto& piece : pf) {
        if (piece.exponent != 1 || piece.shift == *anchor) continue;
        // beta/(P+c) - beta/(P+c0) = beta (c0 - c) / ((P+c)(P+c0))
        work.push_back(with_index_replaced(cur, s, {{s, *anchor, 1}, {s, piece.shift, 1}},
                                           piece.coeff * (*anchor - piece.shift)));
      }
      continue;
    }

    int pivot = 0;
    for (const auto& f : cur.factors)
      if (f.index < s && f.exponent >= 2) {
        pivot = f.index;
        break;
      }
    if (pivot != 0) {
      for (auto& t : ibp_at(cur, pivot)) work.push_back(std::move(t));
      continue;
    }
    const int e = last.front().second;
    if (e == 2 && s >= 3) {
      out.value.add_basis(cur.bounds, cur.coeff);
      continue;
    }
    for (auto& t : ibp_at(cur, s)) work.push_back(std::move(t));
  }
  return out;
}

Reduction reduce_to_basis(const Composition& c, const ReduceOptions& options) {
  if (!is_admissible(c))
    throw divergence_error("composition " + c.to_string() + " is not admissible");
  Reduction out = reduce_term(GenTerm::from(c), options);
  for (const auto& [id, coeff] : out.value.basis()) {
    Rational total = 0;
    bool integral = true;
    for (const auto& m : id) {
      total += m;
      integral = integral && m.get_den() == 1 && m >= 1;
    }
    if (!integral || total != c.depth() || static_cast<int>(id.size()) > c.depth()) {
      std::string text = "basis id (";
      for (std::size_t i = 0; i < id.size(); ++i) text += (i ? "," : "") + id[i].get_str();
      out.findings.push_back(text + ") violates integer bounds summing to depth " +
                             std::to_string(c.depth()));
    }
  }
  return out;
}

NumericResult evaluate(const SymbolicConstant& value, double tol, int depth_cap,
                       const std::map<Integer, double>& log_offsets) {
  NumericResult out;
  out.value = to_double(value.rational());
  for (const auto& [p, c] : value.logs()) {
    double lp = std::log(p.get_d());
    if (auto it = log_offsets.find(p); it != log_offsets.end()) lp += it->second;
    out.value += to_double(c) * lp;
  }
  for (const auto& [id, c] : value.basis()) {
    std::vector<int> exps(id.size(), 1);
    exps.back() = 2;
    ShiftedCMZV v{id, Composition(std::move(exps))};
    auto res = eval_numeric(v, tol, depth_cap);
    const double coeff = to_double(c);
    out.value += coeff * res.value;
    out.error_estimate += std::abs(coeff) * res.error_estimate;
    out.evaluations += res.evaluations;
    out.converged = out.converged && res.converged;
  }
  return out;
}

std::pair<Composition, Composition> depth_embedding(const Composition& c) {
  if (!is_admissible(c))
    throw domain_error("depth_embedding: composition " + c.to_string() + " is not admissible");
  std::vector<int> lowered = c.parts();
  lowered.back() -= 1;
  lowered.push_back(2);
  std::vector<int> kept = c.parts();
  kept.push_back(2);
  return {Composition(std::move(lowered)), Composition(std::move(kept))};
}

std::vector<std::vector<int>> basis_ids(int r) {
  if (r < 1) throw domain_error("basis_ids requires r >= 1");
  std::vector<std::vector<int>> out;
  for (int s = 1; s <= r; ++s)
    for (const auto& c : compositions_of(r, s)) out.push_back(c.parts());
  return out;
}

SymbolicConstant depth2_basis_value(const Rational& m1, const Rational& m2) {
  if (m1 <= 0 || m2 <= 0) throw domain_error("depth-2 basis value needs positive bounds");
  SymbolicConstant out;
  out.add_log((m1 + m2) / m1, 1 / m2);
  return out;
}

std::vector<Rational> depth2_log_arguments(int r) {
  if (r < 2) throw domain_error("depth-2 basis needs r >= 2");
  std::vector<Rational> out;
  for (int m1 = 1; m1 < r; ++m1) out.emplace_back(Integer(r), Integer(m1));
  for (auto& q : out) q.canonicalize();
  return out;
}

} // namespace cmzv
