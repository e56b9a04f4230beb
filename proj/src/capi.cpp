#include "cmzv/cmzv.h"

#include "cmzv/errors.hpp"
#include "cmzv/etaspace.hpp"
#include "cmzv/poles.hpp"
#include "cmzv/quad.hpp"
#include "cmzv/reduce.hpp"
#include "cmzv/serialize.hpp"
#include "cmzv/shuffle.hpp"
#include "cmzv/verify.hpp"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <new>
#include <sstream>
#include <string>

struct cmzv_context {
  double tolerance = 0.0;  // 0: depth-dependent default
  int depth_cap = cmzv::kDefaultDepthCap;
  std::size_t step_budget = 10000;
  int jobs = 1;
  std::uint64_t seed = 0;
  std::string last_error;
};

namespace {

using cmzv::ErrorKind;

cmzv_status status_of(ErrorKind kind) {
  switch (kind) {
  case ErrorKind::InvalidInput: return CMZV_INVALID_INPUT;
  case ErrorKind::Domain: return CMZV_DOMAIN;
  case ErrorKind::Encoding: return CMZV_ENCODING;
  case ErrorKind::Divergence: return CMZV_DIVERGENT;
  case ErrorKind::Capacity: return CMZV_CAPACITY;
  case ErrorKind::Rewrite: return CMZV_REWRITE;
  }
  return CMZV_INTERNAL;
}

template <class F>
cmzv_status guarded(cmzv_context* ctx, F&& body) {
  if (!ctx) return CMZV_INVALID_INPUT;
  ctx->last_error.clear();
  try {
    return body();
  } catch (const cmzv::Error& e) {
    ctx->last_error = e.what();
    return status_of(e.kind());
  } catch (const std::bad_alloc&) {
    ctx->last_error = "out of memory";
    return CMZV_INTERNAL;
  } catch (const std::exception& e) {
    ctx->last_error = e.what();
    return CMZV_INTERNAL;
  }
}

char* dup_string(const std::string& s) {
  auto* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

cmzv::Composition composition_arg(const int* parts, std::size_t n) {
  if (!parts || n == 0) throw cmzv::invalid_input("empty composition");
  return cmzv::Composition(std::vector<int>(parts, parts + n));
}

std::vector<cmzv::Rational> parse_bounds(const char* text, std::size_t depth) {
  std::vector<cmzv::Rational> out;
  std::string_view rest(text);
  while (true) {
    const auto comma = rest.find(',');
    out.push_back(cmzv::parse_rational(rest.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  if (out.size() != depth)
    throw cmzv::invalid_input("expected " + std::to_string(depth) + " bounds, got " + std::to_string(out.size()));
  return out;
}

double tolerance_for(const cmzv_context* ctx, int depth) {
  return ctx->tolerance > 0 ? ctx->tolerance : cmzv::default_tolerance(depth);
}

cmzv_numeric_result to_c(const cmzv::NumericResult& r) {
  return {r.value, r.error_estimate, r.evaluations, r.converged ? 1 : 0};
}

cmzv_status finish_numeric(cmzv_context* ctx, const cmzv::NumericResult& r, cmzv_numeric_result* out) {
  *out = to_c(r);
  if (r.converged) return CMZV_OK;
  std::ostringstream msg;
  msg << "quadrature did not reach the requested tolerance (error estimate " << r.error_estimate << ")";
  ctx->last_error = msg.str();
  return CMZV_NOT_CONVERGED;
}

cmzv_status require_out(cmzv_context* ctx, const void* out) {
  if (out) return CMZV_OK;
  ctx->last_error = "null output pointer";
  return CMZV_INVALID_INPUT;
}

} // namespace

extern "C" {

cmzv_context* cmzv_context_new(void) { return new (std::nothrow) cmzv_context(); }

void cmzv_context_free(cmzv_context* ctx) { delete ctx; }

const char* cmzv_last_error(const cmzv_context* ctx) { return ctx ? ctx->last_error.c_str() : "null context"; }

const char* cmzv_status_name(cmzv_status status) {
  switch (status) {
  case CMZV_OK: return "ok";
  case CMZV_INVALID_INPUT: return "invalid input";
  case CMZV_DOMAIN: return "domain error";
  case CMZV_ENCODING: return "encoding error";
  case CMZV_DIVERGENT: return "divergent";
  case CMZV_CAPACITY: return "capacity exceeded";
  case CMZV_REWRITE: return "rewrite error";
  case CMZV_NOT_CONVERGED: return "not converged";
  case CMZV_INTERNAL: return "internal error";
  }
  return "unknown status";
}

cmzv_status cmzv_set_tolerance(cmzv_context* ctx, double tol) {
  return guarded(ctx, [&] {
    if (std::isnan(tol)) throw cmzv::invalid_input("tolerance is NaN");
    ctx->tolerance = tol > 0 ? tol : 0.0;
    return CMZV_OK;
  });
}

cmzv_status cmzv_set_depth_cap(cmzv_context* ctx, int cap) {
  return guarded(ctx, [&] {
    if (cap < 1) throw cmzv::invalid_input("depth cap must be >= 1");
    ctx->depth_cap = cap;
    return CMZV_OK;
  });
}

cmzv_status cmzv_set_step_budget(cmzv_context* ctx, size_t budget) {
  return guarded(ctx, [&] {
    if (budget < 1) throw cmzv::invalid_input("step budget must be >= 1");
    ctx->step_budget = budget;
    return CMZV_OK;
  });
}

cmzv_status cmzv_set_jobs(cmzv_context* ctx, int jobs) {
  return guarded(ctx, [&] {
    if (jobs < 1) throw cmzv::invalid_input("jobs must be >= 1");
    ctx->jobs = jobs;
    return CMZV_OK;
  });
}

cmzv_status cmzv_set_seed(cmzv_context* ctx, uint64_t seed) {
  return guarded(ctx, [&] {
    ctx->seed = seed;
    return CMZV_OK;
  });
}

void cmzv_string_free(char* s) { std::free(s); }

cmzv_status cmzv_eval(cmzv_context* ctx, const int* parts, size_t n, const char* bounds,
                      cmzv_numeric_result* out) {
  return guarded(ctx, [&] {
    if (auto s = require_out(ctx, out)) return s;
    const auto c = composition_arg(parts, n);
    const double tol = tolerance_for(ctx, c.depth());
    cmzv::NumericResult r;
    if (bounds && *bounds) {
      cmzv::ShiftedCMZV v{parse_bounds(bounds, n), c};
      r = cmzv::eval_numeric(v, tol, ctx->depth_cap);
    } else {
      r = cmzv::eval_numeric(c, tol, ctx->depth_cap);
    }
    return finish_numeric(ctx, r, out);
  });
}

cmzv_status cmzv_unit_cube(cmzv_context* ctx, int r, cmzv_numeric_result* out) {
  return guarded(ctx, [&] {
    if (auto s = require_out(ctx, out)) return s;
    return finish_numeric(ctx, cmzv::eval_unit_cube_ones(r, tolerance_for(ctx, r), ctx->depth_cap), out);
  });
}

cmzv_status cmzv_reduce(cmzv_context* ctx, const int* parts, size_t n, char** json_out) {
  return guarded(ctx, [&] {
    if (auto s = require_out(ctx, json_out)) return s;
    const auto c = composition_arg(parts, n);
    cmzv::ReduceOptions opts;
    opts.depth_cap = ctx->depth_cap;
    opts.step_budget = ctx->step_budget;
    const auto red = cmzv::reduce_to_basis(c, opts);
    const double tol = tolerance_for(ctx, c.depth());
    const auto reduced = cmzv::evaluate(red.value, tol / 10, ctx->depth_cap);
    const auto direct = cmzv::eval_numeric(c, tol / 10, ctx->depth_cap);
    cmzv::Json j;
    j["composition"] = cmzv::to_json(c);
    j["constant"] = cmzv::to_json(red.value);
    j["display"] = red.value.to_string();
    j["steps"] = red.steps;
    j["findings"] = red.findings;
    j["numeric"] = cmzv::to_json(reduced);
    j["direct"] = cmzv::to_json(direct);
    j["residual"] = std::abs(reduced.value - direct.value);
    *json_out = dup_string(j.dump());
    if (!reduced.converged || !direct.converged) {
      ctx->last_error = "quadrature did not reach the requested tolerance";
      return CMZV_NOT_CONVERGED;
    }
    return CMZV_OK;
  });
}

cmzv_status cmzv_shuffle(cmzv_context* ctx, const char* w1, const char* w2, char** json_out) {
  return guarded(ctx, [&] {
    if (auto s = require_out(ctx, json_out)) return s;
    if (!w1 || !w2) throw cmzv::invalid_input("null word");
    *json_out = dup_string(cmzv::to_json(cmzv::shuffle(w1, w2)).dump());
    return CMZV_OK;
  });
}

cmzv_status cmzv_sumformula(cmzv_context* ctx, int r, int k, char** json_out) {
  return guarded(ctx, [&] {
    if (auto s = require_out(ctx, json_out)) return s;
    const auto rhs = cmzv::sum_formula_rhs(r, k);
    if (r > ctx->depth_cap)
      throw cmzv::capacity_error("depth " + std::to_string(r) + " exceeds the depth cap " +
                                 std::to_string(ctx->depth_cap));
    const auto terms = cmzv::sum_formula_lhs_terms(r, k);
    double total_weight = 0;
    for (const auto& t : terms) total_weight += std::abs(cmzv::to_double(t.weight));
    const double tol = tolerance_for(ctx, r);
    const double term_tol = tol / std::max(1.0, total_weight);
    cmzv::NumericResult lhs;
    cmzv::Json jterms = cmzv::Json::array();
    for (const auto& t : terms) {
      jterms.push_back({{"ks", t.ks},
                        {"composition", cmzv::to_json(t.composition)},
                        {"weight", cmzv::to_fraction_string(t.weight)}});
      if (t.weight == 0) continue;
      const auto v = cmzv::eval_numeric(t.composition, term_tol, ctx->depth_cap);
      const double w = cmzv::to_double(t.weight);
      lhs.value += w * v.value;
      lhs.error_estimate += std::abs(w) * v.error_estimate;
      lhs.evaluations += v.evaluations;
      lhs.converged = lhs.converged && v.converged;
    }
    const double discrepancy = std::abs(lhs.value - cmzv::to_double(rhs));
    cmzv::Json j;
    j["r"] = r;
    j["k"] = k;
    j["rhs"] = cmzv::to_fraction_string(rhs);
    j["lhs"] = cmzv::to_json(lhs);
    j["discrepancy"] = discrepancy;
    j["tolerance"] = tol;
    j["pass"] = lhs.converged && discrepancy <= tol;
    j["terms"] = std::move(jterms);
    *json_out = dup_string(j.dump());
    if (!lhs.converged) {
      ctx->last_error = "quadrature did not reach the requested tolerance";
      return CMZV_NOT_CONVERGED;
    }
    return CMZV_OK;
  });
}

cmzv_status cmzv_poles(cmzv_context* ctx, int r, int k_max, char** json_out) {
  return guarded(ctx, [&] {
    if (auto s = require_out(ctx, json_out)) return s;
    cmzv::Json j = cmzv::Json::array();
    for (const auto& h : cmzv::pole_hyperplanes(r, k_max)) j.push_back(cmzv::to_json(h));
    *json_out = dup_string(j.dump());
    return CMZV_OK;
  });
}

cmzv_status cmzv_verify(cmzv_context* ctx, const char* suite, int max_weight, int corrupt, size_t* failures,
                        char** json_out) {
  return guarded(ctx, [&] {
    if (auto s = require_out(ctx, json_out)) return s;
    if (!suite) throw cmzv::invalid_input("null suite name");
    cmzv::VerifyOptions opts;
    opts.max_weight = max_weight;
    opts.tolerance = ctx->tolerance;
    opts.jobs = ctx->jobs;
    opts.seed = ctx->seed;
    opts.depth_cap = ctx->depth_cap;
    opts.step_budget = ctx->step_budget;
    opts.corrupt = corrupt != 0;
    const auto report = cmzv::run_verification(suite, opts);
    cmzv::Json checks = cmzv::Json::array();
    for (const auto& c : report.checks) {
      checks.push_back({{"suite", c.suite},
                        {"name", c.name},
                        {"lhs", c.lhs},
                        {"rhs", c.rhs},
                        {"discrepancy", c.discrepancy},
                        {"tolerance", c.tolerance},
                        {"pass", c.pass},
                        {"detail", c.detail}});
    }
    cmzv::Json j;
    j["suite"] = suite;
    j["failures"] = report.failures();
    j["checks"] = std::move(checks);
    if (failures) *failures = report.failures();
    *json_out = dup_string(j.dump());
    return CMZV_OK;
  });
}

cmzv_status cmzv_verify_suites(cmzv_context* ctx, char** json_out) {
  return guarded(ctx, [&] {
    if (auto s = require_out(ctx, json_out)) return s;
    *json_out = dup_string(cmzv::Json(cmzv::verification_suites()).dump());
    return CMZV_OK;
  });
}

} // extern "C"
