#pragma once

#include "cmzv/quad.hpp"
#include "cmzv/reduce.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace cmzv {

struct VerifyOptions {
  int max_weight = 0;      // 0: the suite's own default
  double tolerance = 0.0;  // 0: the suite's own default
  int jobs = 1;
  std::uint64_t seed = 0;
  int depth_cap = kDefaultDepthCap;
  std::size_t step_budget = 10000;
  /// Perturbs log 2 by 1e-3 wherever a symbolic constant is evaluated, so
  /// that a healthy harness must report failures.
  bool corrupt = false;
};

struct CheckResult {
  std::string suite;
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double discrepancy = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string detail;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  std::size_t failures() const;
};

/// shuffle, embedding, unitcube, bounds, reduction, sumformula, eta, poles, anchors.
std::vector<std::string> verification_suites();

/// Runs one suite, or every suite for "all". Checks run on up to
/// `options.jobs` threads; the report order does not depend on scheduling.
/// Throws InvalidInput for an unknown suite name.
VerifyReport run_verification(std::string_view suite, const VerifyOptions& options);

} // namespace cmzv
