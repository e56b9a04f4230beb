#include "oracles.hpp"

#include "cmzv/errors.hpp"
#include "cmzv/quad.hpp"
#include "cmzv/shuffle.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

using namespace cmzv;

namespace {
ShiftedCMZV shifted(std::vector<int> bounds, std::vector<int> exps) {
  std::vector<Rational> b(bounds.begin(), bounds.end());
  return {b, Composition(std::move(exps))};
}
} // namespace

TEST_CASE("depth-1 values are 1/k") {
  for (int k = 1; k <= 8; ++k) {
    const auto r = eval_numeric(Composition({k + 1}), 1e-10);
    CHECK(r.converged);
    CHECK(std::abs(r.value - oracle::depth1(k + 1)) <= 1e-9);
  }
}

TEST_CASE("known low-weight values") {
  auto r = eval_numeric(Composition({1, 2}), 1e-10);
  CHECK(std::abs(r.value - std::log(2.0)) <= 1e-9);
  r = eval_numeric(Composition({2, 2}), 1e-10);
  CHECK(std::abs(r.value - (1 - std::log(2.0))) <= 1e-9);
  r = eval_numeric(Composition({1, 3}), 1e-10);
  CHECK(std::abs(r.value - (std::log(2.0) / 2 - 0.25)) <= 1e-9);
  CHECK(r.error_estimate >= 0);
  CHECK(r.evaluations > 0);
}

TEST_CASE("shifted depth-2 closed form") {
  for (int m1 = 1; m1 <= 5; ++m1) {
    for (int m2 = 1; m1 + m2 <= 6; ++m2) {
      const auto r = eval_numeric(shifted({m1, m2}, {1, 2}), 1e-10);
      CHECK(std::abs(r.value - oracle::depth2_ones_two(m1, m2)) <= 1e-8);
    }
  }
  std::vector<Rational> half{Rational(1, 2), Rational(3, 2)};
  const auto r = eval_numeric(ShiftedCMZV{half, Composition({1, 2})}, 1e-10);
  CHECK(std::abs(r.value - oracle::depth2_ones_two(0.5, 1.5)) <= 1e-8);
}

TEST_CASE("real exponents") {
  std::vector<double> b{1.0}, s{4.5};
  CHECK(std::abs(eval_numeric_real(b, s, 1e-11).value - 1 / 3.5) <= 1e-9);
  std::vector<double> b2{1.0, 1.0}, s2{1.5, 1.75};
  const auto r = eval_numeric_real(b2, s2, 1e-8);
  CHECK(r.converged);
  CHECK(r.value > 0);
  CHECK(r.value < convergence_bound(s2));
  std::vector<double> bad{5, 0.5};
  CHECK_THROWS_AS(eval_numeric_real(b2, bad, 1e-8), Error);
}

TEST_CASE("errors") {
  auto kind = [](auto&& f) {
    try {
      f();
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::Rewrite;
  };
  CHECK(kind([] { eval_numeric(Composition({2, 1}), 1e-8); }) == ErrorKind::Divergence);
  CHECK(kind([] { eval_numeric(Composition({1, 1, 1, 1, 1, 1, 2}), 1e-5); }) == ErrorKind::Capacity);
  CHECK(kind([] { eval_numeric(shifted({0, 1}, {1, 2}), 1e-8); }) == ErrorKind::InvalidInput);
  CHECK(kind([] { eval_numeric(Composition({2}), 0.0); }) == ErrorKind::InvalidInput);
  CHECK(kind([] { eval_unit_cube_ones(1, 1e-8); }) == ErrorKind::Domain);
  // a raised cap admits deeper integrals
  CHECK(eval_numeric(Composition({1, 1, 1, 1, 1, 1, 2}), 1e-4, 7).value > 0);
}

TEST_CASE("unit-cube form matches the semi-infinite integral") {
  for (int r = 2; r <= 4; ++r) {
    const auto cube = eval_unit_cube_ones(r, 1e-8);
    std::vector<int> parts(static_cast<std::size_t>(r), 1);
    parts.back() = 2;
    const auto direct = eval_numeric(Composition(parts), 1e-8);
    CHECK(cube.converged);
    CHECK(std::abs(cube.value - direct.value) <= 1e-6);
  }
  CHECK(std::abs(eval_unit_cube_ones(2, 1e-10).value - std::log(2.0)) <= 1e-9);
}

TEST_CASE("values decrease as a bound increases") {
  const double base = eval_numeric(shifted({1, 1, 1}, {1, 2, 2}), 1e-10).value;
  CHECK(eval_numeric(shifted({2, 1, 1}, {1, 2, 2}), 1e-10).value < base);
  CHECK(eval_numeric(shifted({1, 2, 1}, {1, 2, 2}), 1e-10).value < base);
  CHECK(eval_numeric(shifted({1, 1, 3}, {1, 2, 2}), 1e-10).value < base);
}

TEST_CASE("symmetrized integral at r = 2 equals 2! zeta(1,2)") {
  // sum over both orderings of 1/(x1 (x1+x2)^2) with unit bounds
  std::vector<double> bounds{1.0, 1.0};
  auto f = [](std::span<const double> x) {
    const double s = x[0] + x[1];
    return 1.0 / (x[0] * s * s) + 1.0 / (x[1] * s * s);
  };
  const auto r = integrate_semi_infinite(bounds, f, 1e-7);
  CHECK(std::abs(r.value - 2 * std::log(2.0)) <= 1e-6);
}

TEST_CASE("verify_identity") {
  IdentitySide lhs{{{ShiftedCMZV::unshifted(Composition({3})), 1}}, 0};
  IdentitySide rhs{{{ShiftedCMZV::unshifted(Composition({2, 2})), 1}, {ShiftedCMZV::unshifted(Composition({3, 2})), 1}},
                   0};
  auto rep = verify_identity(lhs, rhs, 1e-8);
  CHECK(rep.pass);
  CHECK(rep.discrepancy <= 1e-8);

  IdentitySide prod{{{ShiftedCMZV::unshifted(Composition({2, 2})), 2}, {ShiftedCMZV::unshifted(Composition({1, 3})), 4}},
                    0};
  IdentitySide one{{}, 1};
  CHECK(verify_identity(prod, one, 1e-8).pass);
  CHECK(verify_identity(IdentitySide{}, IdentitySide{}, 1e-8).pass);

  IdentitySide wrong{{}, Rational(11, 10)};
  CHECK_FALSE(verify_identity(prod, wrong, 1e-8).pass);
}
