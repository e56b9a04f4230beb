#include "oracles.hpp"

#include "cmzv/errors.hpp"
#include "cmzv/etaspace.hpp"

#include <doctest.h>

#include <random>

using namespace cmzv;

TEST_CASE("eta on basis elements") {
  for (int l = 1; l <= 4; ++l)
    CHECK(eta(VElement::basis(0, l)) == VElement::basis(0, l) - VElement::basis(1, l));
  CHECK(eta(VElement()).empty());
  CHECK(eta(VElement::basis(1, 2)) == (VElement::basis(0, 2) - VElement::basis(2, 2)) * Rational(1, 2));
}

TEST_CASE("eta powers") {
  CHECK(eta_power(VElement::basis(0, 3), 0) == VElement::basis(0, 3));
  CHECK(eta_power(VElement::basis(0, 2), 1) == VElement::basis(0, 2) - VElement::basis(1, 2));
  const auto two = eta_power(VElement::basis(0, 5), 2);
  CHECK(two == VElement::basis(0, 5, Rational(1, 2)) - VElement::basis(1, 5) + VElement::basis(2, 5, Rational(1, 2)));
}

TEST_CASE("eval_at") {
  CHECK(eval_at(VElement::basis(0, 2), 1) == 1);
  CHECK(eval_at(VElement::basis(0, 1) - VElement::basis(1, 1), 1) == Rational(1, 2));
  CHECK(eval_at(VElement::basis(2, 3), 2) == Rational(1, 64));
  CHECK_THROWS_AS(eval_at(VElement::basis(0, 1), 0), Error);
  CHECK_THROWS_AS(VElement::basis(-1, 1), Error);
  CHECK_THROWS_AS(VElement::basis(0, 0), Error);
}

TEST_CASE("eta is linear") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> shift(0, 4), expo(1, 4), coef(-9, 9);
  for (int trial = 0; trial < 50; ++trial) {
    VElement u, v;
    for (int j = 0; j < 3; ++j) {
      u.add({shift(rng), expo(rng)}, coef(rng));
      v.add({shift(rng), expo(rng)}, coef(rng));
    }
    const Rational a = oracle::random_positive(rng, 9, 5), b = -oracle::random_positive(rng, 9, 5);
    CHECK(eta(u * a + v * b) == eta(u) * a + eta(v) * b);
  }
}

TEST_CASE("telescoping identity at 20 random rational points") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> K(2, 8), c(1, 6);
  for (int i = 0; i < 20; ++i) {
    const int k = K(rng);
    const Rational cc = c(rng);
    const Rational x = oracle::random_positive(rng, 40, 13);
    const Rational direct = oracle::telescoping_direct(k, cc, x);
    CHECK(telescoping_lhs(k, cc, x) == direct);
    CHECK(telescoping_rhs(k, cc, x) == direct);
  }
  CHECK_THROWS_AS(telescoping_lhs(1, 1, 1), Error);
}

TEST_CASE("sum formula right-hand side") {
  CHECK(sum_formula_rhs(2, 4) == Rational(3, 4));
  CHECK(sum_formula_rhs(3, 5) == Rational(1, 6));
  CHECK(sum_formula_rhs(4, 7) == Rational(1, 24));
  for (int r = 2; r <= 4; ++r)
    for (int k = 2 * (r - 1) + 1; k <= 12; ++k) CHECK(sum_formula_rhs(r, k) == oracle::sum_formula_closed(r, k));
  CHECK_THROWS_AS(sum_formula_rhs(2, 2), Error);
  CHECK_THROWS_AS(sum_formula_rhs(1, 5), Error);
}

TEST_CASE("sum formula left-hand terms") {
  const auto terms = sum_formula_lhs_terms(2, 3);
  REQUIRE(terms.size() == 2);
  for (const auto& t : terms) {
    if (t.ks == std::vector<int>{1, 2}) {
      CHECK(t.composition == Composition({1, 3}));
      CHECK(t.weight == 2);
    } else {
      CHECK(t.ks == std::vector<int>{2, 1});
      CHECK(t.composition == Composition({2, 2}));
      CHECK(t.weight == 1);
    }
  }
  // stars and bars: C(k-1, r-1) entries, zero weights kept
  CHECK(sum_formula_lhs_terms(3, 5).size() == 6);
  CHECK(sum_formula_lhs_terms(4, 9).size() == 56);
  bool saw_zero = false;
  for (const auto& t : sum_formula_lhs_terms(3, 5)) {
    if (t.ks == std::vector<int>{3, 1, 1}) {
      CHECK(t.weight == 0);
      saw_zero = true;
    }
  }
  CHECK(saw_zero);
  CHECK(sum_formula_weight({1, 2}) == 2);
  CHECK_THROWS_AS(sum_formula_lhs_terms(3, 4), Error);
}
