#include "cmzv/errors.hpp"
#include "cmzv/serialize.hpp"
#include "cmzv/shuffle.hpp"

#include <doctest.h>

using namespace cmzv;

TEST_CASE("composition JSON") {
  const Composition c({1, 2, 3});
  CHECK(to_json(c).dump() == "[1,2,3]");
  CHECK(composition_from_json(Json::parse("[1,2,3]")) == c);
  CHECK_THROWS_AS(composition_from_json(Json::parse("[0]")), Error);
  CHECK_THROWS_AS(composition_from_json(Json::parse("{\"a\":1}")), Error);
}

TEST_CASE("word sum JSON") {
  const auto s = shuffle("yx", "yx");
  CHECK(to_json(s).dump() == R"({"yxyx":"2/1","yyxx":"4/1"})");
  CHECK(word_sum_from_json(to_json(s)) == s);
  const WordSum q = WordSum("", Rational(-1, 3)) + WordSum("yyx", Rational(5, 7));
  CHECK(word_sum_from_json(to_json(q)) == q);
  CHECK_THROWS_AS(word_sum_from_json(Json::parse(R"({"ab":"1"})")), Error);
  CHECK_THROWS_AS(word_sum_from_json(Json::parse(R"({"x":"1/0"})")), Error);
  CHECK_THROWS_AS(word_sum_from_json(Json::parse(R"({"x":1})")), Error);
}

TEST_CASE("V element JSON") {
  const VElement v = VElement::basis(0, 2, Rational(1, 2)) - VElement::basis(3, 1);
  const auto j = to_json(v);
  CHECK(j.dump() == R"([{"coeff":"1/2","l":2,"n":0},{"coeff":"-1/1","l":1,"n":3}])");
  CHECK(velement_from_json(j) == v);
  CHECK_THROWS_AS(velement_from_json(Json::parse(R"([{"n":-1,"l":1,"coeff":"1"}])")), Error);
}

TEST_CASE("numeric result JSON") {
  NumericResult r{0.5, 1e-12, 42, false};
  const auto j = to_json(r);
  CHECK(j.at("value") == 0.5);
  CHECK(j.at("converged") == false);
  const auto back = numeric_result_from_json(j);
  CHECK(back.value == r.value);
  CHECK(back.error_estimate == r.error_estimate);
  CHECK(back.evaluations == r.evaluations);
  CHECK(back.converged == r.converged);
}

TEST_CASE("symbolic constant JSON") {
  SymbolicConstant c(Rational(-1, 4));
  c.add_log(3, Rational(-1, 4));
  c.add_log(2, 1);
  c.add_basis({1, 1, 1}, Rational(1, 2));
  c.add_basis({Rational(1, 2), 1, Rational(3, 2)}, 3);
  const auto j = to_json(c);
  CHECK(j.at("rational") == "-1/4");
  CHECK(j.at("logs").at("3") == "-1/4");
  CHECK(j.at("basis").at("1,1,1") == "1/2");
  CHECK(symbolic_constant_from_json(j) == c);
  CHECK(symbolic_constant_from_json(Json::parse(R"({"rational":"0/1","logs":{},"basis":{}})")).is_zero());
  CHECK_THROWS_AS(symbolic_constant_from_json(Json::parse(R"({"rational":"x"})")), Error);
}

TEST_CASE("hyperplane JSON") {
  const Hyperplane h{{2, 1}, -1};
  CHECK(to_json(h).dump() == R"({"coeffs":[2,1],"constant":-1})");
  CHECK(hyperplane_from_json(to_json(h)) == h);
}
