#include "oracles.hpp"

#include "cmzv/errors.hpp"
#include "cmzv/shuffle.hpp"

#include <doctest.h>

using namespace cmzv;

namespace {
Integer binomial(unsigned long n, unsigned long k) {
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}
} // namespace

TEST_CASE("shuffle examples") {
  CHECK(shuffle("", "yx") == WordSum("yx"));
  CHECK(shuffle("x", "y") == WordSum("xy") + WordSum("yx"));
  const auto s = shuffle("yx", "yx");
  CHECK(s == WordSum("yxyx", 2) + WordSum("yyxx", 4));
  CHECK(s.to_string() == "2*yxyx + 4*yyxx");
  CHECK(shuffle("", "").to_string() == "1");
}

TEST_CASE("shuffle_sum bilinearity") {
  CHECK(shuffle_sum(WordSum(), WordSum("xy")).empty());
  CHECK(shuffle_sum(WordSum(""), WordSum("yxx", 3)) == WordSum("yxx", 3));
  CHECK(shuffle_sum(WordSum("x", 2), WordSum("y", 3)) == (WordSum("xy") + WordSum("yx")) * 6);
  const WordSum a = WordSum("yx") + WordSum("x", Rational(1, 2));
  const WordSum b = WordSum("y", -1) + WordSum("xy", 3);
  CHECK(shuffle_sum(a, b) == shuffle_sum(WordSum("yx"), b) + shuffle_sum(WordSum("x", Rational(1, 2)), b));
}

TEST_CASE("shuffle agrees with brute-force interleaving up to total length 8") {
  const auto words = oracle::all_words(4);
  for (const auto& w1 : words) {
    for (const auto& w2 : words) {
      const auto expected = oracle::interleavings(w1, w2);
      const auto got = shuffle(w1, w2);
      REQUIRE(got.terms().size() == expected.size());
      for (const auto& [w, n] : expected) CHECK(got.coefficient(w) == n);
      CHECK(got.mass() == binomial(w1.size() + w2.size(), w1.size()));
    }
  }
}

TEST_CASE("commutativity up to length 6 and associativity up to total length 7") {
  const auto words = oracle::all_words(3);
  for (const auto& w1 : words)
    for (const auto& w2 : words) CHECK(shuffle(w1, w2) == shuffle(w2, w1));
  const auto small = oracle::all_words(2);
  for (const auto& w1 : words)
    for (const auto& w2 : small)
      for (const auto& w3 : small) {
        if (w1.size() + w2.size() + w3.size() > 7) continue;
        CHECK(shuffle_sum(shuffle(w1, w2), WordSum(w3)) == shuffle_sum(WordSum(w1), shuffle(w2, w3)));
      }
}

TEST_CASE("admissible words stay admissible under shuffle") {
  for (const auto& w1 : oracle::all_words(4)) {
    if (w1.empty() || !is_admissible_word(w1)) continue;
    for (const auto& w2 : oracle::all_words(4)) {
      if (w2.empty() || !is_admissible_word(w2)) continue;
      for (const auto& [w, q] : shuffle(w1, w2).terms()) CHECK(is_admissible_word(w));
    }
  }
}

TEST_CASE("z_map") {
  auto img = z_map(WordSum("yx"));
  REQUIRE(img.terms.size() == 1);
  CHECK(img.terms[0].first == Composition({2}));
  CHECK(img.terms[0].second == 1);
  CHECK(img.constant == 0);

  img = z_map(shuffle("yx", "yx"));
  REQUIRE(img.terms.size() == 2);
  std::map<Composition, Rational> m(img.terms.begin(), img.terms.end());
  CHECK(m.at(Composition({2, 2})) == 2);
  CHECK(m.at(Composition({1, 3})) == 4);

  CHECK(z_map(WordSum("", Rational(3, 2))).constant == Rational(3, 2));
  try {
    z_map(WordSum("xy") + WordSum("yx"));
    FAIL("expected a domain error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Domain);
    CHECK(std::string(e.what()).find("xy") != std::string::npos);
  }
}

TEST_CASE("word sums drop zero coefficients") {
  WordSum s("yx", 2);
  s.add("yx", -2);
  CHECK(s.empty());
  CHECK(s.to_string() == "0");
  CHECK((WordSum("yx", Rational(1, 3)) * 0).empty());
  CHECK((WordSum("yx") + WordSum("yyx", -1)).to_string() == "yx - yyx");
}
