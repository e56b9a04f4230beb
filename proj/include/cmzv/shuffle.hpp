#pragma once

#include "cmzv/compositions.hpp"
#include "cmzv/rational.hpp"

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cmzv {

using Word = std::string;

/// Finite Q-linear combination of words over {x, y}. Zero coefficients are
/// never stored; iteration order is lexicographic in the word.
class WordSum {
public:
  WordSum() = default;
  explicit WordSum(Word w, Rational coeff = 1);

  void add(const Word& w, const Rational& coeff);

  const std::map<Word, Rational>& terms() const noexcept { return terms_; }
  bool empty() const noexcept { return terms_.empty(); }
  Rational coefficient(const Word& w) const;

  /// Sum of all coefficients.
  Rational mass() const;

  WordSum& operator+=(const WordSum& other);
  WordSum operator+(const WordSum& other) const;
  WordSum operator*(const Rational& scalar) const;
  bool operator==(const WordSum&) const = default;

  /// "2*yxyx + 4*yyxx"; "0" when empty; the empty word prints as "1".
  std::string to_string() const;

private:
  std::map<Word, Rational> terms_;
};

/// Shuffle product of two words.
WordSum shuffle(std::string_view w1, std::string_view w2);

/// Bilinear extension of the shuffle product.
WordSum shuffle_sum(const WordSum& a, const WordSum& b);

struct ZImage {
  Rational constant;  // coefficient of the empty word
  std::vector<std::pair<Composition, Rational>> terms;
};

/// Formal Z-map: admissible word -> composition. Throws Domain naming the
/// first non-admissible word with a nonzero coefficient.
ZImage z_map(const WordSum& a);

} // namespace cmzv
