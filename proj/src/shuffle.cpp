#include "cmzv/shuffle.hpp"

#include "cmzv/errors.hpp"

#include <sstream>

namespace cmzv {

WordSum::WordSum(Word w, Rational coeff) { add(w, coeff); }

void WordSum::add(const Word& w, const Rational& coeff) {
  if (coeff == 0) return;
  auto [it, inserted] = terms_.try_emplace(w, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

Rational WordSum::coefficient(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational WordSum::mass() const {
  Rational total = 0;
  for (const auto& [w, c] : terms_) total += c;
  return total;
}

WordSum& WordSum::operator+=(const WordSum& other) {
  for (const auto& [w, c] : other.terms_) add(w, c);
  return *this;
}

WordSum WordSum::operator+(const WordSum& other) const {
  WordSum out = *this;
  out += other;
  return out;
}

WordSum WordSum::operator*(const Rational& scalar) const {
  WordSum out;
  if (scalar == 0) return out;
  for (const auto& [w, c] : terms_) out.terms_.emplace(w, c * scalar);
  return out;
}

std::string WordSum::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [w, c] : terms_) {
    Rational mag = abs(c);
    if (first)
      out << (c < 0 ? "-" : "");
    else
      out << (c < 0 ? " - " : " + ");
    first = false;
    const std::string word = w.empty() ? "1" : w;
    if (mag == 1)
      out << word;
    else
      out << mag.get_str() << '*' << word;
  }
  return out.str();
}

WordSum shuffle(std::string_view w1, std::string_view w2) {
  // table[i][j] = shuffle of the suffixes w1[i:], w2[j:]
  const std::size_t n1 = w1.size(), n2 = w2.size();
  std::vector<std::vector<WordSum>> table(n1 + 1, std::vector<WordSum>(n2 + 1));
  for (std::size_t i = n1 + 1; i-- > 0;) {
    for (std::size_t j = n2 + 1; j-- > 0;) {
      if (i == n1) {
        table[i][j] = WordSum(Word(w2.substr(j)));
        continue;
      }
      if (j == n2) {
        table[i][j] = WordSum(Word(w1.substr(i)));
        continue;
      }
      WordSum cell;
      for (const auto& [w, c] : table[i + 1][j].terms()) cell.add(w1[i] + w, c);
      for (const auto& [w, c] : table[i][j + 1].terms()) cell.add(w2[j] + w, c);
      table[i][j] = std::move(cell);
    }
  }
  return std::move(table[0][0]);
}

WordSum shuffle_sum(const WordSum& a, const WordSum& b) {
  WordSum out;
  for (const auto& [wa, ca] : a.terms())
    for (const auto& [wb, cb] : b.terms()) out += shuffle(wa, wb) * (ca * cb);
  return out;
}

ZImage z_map(const WordSum& a) {
  ZImage image;
  for (const auto& [w, c] : a.terms()) {
    if (w.empty()) {
      image.constant += c;
      continue;
    }
    if (!is_admissible_word(w))
      throw domain_error("z_map: word '" + w + "' is not admissible (must start with y and end with x)");
    image.terms.emplace_back(composition_from_word(w), c);
  }
  return image;
}

} // namespace cmzv
