#include "cmzv/compositions.hpp"

#include "cmzv/errors.hpp"

#include <charconv>
#include <numeric>
#include <sstream>

namespace cmzv {

Composition::Composition(std::vector<int> parts) : parts_(std::move(parts)) {
  if (parts_.empty()) throw invalid_input("composition must have at least one part");
  for (int k : parts_)
    if (k < 1) throw invalid_input("composition parts must be positive integers");
}

Composition Composition::parse(std::string_view text) {
  std::vector<int> parts;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    auto item = text.substr(pos, comma - pos);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    int value = 0;
    auto [end, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
    if (item.empty() || ec != std::errc{} || end != item.data() + item.size())
      throw invalid_input("malformed composition '" + std::string(text) + "'");
    parts.push_back(value);
    pos = comma + 1;
  }
  return Composition(std::move(parts));
}

int Composition::weight() const noexcept {
  return std::accumulate(parts_.begin(), parts_.end(), 0);
}

std::string Composition::to_string() const {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < parts_.size(); ++i) out << (i ? "," : "") << parts_[i];
  out << ')';
  return out.str();
}

bool is_admissible(const Composition& c) { return c.parts().back() >= 2; }

bool in_convergence_domain(std::span<const double> sigma) {
  if (sigma.empty()) return false;
  double suffix = 0.0;
  const auto r = sigma.size();
  for (std::size_t j = r; j-- > 0;) {
    suffix += sigma[j];
    if (!(suffix > static_cast<double>(r - j))) return false;
  }
  return true;
}

double convergence_bound(std::span<const double> sigma) {
  if (!in_convergence_domain(sigma))
    throw domain_error("convergence_bound: arguments outside the convergence domain");
  double suffix = 0.0;
  double bound = 1.0;
  const auto r = sigma.size();
  for (std::size_t j = r; j-- > 0;) {
    suffix += sigma[j];
    bound /= suffix - static_cast<double>(r - j);
  }
  return bound;
}

std::vector<double> as_reals(const Composition& c) {
  return {c.parts().begin(), c.parts().end()};
}

std::string word_from_composition(const Composition& c) {
  std::string word;
  word.reserve(static_cast<std::size_t>(c.weight()));
  for (int k : c.parts()) {
    word.push_back('y');
    word.append(static_cast<std::size_t>(k - 1), 'x');
  }
  return word;
}

Composition composition_from_word(std::string_view word) {
  if (word.empty()) throw encoding_error("the empty word has no composition");
  if (word.front() != 'y')
    throw encoding_error("word '" + std::string(word) + "' does not start with y");
  std::vector<int> parts;
  for (char ch : word) {
    if (ch == 'y')
      parts.push_back(1);
    else if (ch == 'x')
      ++parts.back();
    else
      throw encoding_error("word '" + std::string(word) + "' has a letter outside {x,y}");
  }
  return Composition(std::move(parts));
}

bool is_admissible_word(std::string_view word) {
  if (word.empty()) return true;
  if (word.find_first_not_of("xy") != std::string_view::npos) return false;
  return word.front() == 'y' && word.back() == 'x';
}

namespace {

void compositions_rec(int remaining, int slots, std::vector<int>& prefix,
                      std::vector<Composition>& out) {
  if (slots == 1) {
    prefix.push_back(remaining);
    out.emplace_back(prefix);
    prefix.pop_back();
    return;
  }
  for (int k = 1; k <= remaining - (slots - 1); ++k) {
    prefix.push_back(k);
    compositions_rec(remaining - k, slots - 1, prefix, out);
    prefix.pop_back();
  }
}

} // namespace

std::vector<Composition> compositions_of(int weight, int depth) {
  std::vector<Composition> out;
  if (depth < 1 || weight < depth) return out;
  std::vector<int> prefix;
  compositions_rec(weight, depth, prefix, out);
  return out;
}

std::vector<Composition> admissible_compositions(int weight) {
  std::vector<Composition> out;
  for (int depth = 1; depth < weight; ++depth)
    for (auto& c : compositions_of(weight, depth))
      if (is_admissible(c)) out.push_back(std::move(c));
  return out;
}

} // namespace cmzv
