#pragma once

#include <compare>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cmzv {

/// Index (k1, ..., kr) of a continuous multiple zeta value. Immutable; depth
/// and weight are derived.
class Composition {
public:
  explicit Composition(std::vector<int> parts);

  /// Parses "1,2,3". Throws InvalidInput on malformed text or parts < 1.
  static Composition parse(std::string_view text);

  const std::vector<int>& parts() const noexcept { return parts_; }
  int depth() const noexcept { return static_cast<int>(parts_.size()); }
  int weight() const noexcept;
  int operator[](std::size_t i) const { return parts_[i]; }

  std::string to_string() const;

  auto operator<=>(const Composition&) const = default;
  bool operator==(const Composition&) const = default;

private:
  std::vector<int> parts_;
};

/// Last part >= 2.
bool is_admissible(const Composition& c);

/// Strict suffix conditions sigma_j + ... + sigma_r > r - j + 1 for every j.
bool in_convergence_domain(std::span<const double> sigma);

/// Product over j of 1 / (sigma_j + ... + sigma_r - (r - j + 1)); a strict
/// upper bound for the absolute value of the integral. Throws Domain outside
/// the convergence domain.
double convergence_bound(std::span<const double> sigma);

std::vector<double> as_reals(const Composition& c);

/// y x^{k1-1} y x^{k2-1} ... ; defined for every composition.
std::string word_from_composition(const Composition& c);

/// Inverse of word_from_composition. The word must be nonempty, over {x, y}
/// and start with y; a trailing y (last part 1) is accepted.
Composition composition_from_word(std::string_view word);

/// Admissible word: begins with y and ends with x (the empty word is the unit).
bool is_admissible_word(std::string_view word);

/// All compositions of `weight` with exactly `depth` parts, lexicographic.
std::vector<Composition> compositions_of(int weight, int depth);

/// All admissible compositions of weight exactly `weight`.
std::vector<Composition> admissible_compositions(int weight);

} // namespace cmzv
