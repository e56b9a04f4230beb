#pragma once

#include <compare>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace cmzv {

inline constexpr int kDefaultPermutationCap = 8;

/// Candidate pole m1 s1 + ... + mi si = constant, with m1 >= ... >= mi >= 1.
struct Hyperplane {
  std::vector<int> coeffs;
  int constant = 0;

  auto operator<=>(const Hyperplane&) const = default;
  bool operator==(const Hyperplane&) const = default;

  std::string to_string() const;
};

/// Running minima m_i = min(sigma(1..i)) of a permutation of 1..r given in
/// one-line notation. Throws InvalidInput if sigma is not a permutation.
std::vector<int> perm_min_sequence(std::span<const int> sigma);

/// Union over all permutations of S_r of the hyperplanes
/// m1 s1 + ... + mi si = (i+1) - k_i, 1 <= k_i <= k_max, 1 <= i <= r.
/// Throws Capacity when r exceeds `r_cap`.
std::set<Hyperplane> pole_hyperplanes(int r, int k_max, int r_cap = kDefaultPermutationCap);

/// Whether the hyperplane passes through the open convergence domain at any
/// of the given sample points (each a full r-tuple of real parts), i.e.
/// whether some point is in the domain and on the hyperplane within `slack`.
bool hyperplane_meets_domain(const Hyperplane& h, std::span<const std::vector<double>> samples,
                             double slack);

/// 1/(s-1), s > 1.
double depth1_value(double s);

} // namespace cmzv
