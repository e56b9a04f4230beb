#include "cmzv/poles.hpp"

#include "cmzv/compositions.hpp"
#include "cmzv/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace cmzv {

std::string Hyperplane::to_string() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (i) out << " + ";
    if (coeffs[i] != 1) out << coeffs[i];
    out << 's' << (i + 1);
  }
  out << " = " << constant;
  return out.str();
}

std::vector<int> perm_min_sequence(std::span<const int> sigma) {
  const auto r = sigma.size();
  if (r == 0) throw invalid_input("empty permutation");
  std::vector<bool> seen(r + 1, false);
  for (int v : sigma) {
    if (v < 1 || static_cast<std::size_t>(v) > r || seen[static_cast<std::size_t>(v)])
      throw invalid_input("not a permutation of 1..r");
    seen[static_cast<std::size_t>(v)] = true;
  }
  std::vector<int> out(r);
  int running = sigma[0];
  for (std::size_t i = 0; i < r; ++i) {
    running = std::min(running, sigma[i]);
    out[i] = running;
  }
  return out;
}

std::set<Hyperplane> pole_hyperplanes(int r, int k_max, int r_cap) {
  if (r < 1) throw invalid_input("pole_hyperplanes needs r >= 1");
  if (k_max < 1) throw invalid_input("pole_hyperplanes needs k_max >= 1");
  if (r > r_cap)
    throw capacity_error("r = " + std::to_string(r) + " exceeds the permutation cap " + std::to_string(r_cap));
  std::set<Hyperplane> out;
  std::vector<int> sigma(static_cast<std::size_t>(r));
  std::iota(sigma.begin(), sigma.end(), 1);
  do {
    const auto m = perm_min_sequence(sigma);
    for (int i = 1; i <= r; ++i) {
      std::vector<int> coeffs(m.begin(), m.begin() + i);
      for (int k = 1; k <= k_max; ++k) out.insert({coeffs, (i + 1) - k});
    }
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return out;
}

bool hyperplane_meets_domain(const Hyperplane& h, std::span<const std::vector<double>> samples,
                             double slack) {
  for (const auto& point : samples) {
    if (point.size() < h.coeffs.size()) throw invalid_input("sample point has too few coordinates");
    if (!in_convergence_domain(point)) continue;
    double lhs = 0.0;
    for (std::size_t i = 0; i < h.coeffs.size(); ++i) lhs += h.coeffs[i] * point[i];
    if (std::abs(lhs - h.constant) <= slack) return true;
  }
  return false;
}

double depth1_value(double s) {
  if (!(s > 1.0)) throw domain_error("depth-1 value requires s > 1");
  return 1.0 / (s - 1.0);
}

} // namespace cmzv
