#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "humbert/cohomology.hpp"

namespace humbert::testing {

// Deterministic generators for property tests. Raw engine output is reduced
// by hand (std::uniform_int_distribution is not pinned across platforms).
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  int uniform(int lo, int hi) {  // inclusive bounds
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<int>(engine_() % span);
  }

  Rational rational() {
    int num = uniform(-9, 9);
    if (num == 0) num = 1;
    return Rational(num, uniform(1, 3));
  }

private:
  std::mt19937_64 engine_;
};

inline BasisSymbol random_symbol(Rng& rng, int pairs) {
  const auto basis = curve_basis(pairs);
  return basis[static_cast<std::size_t>(
      rng.uniform(0, static_cast<int>(basis.size()) - 1))];
}

inline Monomial random_monomial(Rng& rng, int m, int pairs) {
  std::vector<BasisSymbol> slots;
  slots.reserve(static_cast<std::size_t>(m));
  for (int s = 0; s < m; ++s) slots.push_back(random_symbol(rng, pairs));
  return Monomial(std::move(slots));
}

inline CohClass random_class(Rng& rng, int m, int pairs, int terms) {
  CohClass out(m);
  for (int t = 0; t < terms; ++t)
    out.add_term(random_monomial(rng, m, pairs), rng.rational());
  return out;
}

inline CohClass random_homogeneous_class(Rng& rng, int m, int degree,
                                         int pairs, int terms) {
  const auto basis = monomial_basis(m, degree, pairs);
  CohClass out(m);
  if (basis.empty()) return out;
  for (int t = 0; t < terms; ++t) {
    const auto& mono = basis[static_cast<std::size_t>(
        rng.uniform(0, static_cast<int>(basis.size()) - 1))];
    out.add_term(mono, rng.rational());
  }
  return out;
}

// A random 1-class (element of H^1) with integer coefficients.
inline CohClass random_one_class(Rng& rng, int pairs) {
  CohClass out(1);
  for (int k = 1; k <= pairs; ++k) {
    out += Rational(rng.uniform(-9, 9)) * CohClass::symbol(BasisSymbol::e(k));
    out += Rational(rng.uniform(-9, 9)) * CohClass::symbol(BasisSymbol::f(k));
  }
  return out;
}

}  // namespace humbert::testing
