#pragma once

#include <random>
#include <string>
#include <vector>

#include "tdoa/geometry.hpp"
#include "tdoa/polynomial.hpp"

namespace tdoa::testing {

inline ReceiverConfig config1() { return ReceiverConfig::make({0, 0}, {2, 0}, {2, 2}); }
inline ReceiverConfig config2() { return ReceiverConfig::make({0, 0}, {2, 0}, {-2, 2}); }

struct Term {
  int i;
  int j;
  long c;
};

inline BivariatePoly from_terms(const std::vector<Term>& terms) {
  BivariatePoly p;
  for (const Term& t : terms) p += BivariatePoly::monomial(t.i, t.j, Rational(t.c));
  return p;
}

// Known Cartesian equations (divided by W^8) of the curves for config1 and config2.
inline BivariatePoly reference_quintic1() {
  return from_terms({{4, 1, -4}, {3, 2, 4}, {2, 3, -4}, {1, 4, 4}, {4, 0, 2}, {3, 1, 20}, {2, 2, -16},
                     {1, 3, 4},  {0, 4, -6}, {3, 0, -10}, {2, 1, -38}, {1, 2, 30}, {0, 3, 2}, {2, 0, 18},
                     {1, 1, 28}, {0, 2, -22}, {1, 0, -12}, {0, 1, -4}, {0, 0, 1}});
}

inline BivariatePoly reference_quintic2() {
  return from_terms({{4, 1, -20}, {3, 2, -60}, {2, 3, -60}, {1, 4, -60}, {0, 5, -40}, {4, 0, 10}, {3, 1, 68},
                     {2, 2, 80},  {1, 3, 84},  {0, 4, 82},  {3, 0, -34}, {2, 1, -58}, {1, 2, -10},
                     {0, 3, -50}, {2, 0, 30},  {1, 1, 4},   {0, 2, 22},  {1, 0, -4},  {0, 1, -4},  {0, 0, 1}});
}

inline Rational random_rational(std::mt19937_64& rng, long range = 20, long den = 7) {
  std::uniform_int_distribution<long> num(-range * den, range * den);
  std::uniform_int_distribution<long> d(1, den);
  return Rational(num(rng), d(rng));
}

inline ReceiverConfig random_config(std::mt19937_64& rng) {
  for (;;) {
    const QVec2 m0{random_rational(rng), random_rational(rng)};
    const QVec2 m1{random_rational(rng), random_rational(rng)};
    const QVec2 m2{random_rational(rng), random_rational(rng)};
    if (!wedge_star(m1 - m0, m2 - m0).is_zero()) return ReceiverConfig::make(m0, m1, m2);
  }
}

}  // namespace tdoa::testing
