#pragma once

// Shared generators and independent oracles for the test suites.

#include <cstdint>
#include <random>
#include <vector>

#include <gmpxx.h>

#include "fullgroup/circle_maps.hpp"
#include "fullgroup/generator_word.hpp"
#include "fullgroup/number_field.hpp"

namespace testing_support {

using namespace fullgroup;

// High-precision float evaluation straight from the surd coefficients.
inline mpf_class high_precision(const CircleNumber& a, unsigned bits = 512) {
  mpf_class v(a.rational_part(), bits);
  for (const auto& term : a.surds()) {
    mpf_class root(static_cast<double>(term.radicand), bits);
    root = sqrt(root);
    v += mpf_class(term.coeff, bits) * root;
  }
  return v;
}

inline double approx(const CircleNumber& a) { return high_precision(a).get_d(); }

inline Rational random_rational(std::mt19937_64& rng, long den_max = 1000) {
  std::uniform_int_distribution<long> den(1, den_max);
  long d = den(rng);
  std::uniform_int_distribution<long> num(0, d - 1);
  Rational q(num(rng), d);
  q.canonicalize();
  return q;
}

// Random number of the form q0 + q1 sqrt(2) + q2 sqrt(3) + q3 sqrt(5).
inline CircleNumber random_number(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> small(-20, 20);
  std::uniform_int_distribution<long> den(1, 12);
  CircleNumber a(Rational(small(rng), den(rng)));
  for (long d : {2L, 3L, 5L}) {
    if (rng() % 2) a += CircleNumber::sqrt_of(d) * Rational(small(rng), den(rng));
  }
  return a;
}

// Point of [0, 1) of the form reduce_mod1(q + j alpha).
inline CircleNumber random_point(std::mt19937_64& rng, const RotationSystem& system, std::size_t circle) {
  std::uniform_int_distribution<int> j(-6, 6);
  return reduce_mod1(CircleNumber(random_rational(rng, 60)) + system.alpha(circle) * j(rng));
}

inline ArcSet random_arcs(std::mt19937_64& rng, const RotationSystem& system, int max_arcs = 3,
                          double max_len = 0.2) {
  ArcSet out(system.circles());
  std::uniform_int_distribution<int> count(0, max_arcs);
  std::uniform_int_distribution<std::size_t> circle(0, system.circles() - 1);
  std::uniform_int_distribution<long> len(1, static_cast<long>(max_len * 100));
  int arcs = count(rng);
  for (int a = 0; a < arcs; ++a) {
    std::size_t i = circle(rng);
    CircleNumber lo = random_point(rng, system, i);
    out = unite(out, ArcSet::arc(system.circles(), i, lo, lo + CircleNumber(Rational(len(rng), 100))));
  }
  return out;
}

// Random arc set A with A ∩ T(A) = ∅.
inline ArcSet random_valid_arcs(std::mt19937_64& rng, const RotationSystem& system, int max_arcs = 3,
                                double max_len = 0.2) {
  while (true) {
    ArcSet a = random_arcs(rng, system, max_arcs, max_len);
    if (intersect(a, rotate(a, system, 1)).empty()) return a;
  }
}

// Product of a few random rotations and involutions.
inline PiecewiseRotation random_map(std::mt19937_64& rng, const SystemPtr& system, int factors = 3) {
  PiecewiseRotation s = PiecewiseRotation::identity(system);
  std::uniform_int_distribution<int> power(-5, 5);
  for (int f = 0; f < factors; ++f) {
    if (rng() % 2) {
      s = compose(rotation(system, power(rng)), s);
    } else {
      s = compose(make_involution(system, random_valid_arcs(rng, *system)), s);
    }
  }
  return s;
}

inline GeneratorWord random_word(std::mt19937_64& rng, int length = 6) {
  std::uniform_int_distribution<int> power(-7, 7);
  std::vector<Token> tokens;
  for (int t = 0; t < length; ++t) tokens.push_back(rng() % 2 ? Token::inv() : Token::rot(power(rng)));
  return GeneratorWord(tokens);
}

}  // namespace testing_support
