#include <doctest.h>

#include <set>

#include "fullgroup/diophantine.hpp"
#include "support.hpp"

using namespace fullgroup;
using testing_support::approx;
using testing_support::high_precision;

namespace {

const CircleNumber r2 = CircleNumber::sqrt_of(2);
const CircleNumber r3 = CircleNumber::sqrt_of(3);
const CircleNumber r5 = CircleNumber::sqrt_of(5);

mpf_class circle_dist_hp(const mpf_class& v) {
  mpf_class f = v - floor(v);
  mpf_class g = 1 - f;
  return f < g ? f : g;
}

// Brute force: smallest |k| (positive first) with max_j ||k a_j - t_j|| < tol, in 512-bit floats.
std::int64_t brute_force(const std::vector<CircleNumber>& alphas, const std::vector<CircleNumber>& targets,
                         const Rational& tol, std::int64_t k_max) {
  std::vector<mpf_class> a, t;
  for (const auto& x : alphas) a.push_back(high_precision(x));
  for (const auto& x : targets) t.push_back(high_precision(x));
  mpf_class bound(tol, 512);
  for (std::int64_t m = 1; m <= k_max; ++m) {
    for (std::int64_t k : {m, -m}) {
      mpf_class worst(0, 512);
      for (std::size_t j = 0; j < a.size(); ++j) {
        mpf_class d = circle_dist_hp(a[j] * k - t[j]);
        if (d > worst) worst = d;
      }
      if (worst < bound) return k;
    }
  }
  return 0;
}

}  // namespace

TEST_CASE("continued fraction examples") {
  auto cf = continued_fraction(r2 - 1, 5);
  CHECK(cf == std::vector<Integer>{2, 2, 2, 2, 2});
  CHECK(continued_fraction(CircleNumber(Rational(1, 3)), 3) == std::vector<Integer>{3});
  CHECK(continued_fraction(r5 - 2, 4) == std::vector<Integer>{4, 4, 4, 4});
  // sqrt(3) - 1 = [1; 2, 1, 2, ...]
  CHECK(continued_fraction(r3 - 1, 6) == std::vector<Integer>{1, 2, 1, 2, 1, 2});
  CHECK(continued_fraction(CircleNumber(Rational(7, 10)), 10) == std::vector<Integer>{1, 2, 3});
}

TEST_CASE("continued fraction convergents approximate the input") {
  // Rebuild the convergent from the quotients and compare with the float oracle.
  for (const CircleNumber& a : {r2 - 1, r5 - 2, r3 - 1, CircleNumber::sqrt_of(7) - 2}) {
    auto cf = continued_fraction(a, 20);
    REQUIRE(cf.size() == 20);
    Rational x(0);
    for (auto it = cf.rbegin(); it != cf.rend(); ++it) {
      x = 1 / (Rational(*it) + x);
    }
    mpf_class err = abs(mpf_class(x, 512) - high_precision(a));
    mpf_class den(x.get_den(), 512);
    CHECK(err < 1 / (den * den));
  }
}

TEST_CASE("best_mod1_approx examples") {
  ApproxResult r = best_mod1_approx(r2 - 1, CircleNumber(), Rational(2, 25), 100);
  CHECK(r.k == 5);
  CHECK(r.achieved == abs(CircleNumber(7) - r2 * 5));
  CHECK(r.achieved == r2 * 5 - 7);
  CHECK(approx(r.achieved) == doctest::Approx(0.07107).epsilon(1e-4));

  ApproxResult hit = best_mod1_approx(r2 - 1, r2 - 1, Rational(1, 1000000), 100);
  CHECK(hit.k == 1);
  CHECK(hit.achieved.is_zero());

  // Both signs are scanned: k = -8 comes before k = 9.
  const CircleNumber tenth(Rational(1, 10));
  ApproxResult eight = best_mod1_approx(r5 - 2, tenth, Rational(3, 100), 100);
  CHECK(eight.k == -8);
  CHECK(eight.achieved == CircleNumber(Rational(179, 10)) - r5 * 8);
  CHECK(approx(eight.achieved) == doctest::Approx(0.011456).epsilon(1e-3));
  CHECK(brute_force({r5 - 2}, {tenth}, Rational(3, 100), 100) == -8);
  // Among positive k the first hit is 9, with ||9 (sqrt(5) - 2) - 1/10|| ≈ 0.0246.
  std::int64_t first_positive = 0;
  for (std::int64_t k = 1; k <= 100 && first_positive == 0; ++k) {
    if (circle_dist_hp(high_precision((r5 - 2) * k - tenth)) < mpf_class(Rational(3, 100), 512)) first_positive = k;
  }
  CHECK(first_positive == 9);
  CircleNumber nine = circle_distance((r5 - 2) * 9 - tenth);
  CHECK(nine == abs(r5 * 9 - 18 - 2 - tenth));
  CHECK(approx(nine) == doctest::Approx(0.0246).epsilon(1e-2));

  CHECK_THROWS_AS(best_mod1_approx(r2 - 1, CircleNumber(), Rational(1, 1000000), 10), NotFound);
  try {
    best_mod1_approx(r2 - 1, CircleNumber(), Rational(1, 1000000), 10);
  } catch (const NotFound& e) {
    CHECK(e.k_max() == 10);
  }
}

TEST_CASE("best_mod1_approx agrees with brute force") {
  std::mt19937_64 rng(31);
  const std::vector<CircleNumber> alphas{r2 - 1, r5 - 2, r3 - 1, CircleNumber::sqrt_of(7) - 2};
  for (int i = 0; i < 60; ++i) {
    const CircleNumber& a = alphas[i % alphas.size()];
    CircleNumber t(testing_support::random_rational(rng, 100));
    Rational tol(1 + static_cast<long>(rng() % 50), 1000);
    std::int64_t expected = brute_force({a}, {t}, tol, 2000);
    if (expected == 0) {
      CHECK_THROWS_AS(best_mod1_approx(a, t, tol, 2000), NotFound);
      continue;
    }
    ApproxResult r = best_mod1_approx(a, t, tol, 2000);
    CHECK(r.k == expected);
    CHECK(r.achieved == circle_distance(a * r.k - t));
    CHECK(r.achieved < CircleNumber(tol));
  }
}

TEST_CASE("simultaneous approximation") {
  std::vector<CircleNumber> alphas{r2 - 1, r3 - 1};
  std::vector<CircleNumber> targets{CircleNumber(Rational(1, 20)), CircleNumber()};
  ApproxResult r = simultaneous_approx(alphas, targets, Rational(1, 25), 1000000);
  CHECK(r.k == brute_force(alphas, targets, Rational(1, 25), 100000));
  CHECK(r.achieved < CircleNumber(Rational(1, 25)));
  CHECK(r.achieved == max(circle_distance(alphas[0] * r.k - targets[0]), circle_distance(alphas[1] * r.k)));

  std::vector<CircleNumber> zeros{CircleNumber(), CircleNumber()};
  ApproxResult z = simultaneous_approx(alphas, zeros, Rational(1, 30), 1000000);
  CHECK(z.k != 0);
  CHECK(z.k == brute_force(alphas, zeros, Rational(1, 30), 100000));

  // n = 1 matches the one-dimensional search.
  std::vector<CircleNumber> one{r5 - 2};
  std::vector<CircleNumber> t1{CircleNumber(Rational(1, 10))};
  ApproxResult s = simultaneous_approx(one, t1, Rational(3, 100), 100);
  ApproxResult b = best_mod1_approx(one[0], t1[0], Rational(3, 100), 100);
  CHECK(s.k == b.k);
  CHECK(s.achieved == b.achieved);

  std::vector<CircleNumber> dependent{r2 - 1, r2 * 3 - 4};
  CHECK_THROWS_AS(simultaneous_approx(dependent, zeros, Rational(1, 30), 1000), IndependenceError);
  // scan_approx drops the precondition.
  ApproxResult d = scan_approx(dependent, zeros, Rational(1, 30), 100000);
  CHECK(d.k == brute_force(dependent, zeros, Rational(1, 30), 100000));
}

TEST_CASE("shrinking tol never decreases |k|") {
  std::vector<CircleNumber> alphas{r2 - 1, r3 - 1};
  std::vector<CircleNumber> targets{CircleNumber(Rational(1, 20)), CircleNumber()};
  std::int64_t previous = 0;
  for (long den : {10L, 20L, 40L, 80L, 160L, 320L}) {
    ApproxResult r = simultaneous_approx(alphas, targets, Rational(1, den), 10000000);
    std::int64_t mag = r.k < 0 ? -r.k : r.k;
    CHECK(mag >= previous);
    previous = mag;
  }
}

TEST_CASE("three distances for K <= 200") {
  for (const CircleNumber& a : {r2 - 1, r5 - 2, r3 - 1}) {
    for (std::size_t k = 1; k <= 200; ++k) {
      auto gaps = orbit_gaps(a, k);
      CHECK(gaps.size() == k + 1);
      std::vector<CircleNumber> distinct;
      CircleNumber total;
      for (const auto& g : gaps) {
        total += g;
        bool seen = false;
        for (const auto& d : distinct) seen = seen || d == g;
        if (!seen) distinct.push_back(g);
      }
      CHECK(distinct.size() <= 3);
      CHECK(total == CircleNumber(1));
      if (distinct.size() == 3) {
        std::sort(distinct.begin(), distinct.end());
        CHECK(distinct[2] == distinct[0] + distinct[1]);
      }
    }
  }
}
