#include "fullgroup/diophantine.hpp"

#include <algorithm>

namespace fullgroup {

namespace {

using Wide = __int128;

constexpr unsigned kFixedBits = 64;
constexpr Wide kScale = Wide{1} << kFixedBits;
constexpr Wide kHalf = kScale / 2;

Wide to_wide(const Integer& v) {
  // |v| <= 2^65 here
  Integer mag = abs(v);
  Integer hi = mag >> 64;
  Integer lo = mag - (hi << 64);
  unsigned long long h = mpz_get_ui(hi.get_mpz_t());
  unsigned long long l = 0;
  // mpz_get_ui returns unsigned long, 64 bits on the supported platforms
  l = mpz_get_ui(lo.get_mpz_t());
  Wide w = (static_cast<Wide>(h) << 64) | static_cast<Wide>(l);
  return v < 0 ? -w : w;
}

Integer floor_scaled(const Rational& q) {
  Integer r;
  Integer num = q.get_num() << kFixedBits;
  mpz_fdiv_q(r.get_mpz_t(), num.get_mpz_t(), q.get_den_mpz_t());
  return r;
}

Integer ceil_scaled(const Rational& q) {
  Integer r;
  Integer num = q.get_num() << kFixedBits;
  mpz_cdiv_q(r.get_mpz_t(), num.get_mpz_t(), q.get_den_mpz_t());
  return r;
}

// Fixed-point enclosure lower/kScale <= x <= upper/kScale.
struct FixedInterval {
  Wide lower;
  Wide upper;
};

FixedInterval fixed_enclosure(const CircleNumber& x) {
  RationalInterval e = enclose(x, kFixedBits + 2);
  return {to_wide(floor_scaled(e.lower)), to_wide(ceil_scaled(e.upper))};
}

enum class Verdict { accept, reject, unknown };

// Decides ||x|| < tol for x enclosed by [lower, upper] / kScale.
Verdict classify(Wide lower, Wide upper, Wide tol_lo, Wide tol_hi) {
  Wide fl = lower >> kFixedBits;  // arithmetic shift: floor division
  Wide fh = upper >> kFixedBits;
  if (fl != fh) return Verdict::unknown;
  Wide a = lower - fl * kScale;
  Wide b = upper - fl * kScale;
  Wide dlo, dhi;
  if (b <= kHalf) {
    dlo = a;
    dhi = b;
  } else if (a >= kHalf) {
    dlo = kScale - b;
    dhi = kScale - a;
  } else {
    dlo = std::min(a, kScale - b);
    dhi = kHalf;
  }
  if (dhi < tol_lo) return Verdict::accept;
  if (dlo >= tol_hi) return Verdict::reject;
  return Verdict::unknown;
}

void check_common(std::span<const CircleNumber> alphas, std::span<const CircleNumber> targets, const Rational& tol,
                  std::int64_t k_max) {
  if (alphas.empty()) throw std::invalid_argument("no rotation amounts given");
  if (alphas.size() != targets.size()) throw std::invalid_argument("alphas and targets differ in length");
  if (tol <= 0) throw std::invalid_argument("tolerance must be positive");
  if (k_max < 1 || k_max > kMaxSearchBound) {
    throw std::invalid_argument("k_max must lie in [1, 2^52], got " + std::to_string(k_max));
  }
}

}  // namespace

NotFound::NotFound(std::int64_t k_max, const std::string& what) : std::runtime_error(what), k_max_(k_max) {}

std::vector<Integer> continued_fraction(const CircleNumber& a, std::size_t depth) {
  if (sign(a) != Sign::positive || !(a < CircleNumber(1))) {
    throw std::invalid_argument("continued_fraction expects a in (0, 1), got " + a.to_string());
  }
  std::vector<Integer> quotients;
  CircleNumber prev(1);
  CircleNumber cur = a;
  while (quotients.size() < depth && !cur.is_zero()) {
    // q = floor(prev / cur), found from enclosures and confirmed by exact sign tests.
    Integer q;
    for (unsigned bits = 32;; bits *= 2) {
      RationalInterval x = enclose(prev, bits);
      RationalInterval y = enclose(cur, bits);
      if (y.lower <= 0) continue;
      Rational lo = x.lower / y.upper;
      Rational hi = x.upper / y.lower;
      Integer qlo, qhi;
      mpz_fdiv_q(qlo.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
      mpz_fdiv_q(qhi.get_mpz_t(), hi.get_num_mpz_t(), hi.get_den_mpz_t());
      if (qlo != qhi) continue;
      CircleNumber rest = prev - cur * Rational(qlo);
      if (sign(rest) != Sign::negative && rest < cur) {
        q = qlo;
        break;
      }
    }
    quotients.push_back(q);
    CircleNumber next = prev - cur * Rational(q);
    prev = std::move(cur);
    cur = std::move(next);
  }
  return quotients;
}

ApproxResult scan_approx(std::span<const CircleNumber> alphas, std::span<const CircleNumber> targets,
                         const Rational& tol, std::int64_t k_max) {
  check_common(alphas, targets, tol, k_max);
  const std::size_t n = alphas.size();
  std::vector<CircleNumber> alpha(n), target(n);
  std::vector<FixedInterval> a(n), t(n);
  for (std::size_t j = 0; j < n; ++j) {
    alpha[j] = reduce_mod1(alphas[j]);
    target[j] = reduce_mod1(targets[j]);
    a[j] = fixed_enclosure(alpha[j]);
    t[j] = fixed_enclosure(target[j]);
  }
  Rational capped = tol > 1 ? Rational(1) : tol;
  const Wide tol_lo = to_wide(floor_scaled(capped));
  const Wide tol_hi = to_wide(ceil_scaled(capped));

  auto exact_distance = [&](std::int64_t k, std::size_t j) {
    return circle_distance(alpha[j] * k - target[j]);
  };

  std::vector<std::size_t> pending;
  pending.reserve(n);
  ApproxResult result;
  for (std::int64_t m = 1; m <= k_max; ++m) {
    for (std::int64_t k : {m, -m}) {
      ++result.evaluations;
      pending.clear();
      bool rejected = false;
      for (std::size_t j = 0; j < n && !rejected; ++j) {
        Wide lower, upper;
        if (k > 0) {
          lower = static_cast<Wide>(k) * a[j].lower - t[j].upper;
          upper = static_cast<Wide>(k) * a[j].upper - t[j].lower;
        } else {
          lower = static_cast<Wide>(k) * a[j].upper - t[j].upper;
          upper = static_cast<Wide>(k) * a[j].lower - t[j].lower;
        }
        switch (classify(lower, upper, tol_lo, tol_hi)) {
          case Verdict::reject: rejected = true; break;
          case Verdict::unknown: pending.push_back(j); break;
          case Verdict::accept: break;
        }
      }
      if (rejected) continue;
      bool ok = std::all_of(pending.begin(), pending.end(),
                            [&](std::size_t j) { return exact_distance(k, j) < CircleNumber(tol); });
      if (!ok) continue;
      result.k = k;
      result.achieved = exact_distance(k, 0);
      for (std::size_t j = 1; j < n; ++j) {
        CircleNumber d = exact_distance(k, j);
        if (result.achieved < d) result.achieved = std::move(d);
      }
      return result;
    }
  }
  throw NotFound(k_max, "no k with 1 <= |k| <= " + std::to_string(k_max) + " reaches tolerance " + tol.get_str());
}

ApproxResult best_mod1_approx(const CircleNumber& alpha, const CircleNumber& target, const Rational& tol,
                              std::int64_t k_max) {
  if (alpha.is_rational()) throw std::invalid_argument("best_mod1_approx expects an irrational alpha");
  return scan_approx(std::span(&alpha, 1), std::span(&target, 1), tol, k_max);
}

ApproxResult simultaneous_approx(std::span<const CircleNumber> alphas, std::span<const CircleNumber> targets,
                                 const Rational& tol, std::int64_t k_max) {
  for (const auto& a : alphas) {
    if (a.is_rational()) throw IndependenceError("rotation amount " + a.to_string() + " is rational");
  }
  if (!surd_parts_independent(alphas)) {
    throw IndependenceError("rotation amounts are linearly dependent over Q together with 1");
  }
  return scan_approx(alphas, targets, tol, k_max);
}

std::vector<CircleNumber> orbit_gaps(const CircleNumber& alpha, std::size_t count) {
  std::vector<CircleNumber> points;
  points.reserve(count + 1);
  CircleNumber x;
  CircleNumber step = reduce_mod1(alpha);
  for (std::size_t j = 0; j <= count; ++j) {
    points.push_back(x);
    x = reduce_mod1(x + step);
  }
  std::sort(points.begin(), points.end());
  std::vector<CircleNumber> gaps;
  gaps.reserve(points.size());
  for (std::size_t j = 0; j + 1 < points.size(); ++j) gaps.push_back(points[j + 1] - points[j]);
  gaps.push_back(CircleNumber(1) - points.back() + points.front());
  return gaps;
}

}  // namespace fullgroup
