#pragma once

// Certified approximation of targets on the circle by integer multiples of
// rotation amounts.

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "fullgroup/number_field.hpp"

namespace fullgroup {

/// No admissible k with |k| <= k_max.
class NotFound : public std::runtime_error {
 public:
  NotFound(std::int64_t k_max, const std::string& what);
  std::int64_t k_max() const { return k_max_; }

 private:
  std::int64_t k_max_;
};

struct ApproxResult {
  std::int64_t k = 0;
  /// Exact max over components of the circle distance ||k alpha_j - target_j||.
  CircleNumber achieved;
  /// Candidates examined, counting +k and -k separately.
  std::uint64_t evaluations = 0;
};

/// Largest supported k_max; the scan keeps 64-bit fixed-point enclosures in 128-bit integers.
inline constexpr std::int64_t kMaxSearchBound = std::int64_t{1} << 52;

/// First `depth` partial quotients [a_1, a_2, ...] of a in (0, 1), stopping early
/// when the expansion terminates (rational a).
std::vector<Integer> continued_fraction(const CircleNumber& a, std::size_t depth);

/// Smallest |k| in [1, k_max] (positive k first on ties) with ||k alpha - target|| < tol.
/// Every smaller |k| is rejected by an exhaustive certified scan.
ApproxResult best_mod1_approx(const CircleNumber& alpha, const CircleNumber& target, const Rational& tol,
                              std::int64_t k_max);

/// Smallest |k| in [1, k_max] with max_j ||k alpha_j - target_j|| < tol. Requires
/// {1, alpha_0, ..., alpha_{n-1}} independent over Q.
ApproxResult simultaneous_approx(std::span<const CircleNumber> alphas, std::span<const CircleNumber> targets,
                                 const Rational& tol, std::int64_t k_max);

/// Same scan without the independence precondition.
ApproxResult scan_approx(std::span<const CircleNumber> alphas, std::span<const CircleNumber> targets,
                         const Rational& tol, std::int64_t k_max);

/// Lengths of the gaps between consecutive points of {j alpha mod 1 : 0 <= j <= count},
/// in circular order starting at 0.
std::vector<CircleNumber> orbit_gaps(const CircleNumber& alpha, std::size_t count);

}  // namespace fullgroup
