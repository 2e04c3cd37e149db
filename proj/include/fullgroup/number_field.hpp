#pragma once

// Exact numbers of the form q0 + q1*sqrt(d1) + ... + qk*sqrt(dk) with rational
// coefficients and distinct squarefree radicands d >= 2.

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace fullgroup {

using Integer = mpz_class;
using Rational = mpq_class;
using Radicand = std::int64_t;

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Numbers that were required to be linearly independent over Q (together with 1) are not.
class IndependenceError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Sign { negative = -1, zero = 0, positive = 1 };

/// Closed interval [lower, upper] with rational endpoints.
struct RationalInterval {
  Rational lower;
  Rational upper;

  Rational width() const { return upper - lower; }
  bool contains(const Rational& q) const { return lower <= q && q <= upper; }
};

bool is_squarefree(Radicand d);

/// Ordered set of distinct squarefree radicands. Together with 1 their square
/// roots are linearly independent over the rationals.
class IrrationalBasis {
 public:
  IrrationalBasis() = default;
  explicit IrrationalBasis(std::vector<Radicand> radicands);

  std::span<const Radicand> radicands() const { return radicands_; }
  std::size_t size() const { return radicands_.size(); }
  bool contains(Radicand d) const;
  std::size_t index_of(Radicand d) const;

  friend bool operator==(const IrrationalBasis&, const IrrationalBasis&) = default;

 private:
  std::vector<Radicand> radicands_;
};

struct SurdTerm {
  Radicand radicand;
  Rational coeff;

  friend bool operator==(const SurdTerm&, const SurdTerm&) = default;
};

/// A point of the real line in the rational span of {1, sqrt(d) : d squarefree}.
///
/// Always held in canonical form: surd terms sorted by radicand, no zero
/// coefficients. Equality is therefore componentwise and decides equality of
/// the real numbers, because the square roots of distinct squarefree integers
/// are linearly independent over Q together with 1.
class CircleNumber {
 public:
  CircleNumber() = default;
  CircleNumber(Rational q) : rational_(std::move(q)) { rational_.canonicalize(); }
  CircleNumber(long v) : rational_(v) {}
  CircleNumber(int v) : rational_(v) {}

  /// sqrt(n) for n >= 0, written over its squarefree part (sqrt(8) = 2*sqrt(2)).
  static CircleNumber sqrt_of(std::int64_t n);

  /// Parses the textual form, e.g. "sqrt(2) - 1", "3/4*sqrt(5) + 1/2", "0.125".
  /// Decimals are read as exact rationals.
  static CircleNumber parse(std::string_view text);

  const Rational& rational_part() const { return rational_; }
  std::span<const SurdTerm> surds() const { return surds_; }
  Rational coeff(Radicand d) const;

  bool is_zero() const { return surds_.empty() && rational_ == 0; }
  bool is_rational() const { return surds_.empty(); }
  bool is_integer() const { return surds_.empty() && rational_.get_den() == 1; }

  CircleNumber operator-() const;
  CircleNumber& operator+=(const CircleNumber& rhs);
  CircleNumber& operator-=(const CircleNumber& rhs);
  CircleNumber& operator*=(const Rational& q);

  friend CircleNumber operator+(CircleNumber a, const CircleNumber& b) { return a += b; }
  friend CircleNumber operator-(CircleNumber a, const CircleNumber& b) { return a -= b; }
  friend CircleNumber operator*(CircleNumber a, const Rational& q) { return a *= q; }
  friend CircleNumber operator*(const Rational& q, CircleNumber a) { return a *= q; }
  friend CircleNumber operator*(CircleNumber a, std::int64_t k) { return a *= Rational(static_cast<long>(k)); }
  friend CircleNumber operator*(std::int64_t k, CircleNumber a) { return a *= Rational(static_cast<long>(k)); }

  friend bool operator==(const CircleNumber& a, const CircleNumber& b) {
    return a.rational_ == b.rational_ && a.surds_ == b.surds_;
  }
  /// Real-number order, decided by sign().
  friend std::strong_ordering operator<=>(const CircleNumber& a, const CircleNumber& b);

  std::string to_string() const;

  /// Non-certified floating approximation, for diagnostics and sampling oracles only.
  double to_double() const;

 private:
  Rational rational_;
  std::vector<SurdTerm> surds_;
};

std::ostream& operator<<(std::ostream& os, const CircleNumber& a);

CircleNumber add(const CircleNumber& a, const CircleNumber& b);
CircleNumber sub(const CircleNumber& a, const CircleNumber& b);
CircleNumber negate(const CircleNumber& a);
CircleNumber scale(const CircleNumber& a, const Rational& q);

bool is_zero(const CircleNumber& a);

/// Exact sign. Enclosures start at 32 fractional bits and double until the
/// enclosure excludes zero; terminates for every nonzero input.
Sign sign(const CircleNumber& a);

/// Rational interval of width <= 2^-precision containing a. Refining the
/// precision yields nested intervals.
RationalInterval enclose(const CircleNumber& a, unsigned precision);

Integer floor(const CircleNumber& a);

/// The representative of a + Z in [0, 1).
CircleNumber reduce_mod1(const CircleNumber& a);

/// Distance from a to the nearest integer, in [0, 1/2].
CircleNumber circle_distance(const CircleNumber& a);

CircleNumber abs(const CircleNumber& a);
const CircleNumber& min(const CircleNumber& a, const CircleNumber& b);
const CircleNumber& max(const CircleNumber& a, const CircleNumber& b);

/// Radicands used by any of the given numbers.
IrrationalBasis basis_of(std::span<const CircleNumber> numbers);

/// True if the surd-coefficient vectors of the numbers are linearly independent
/// over Q, equivalently if {1, a_0, ..., a_{n-1}} is.
bool surd_parts_independent(std::span<const CircleNumber> numbers);

Rational parse_rational(std::string_view text);
std::string rational_to_string(const Rational& q);

/// Decimal rendering truncated toward -infinity at `digits` fractional digits.
std::string to_decimal(const CircleNumber& a, unsigned digits);

}  // namespace fullgroup
