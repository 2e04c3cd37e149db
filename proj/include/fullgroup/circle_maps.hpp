#pragma once

// Arc sets and piecewise rotations on an n-circle irrational rotation system
// n x R/Z, T(i, x) = (i, x + alpha_i). Measures are normalized so that the
// whole space has measure 1 (each circle carries weight 1/n).

#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fullgroup/number_field.hpp"

namespace fullgroup {

/// A ⊂ X with A ∩ T(A) ≠ ∅: the involution T_A is undefined.
class OverlapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class RotationSystem;
using SystemPtr = std::shared_ptr<const RotationSystem>;

class RotationSystem {
 public:
  enum class Check {
    /// alpha_i irrational, beta irrational, 0 < beta < alpha_i, alpha_i + beta <= 1,
    /// alpha_i surd parts independent.
    strict,
    /// Only what the base involution U needs: 0 < beta < alpha_i < 1 and alpha_i + beta <= 1.
    /// Used for perturbed (possibly rational) rotation amounts.
    relaxed,
  };

  static SystemPtr create(std::vector<CircleNumber> alphas, CircleNumber beta, Check check = Check::strict);

  /// beta = sqrt(5) - 2 and alpha_i = frac(sqrt(d)) for the first n squarefree d
  /// with beta < frac(sqrt(d)) <= 1 - beta (d = 2, 3, 6, 7, 11, 13, ...).
  static SystemPtr standard(std::size_t circles = 1);
  static std::vector<CircleNumber> standard_alphas(std::size_t circles);
  static CircleNumber standard_beta();

  std::size_t circles() const { return alphas_.size(); }
  const CircleNumber& alpha(std::size_t circle) const { return alphas_.at(circle); }
  std::span<const CircleNumber> alphas() const { return alphas_; }
  const CircleNumber& beta() const { return beta_; }
  const IrrationalBasis& basis() const { return basis_; }
  /// Whether the strict invariants hold.
  bool strict() const { return strict_; }

  friend bool operator==(const RotationSystem& a, const RotationSystem& b) {
    return a.alphas_ == b.alphas_ && a.beta_ == b.beta_;
  }

 private:
  RotationSystem(std::vector<CircleNumber> alphas, CircleNumber beta, IrrationalBasis basis, bool strict)
      : alphas_(std::move(alphas)), beta_(std::move(beta)), basis_(std::move(basis)), strict_(strict) {}

  std::vector<CircleNumber> alphas_;
  CircleNumber beta_;
  IrrationalBasis basis_;
  bool strict_;
};

bool same_system(const SystemPtr& a, const SystemPtr& b);

/// Half-open arc [lower, upper) with 0 <= lower < upper <= 1.
struct Arc {
  CircleNumber lower;
  CircleNumber upper;

  CircleNumber length() const { return upper - lower; }
  friend bool operator==(const Arc&, const Arc&) = default;
};

/// Finite union of half-open arcs on each of n circles, in canonical form:
/// per circle sorted, disjoint, nonempty, with touching arcs merged.
class ArcSet {
 public:
  explicit ArcSet(std::size_t circles = 1) : arcs_(circles) {}

  /// Circular arc [lower, upper) on one circle; any real lower, 0 < upper - lower.
  /// Lengths >= 1 give the whole circle. Wrapping arcs are split at 0.
  static ArcSet arc(std::size_t circles, std::size_t circle, const CircleNumber& lower, const CircleNumber& upper);
  static ArcSet whole(std::size_t circles);

  /// Per-circle arcs inside [0, 1), in any order, possibly overlapping; the
  /// result is their canonical union.
  static ArcSet from_arcs(std::vector<std::vector<Arc>> per_circle);

  /// Same arc [lower, upper) on every circle.
  static ArcSet on_all_circles(std::size_t circles, const CircleNumber& lower, const CircleNumber& upper);

  /// "[a,b) [c,d)" for one circle, "0:[a,b) 1:[c,d)" for several; "{}" is empty.
  static ArcSet parse(std::string_view text, std::size_t circles = 1);
  std::string to_string() const;

  std::size_t circles() const { return arcs_.size(); }
  std::span<const Arc> arcs(std::size_t circle) const { return arcs_.at(circle); }
  bool empty() const;
  std::size_t arc_count() const;

  /// Normalized measure (1/n) * sum of lengths.
  CircleNumber measure() const;

  /// This set with every circle other than `circle` cleared.
  ArcSet restricted_to(std::size_t circle) const;

  friend bool operator==(const ArcSet&, const ArcSet&) = default;

 private:
  std::vector<std::vector<Arc>> arcs_;
};

ArcSet unite(const ArcSet& a, const ArcSet& b);
ArcSet intersect(const ArcSet& a, const ArcSet& b);
ArcSet subtract(const ArcSet& a, const ArcSet& b);
ArcSet symmetric_difference(const ArcSet& a, const ArcSet& b);
ArcSet complement(const ArcSet& a);
CircleNumber measure(const ArcSet& a);

/// A + by, the same translation on every circle.
ArcSet translate(const ArcSet& a, const CircleNumber& by);
/// T^m(A): circle i translated by m * alpha_i.
ArcSet rotate(const ArcSet& a, const RotationSystem& system, std::int64_t m);

/// Piece of a piecewise rotation: [start, next start) translated by power * alpha_i.
struct Piece {
  CircleNumber start;
  std::int64_t power = 0;

  friend bool operator==(const Piece&, const Piece&) = default;
};

/// An element of the full group of E_T: on each circle a partition of [0, 1)
/// into arcs, each moved by an integer power of T.
///
/// Canonical form: pieces sorted by start, the first starting at 0, adjacent
/// pieces carrying distinct powers. Values are immutable.
class PiecewiseRotation {
 public:
  static PiecewiseRotation identity(SystemPtr system);

  /// Checks that the pieces tile [0, 1) and that their images tile [0, 1) too.
  static PiecewiseRotation from_pieces(SystemPtr system, std::vector<std::vector<Piece>> pieces);

  const SystemPtr& system() const { return system_; }
  std::size_t circles() const { return pieces_.size(); }
  std::span<const Piece> pieces(std::size_t circle) const { return pieces_.at(circle); }
  std::size_t piece_count() const;
  CircleNumber piece_end(std::size_t circle, std::size_t index) const;

  /// Exact image of (circle, x) for x in [0, 1).
  CircleNumber apply(std::size_t circle, const CircleNumber& x) const;
  /// Floating evaluation used by sampling oracles.
  double apply_approx(std::size_t circle, double x) const;

  bool is_identity() const;
  std::string to_string() const;

  friend bool operator==(const PiecewiseRotation& a, const PiecewiseRotation& b);

 private:
  PiecewiseRotation(SystemPtr system, std::vector<std::vector<Piece>> pieces)
      : system_(std::move(system)), pieces_(std::move(pieces)) {}

  friend PiecewiseRotation rotation(SystemPtr, std::int64_t);
  friend PiecewiseRotation make_involution(SystemPtr, const ArcSet&);
  friend PiecewiseRotation compose(const PiecewiseRotation&, const PiecewiseRotation&);
  friend PiecewiseRotation inverse(const PiecewiseRotation&);
  friend PiecewiseRotation rotate_then(std::int64_t, const PiecewiseRotation&);

  SystemPtr system_;
  std::vector<std::vector<Piece>> pieces_;
};

/// T^m.
PiecewiseRotation rotation(SystemPtr system, std::int64_t m);

/// T_A: T on A, T^-1 on T(A), identity elsewhere. Throws OverlapError if A ∩ T(A) ≠ ∅.
PiecewiseRotation make_involution(SystemPtr system, const ArcSet& a);

/// (S ∘ R)(x) = S(R(x)).
PiecewiseRotation compose(const PiecewiseRotation& s, const PiecewiseRotation& r);
PiecewiseRotation inverse(const PiecewiseRotation& s);
/// T^m ∘ R without refining the partition of R.
PiecewiseRotation rotate_then(std::int64_t m, const PiecewiseRotation& r);

/// Uniform metric d(S, R) = measure of {x : S(x) != R(x)}.
CircleNumber uniform_distance(const PiecewiseRotation& s, const PiecewiseRotation& r);

/// {x : S(x) != x}.
ArcSet support(const PiecewiseRotation& s);

}  // namespace fullgroup
