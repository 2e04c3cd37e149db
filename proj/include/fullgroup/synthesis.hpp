#pragma once

// Synthesis of words in T and U approximating involutions T_A in the uniform
// metric, with an exact certificate.
//
// The block construction for T_{i x [0, 2 eps)} on circle i:
//   1. V~ = U T^k U T^-k with k alpha ≈ eps e_i, approximating
//      V = T_{i x ([0, eps) u [beta, beta + eps))};
//   2. copies T^{m_j} V~ T^{-m_j} with m_j alpha_i ≈ (j - 1) beta approximate
//      T_{I_{j-1} u I_j}, I_j = [j beta, j beta + eps);
//   3. with K beta ≈ eps their product telescopes to T_{I_0} ∘ T_{I_K} ≈ T_{[0, 2 eps)}.
// Errors are bounded with bi-invariance of the metric and
// d(T_A, T_B) <= 2 mu(A △ B); the final distance is recomputed exactly.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fullgroup/circle_maps.hpp"
#include "fullgroup/diophantine.hpp"
#include "fullgroup/generator_word.hpp"

namespace fullgroup {

/// eps violates 2 eps < beta, eps + beta < alpha_i, alpha_i + beta + eps < 1 or 4 eps < alpha_i.
class SmallnessError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Supports of the per-arc factors of a target set intersect, so T_A is not their product.
class SeparationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct BudgetLine {
  std::string stage;
  Rational allocated;
  /// Upper bound on this stage's contribution to the distance, exact.
  CircleNumber achieved;
};

struct SynthesisCertificate {
  SystemPtr system;
  GeneratorWord word;
  ArcSet target;
  Rational delta;
  CircleNumber achieved_distance;
  std::vector<BudgetLine> budget_trace;
};

struct SynthesisOptions {
  /// First search bound for every Diophantine stage.
  std::int64_t k_max = std::int64_t{1} << 16;
  /// Failed searches retry with doubled bound up to this cap, then NotFound.
  std::int64_t k_max_cap = std::int64_t{1} << 34;
};

/// Throws SmallnessError unless eps is small enough for the block construction on `circle`.
void check_smallness(const RotationSystem& system, std::size_t circle, const CircleNumber& eps);

/// Word within delta of T_{[0, 2 eps)} on a single circle.
SynthesisCertificate synth_block(const SystemPtr& system, const Rational& eps, const Rational& delta,
                                 const SynthesisOptions& options = {});

/// Word within delta of T_{i x [x, x + length)}; n = 1 uses the single-circle block,
/// n >= 2 the localized block of synth_multi.
SynthesisCertificate synth_interval(const SystemPtr& system, const CircleNumber& x, const CircleNumber& length,
                                    const Rational& delta, const SynthesisOptions& options = {},
                                    std::size_t circle = 0);

/// Word within delta of T_A: arcs of A are cut into pieces of length <= 2 eps,
/// each synthesized with budget delta / (number of pieces).
SynthesisCertificate synth_set(const SystemPtr& system, const ArcSet& target, const Rational& delta,
                               const Rational& eps = Rational(1, 20), const SynthesisOptions& options = {});

/// Word within delta of T_{i x [0, 2 eps)} on an n-circle system; the base set is
/// first shifted by simultaneous approximation of eps e_i.
SynthesisCertificate synth_multi(const SystemPtr& system, std::size_t circle, const Rational& eps,
                                 const Rational& delta, const SynthesisOptions& options = {});

/// Exact d(evaluate(word), T_target), recomputed from scratch.
CircleNumber certify(const GeneratorWord& word, const ArcSet& target, const SystemPtr& system);

/// Recomputes the distance and checks it against the recorded value and delta.
bool verify(const SynthesisCertificate& certificate);

/// (d(W^p, T^p_target), d(W^p', T^p'_target)) for the same word in two systems
/// sharing n and beta.
std::pair<CircleNumber, CircleNumber> residual_stability(const GeneratorWord& word, const ArcSet& target,
                                                         const SystemPtr& system, const SystemPtr& perturbed);

}  // namespace fullgroup
