#include "fullgroup/synthesis.hpp"

#include <algorithm>
#include <cstdlib>

namespace fullgroup {

namespace {

const CircleNumber kOne(1);

template <typename Search>
ApproxResult search_with_retry(const std::string& stage, const SynthesisOptions& options, Search&& search) {
  std::int64_t k_max = std::min(options.k_max, options.k_max_cap);
  while (true) {
    try {
      return search(k_max);
    } catch (const NotFound& e) {
      if (k_max >= options.k_max_cap) throw NotFound(k_max, "stage '" + stage + "': " + e.what());
      k_max = std::min(k_max * 2, options.k_max_cap);
    }
  }
}

std::int64_t magnitude(std::int64_t k) { return k < 0 ? -k : k; }

void require_circle(const RotationSystem& system, std::size_t circle) {
  if (circle >= system.circles()) {
    throw std::out_of_range("circle " + std::to_string(circle) + " out of range for " +
                            std::to_string(system.circles()) + " circle(s)");
  }
}

void require_independent(const RotationSystem& system) {
  for (const auto& a : system.alphas()) {
    if (a.is_rational()) throw IndependenceError("rotation amount " + a.to_string() + " is rational");
  }
  if (!surd_parts_independent(system.alphas())) {
    throw IndependenceError("rotation amounts are linearly dependent over Q together with 1");
  }
}

// Word approximating T_{circle x [0, 2 eps)} within `budget`, appending its budget lines.
GeneratorWord build_block(const RotationSystem& system, std::size_t circle, const CircleNumber& eps,
                          const Rational& budget, const SynthesisOptions& options, std::vector<BudgetLine>& trace) {
  check_smallness(system, circle, eps);
  if (system.beta().is_rational()) throw std::invalid_argument("block synthesis needs an irrational beta");
  const Rational stage = budget / 3;
  const CircleNumber& beta = system.beta();
  const CircleNumber& alpha = system.alpha(circle);
  const std::size_t n = system.circles();

  // Telescope end: T_{I_0} ∘ T_{I_K} is within 4 ||K beta - eps|| of T_{[0, 2 eps)}.
  ApproxResult end = search_with_retry("telescope end", options, [&](std::int64_t k_max) {
    return best_mod1_approx(beta, eps, stage / 4, k_max);
  });
  const std::int64_t big_k = end.k;
  const std::int64_t copies = magnitude(big_k);
  trace.push_back({"telescope end (K = " + std::to_string(big_k) + ")", stage, end.achieved * 4});

  // Base shift: each of the |K| copies of V~ is within 4 max_j ||k alpha_j - eps [j = i]|| of V.
  const Rational shift_tol = stage / (4 * copies);
  ApproxResult shift;
  if (n == 1) {
    shift = search_with_retry("base shift", options, [&](std::int64_t k_max) {
      return best_mod1_approx(alpha, eps, shift_tol, k_max);
    });
  } else {
    std::vector<CircleNumber> targets(n);
    targets[circle] = eps;
    shift = search_with_retry("base shift", options, [&](std::int64_t k_max) {
      return simultaneous_approx(system.alphas(), targets, shift_tol, k_max);
    });
  }
  trace.push_back({"base shift (k = " + std::to_string(shift.k) + ")", stage, shift.achieved * (4 * copies)});

  const GeneratorWord local{Token::inv(), Token::rot(shift.k), Token::inv(), Token::rot(-shift.k)};

  // Copies: T^m V T^-m is within 8 ||m alpha_i - (j - 1) beta|| of T_{I_{j-1} u I_j}.
  const Rational per_copy = stage / copies;
  GeneratorWord word;
  const std::int64_t first = big_k > 0 ? 1 : 0;
  const std::int64_t step = big_k > 0 ? 1 : -1;
  for (std::int64_t c = 0, j = first; c < copies; ++c, j += step) {
    CircleNumber offset = beta * (j - 1);
    std::int64_t m = 0;
    CircleNumber err;
    if (!reduce_mod1(offset).is_zero()) {
      ApproxResult r = search_with_retry("copy j = " + std::to_string(j), options, [&](std::int64_t k_max) {
        return best_mod1_approx(alpha, offset, per_copy / 8, k_max);
      });
      m = r.k;
      err = r.achieved * 8;
    }
    trace.push_back({"copy j = " + std::to_string(j) + " (m = " + std::to_string(m) + ")", per_copy, err});
    word *= conjugate_word(local, m);
  }
  return word;
}

SynthesisCertificate finish(const SystemPtr& system, GeneratorWord word, ArcSet target, const Rational& delta,
                            std::vector<BudgetLine> trace) {
  SynthesisCertificate cert{system, std::move(word), std::move(target), delta, {}, std::move(trace)};
  cert.achieved_distance = certify(cert.word, cert.target, system);
  if (!(cert.achieved_distance < CircleNumber(delta))) {
    throw std::logic_error("certified distance " + cert.achieved_distance.to_string() + " is not below delta = " +
                           delta.get_str());
  }
  return cert;
}

void check_delta(const Rational& delta) {
  if (delta <= 0) throw std::invalid_argument("delta must be positive");
}

struct PartialWord {
  GeneratorWord word;
  std::vector<BudgetLine> trace;
};

PartialWord interval_word(const RotationSystem& system, std::size_t circle, const CircleNumber& x,
                          const CircleNumber& length, const Rational& delta, const SynthesisOptions& options) {
  CircleNumber eps = length * Rational(1, 2);
  check_smallness(system, circle, eps);
  PartialWord out;
  CircleNumber start = reduce_mod1(x);
  if (start.is_zero()) {
    out.word = build_block(system, circle, eps, delta, options, out.trace);
    return out;
  }
  const Rational shift_budget = delta / 4;
  GeneratorWord block = build_block(system, circle, eps, delta - shift_budget, options, out.trace);
  ApproxResult shift = search_with_retry("interval shift", options, [&](std::int64_t k_max) {
    return best_mod1_approx(system.alpha(circle), start, shift_budget / 4, k_max);
  });
  out.trace.push_back({"interval shift (k = " + std::to_string(shift.k) + ")", shift_budget, shift.achieved * 4});
  out.word = conjugate_word(block, shift.k);
  return out;
}

// A maximal arc of a canonical arc set, rejoined across 0.
struct CircularArc {
  std::size_t circle;
  CircleNumber lower;
  CircleNumber length;
};

std::vector<CircularArc> circular_arcs(const ArcSet& a) {
  std::vector<CircularArc> out;
  for (std::size_t i = 0; i < a.circles(); ++i) {
    auto arcs = a.arcs(i);
    if (arcs.empty()) continue;
    bool joined = arcs.size() >= 2 && arcs.front().lower.is_zero() && arcs.back().upper == kOne;
    std::size_t begin = joined ? 1 : 0;
    std::size_t end = joined ? arcs.size() - 1 : arcs.size();
    for (std::size_t j = begin; j < end; ++j) out.push_back({i, arcs[j].lower, arcs[j].length()});
    if (joined) {
      out.push_back({i, arcs.back().lower, arcs.back().length() + arcs.front().length()});
    }
  }
  return out;
}

}  // namespace

void check_smallness(const RotationSystem& system, std::size_t circle, const CircleNumber& eps) {
  require_circle(system, circle);
  const CircleNumber& beta = system.beta();
  const CircleNumber& alpha = system.alpha(circle);
  std::vector<std::string> failed;
  if (sign(eps) != Sign::positive) failed.push_back("eps > 0");
  if (!(eps * 2 < beta)) failed.push_back("2 eps < beta");
  if (!(eps + beta < alpha)) failed.push_back("eps + beta < alpha");
  if (!(alpha + beta + eps < kOne)) failed.push_back("alpha + beta + eps < 1");
  if (!(eps * 4 < alpha)) failed.push_back("4 eps < alpha");
  if (failed.empty()) return;
  std::string msg = "eps = " + eps.to_string() + " is not small enough on circle " + std::to_string(circle) + ":";
  for (const auto& f : failed) msg += " [" + f + "]";
  throw SmallnessError(msg);
}

CircleNumber certify(const GeneratorWord& word, const ArcSet& target, const SystemPtr& system) {
  return uniform_distance(evaluate(word, system), make_involution(system, target));
}

bool verify(const SynthesisCertificate& certificate) {
  CircleNumber d = certify(certificate.word, certificate.target, certificate.system);
  return d == certificate.achieved_distance && d < CircleNumber(certificate.delta);
}

SynthesisCertificate synth_block(const SystemPtr& system, const Rational& eps, const Rational& delta,
                                 const SynthesisOptions& options) {
  if (system->circles() != 1) throw std::invalid_argument("synth_block works on one circle; use synth_multi");
  check_delta(delta);
  std::vector<BudgetLine> trace;
  GeneratorWord word = build_block(*system, 0, CircleNumber(eps), delta, options, trace);
  return finish(system, std::move(word), ArcSet::arc(1, 0, CircleNumber(), CircleNumber(eps * 2)), delta,
                std::move(trace));
}

SynthesisCertificate synth_multi(const SystemPtr& system, std::size_t circle, const Rational& eps,
                                 const Rational& delta, const SynthesisOptions& options) {
  if (system->circles() == 1) {
    require_circle(*system, circle);
    return synth_block(system, eps, delta, options);
  }
  check_delta(delta);
  require_circle(*system, circle);
  require_independent(*system);
  std::vector<BudgetLine> trace;
  GeneratorWord word = build_block(*system, circle, CircleNumber(eps), delta, options, trace);
  return finish(system, std::move(word), ArcSet::arc(system->circles(), circle, CircleNumber(), CircleNumber(eps * 2)),
                delta, std::move(trace));
}

SynthesisCertificate synth_interval(const SystemPtr& system, const CircleNumber& x, const CircleNumber& length,
                                    const Rational& delta, const SynthesisOptions& options, std::size_t circle) {
  check_delta(delta);
  require_circle(*system, circle);
  ArcSet target = ArcSet::arc(system->circles(), circle, x, x + length);
  make_involution(system, target);  // OverlapError for an invalid target
  if (system->circles() > 1) require_independent(*system);
  PartialWord w = interval_word(*system, circle, x, length, delta, options);
  return finish(system, std::move(w.word), std::move(target), delta, std::move(w.trace));
}

SynthesisCertificate synth_set(const SystemPtr& system, const ArcSet& target, const Rational& delta,
                               const Rational& eps, const SynthesisOptions& options) {
  check_delta(delta);
  if (eps <= 0) throw std::invalid_argument("eps must be positive");
  make_involution(system, target);  // OverlapError for an invalid target
  if (target.empty()) return finish(system, GeneratorWord(), target, delta, {});
  if (system->circles() > 1) require_independent(*system);

  const std::vector<CircularArc> arcs = circular_arcs(target);
  const CircleNumber block(eps * 2);

  // T_A is the product of the per-arc factors only if their supports P u T(P) are disjoint.
  std::vector<ArcSet> supports;
  for (const auto& arc : arcs) {
    ArcSet p = ArcSet::arc(target.circles(), arc.circle, arc.lower, arc.lower + arc.length);
    supports.push_back(unite(p, rotate(p, *system, 1)));
  }
  for (std::size_t a = 0; a < arcs.size(); ++a) {
    for (std::size_t b = a + 1; b < arcs.size(); ++b) {
      if (arcs[a].circle != arcs[b].circle) continue;
      if (!intersect(supports[a], supports[b]).empty()) {
        throw SeparationError("factor supports of arcs starting at " + arcs[a].lower.to_string() + " and " +
                              arcs[b].lower.to_string() + " intersect");
      }
    }
  }

  struct Cut {
    std::size_t circle;
    CircleNumber lower;
    CircleNumber length;
  };
  std::vector<Cut> cuts;
  for (const auto& arc : arcs) {
    // smallest p with length / p <= block
    std::int64_t p = 1;
    while (block * p < arc.length) ++p;
    CircleNumber piece = arc.length * Rational(1, static_cast<unsigned long>(p));
    for (std::int64_t q = 0; q < p; ++q) cuts.push_back({arc.circle, arc.lower + piece * q, piece});
  }

  const Rational per_piece = delta / static_cast<long>(cuts.size());
  GeneratorWord word;
  std::vector<BudgetLine> trace;
  for (std::size_t c = 0; c < cuts.size(); ++c) {
    PartialWord w = interval_word(*system, cuts[c].circle, cuts[c].lower, cuts[c].length, per_piece, options);
    const std::string prefix = "piece " + std::to_string(c + 1) + "/" + std::to_string(cuts.size()) + ": ";
    for (auto& line : w.trace) {
      line.stage = prefix + line.stage;
      trace.push_back(std::move(line));
    }
    word *= w.word;
  }
  return finish(system, std::move(word), target, delta, std::move(trace));
}

std::pair<CircleNumber, CircleNumber> residual_stability(const GeneratorWord& word, const ArcSet& target,
                                                         const SystemPtr& system, const SystemPtr& perturbed) {
  if (system->circles() != perturbed->circles() || !(system->beta() == perturbed->beta())) {
    throw std::invalid_argument("perturbed system must share the circle count and beta");
  }
  return {certify(word, target, system), certify(word, target, perturbed)};
}

}  // namespace fullgroup
