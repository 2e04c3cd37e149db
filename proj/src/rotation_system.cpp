#include "fullgroup/circle_maps.hpp"

namespace fullgroup {

SystemPtr RotationSystem::create(std::vector<CircleNumber> alphas, CircleNumber beta, Check check) {
  if (alphas.empty()) throw std::invalid_argument("rotation system needs at least one circle");
  const CircleNumber one(1);
  if (sign(beta) != Sign::positive) throw std::invalid_argument("beta must be positive");
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    const CircleNumber& a = alphas[i];
    const std::string which = "alpha_" + std::to_string(i) + " = " + a.to_string();
    if (!(beta < a)) throw std::invalid_argument(which + " must exceed beta = " + beta.to_string());
    if (!(a < one)) throw std::invalid_argument(which + " must be < 1");
    if (one < a + beta) throw std::invalid_argument(which + " must satisfy alpha + beta <= 1");
  }
  if (check == Check::strict) {
    if (beta.is_rational()) throw std::invalid_argument("beta must be irrational");
    for (const auto& a : alphas) {
      if (a.is_rational()) throw IndependenceError("alpha = " + a.to_string() + " is rational");
    }
    if (!surd_parts_independent(alphas)) {
      throw IndependenceError("rotation amounts are linearly dependent over Q together with 1");
    }
  }
  std::vector<CircleNumber> all = alphas;
  all.push_back(beta);
  IrrationalBasis basis = basis_of(all);
  bool strict = check == Check::strict;
  if (!strict) {
    strict = !beta.is_rational() && surd_parts_independent(alphas);
  }
  return SystemPtr(new RotationSystem(std::move(alphas), std::move(beta), std::move(basis), strict));
}

CircleNumber RotationSystem::standard_beta() { return CircleNumber::sqrt_of(5) - CircleNumber(2); }

std::vector<CircleNumber> RotationSystem::standard_alphas(std::size_t circles) {
  const CircleNumber beta = standard_beta();
  const CircleNumber one(1);
  std::vector<CircleNumber> alphas;
  for (Radicand d = 2; alphas.size() < circles; ++d) {
    if (!is_squarefree(d)) continue;
    CircleNumber root = CircleNumber::sqrt_of(d);
    CircleNumber frac = reduce_mod1(root);
    if (beta < frac && frac + beta < one) alphas.push_back(std::move(frac));
  }
  return alphas;
}

SystemPtr RotationSystem::standard(std::size_t circles) {
  return create(standard_alphas(circles), standard_beta());
}

bool same_system(const SystemPtr& a, const SystemPtr& b) { return a == b || (a && b && *a == *b); }

}  // namespace fullgroup
