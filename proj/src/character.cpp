#include "rigidan/character.hpp"

#include "rigidan/errors.hpp"

namespace rigidan {

std::vector<std::string> crystalline_violations(const PadicNumber& alpha, const PadicNumber& beta, int k,
                                                ParameterPolicy policy) {
  std::vector<std::string> bad;
  if (k < 2) bad.push_back("k must be >= 2");
  if (alpha.is_zero()) bad.push_back("alpha must be nonzero");
  if (beta.is_zero()) bad.push_back("beta must be nonzero");
  if (!bad.empty() && (alpha.is_zero() || beta.is_zero())) return bad;
  if (alpha == beta) bad.push_back("alpha must differ from beta");
  const long va = alpha.valuation().value();
  const long vb = beta.valuation().value();
  if (policy == ParameterPolicy::strict) {
    if (vb <= 0) bad.push_back("val(beta) must be > 0 (got " + std::to_string(vb) + ")");
    if (vb > va) bad.push_back("val(beta) must be <= val(alpha)");
  } else {
    if (va < 0) bad.push_back("alpha must be integral");
    if (vb < 0) bad.push_back("beta must be integral");
  }
  if (va + vb != k - 1)
    bad.push_back("val(alpha) + val(beta) must equal k - 1 = " + std::to_string(k - 1) + " (got " +
                  std::to_string(va + vb) + ")");
  return bad;
}

InductionCharacter validate_crystalline(const PadicNumber& alpha, const PadicNumber& beta, int k,
                                        ParameterPolicy policy, CharacterSide which) {
  auto bad = crystalline_violations(alpha, beta, k, policy);
  if (!bad.empty()) throw ParameterError(bad);
  InductionCharacter chi{alpha, beta, k, which, policy, false};
  chi.berger_breuil = alpha.valuation() < Valuation(k - 1);
  return chi;
}

bool InductionCharacter::same_parameters(const InductionCharacter& o) const {
  return k == o.k && which == o.which && alpha == o.alpha && beta == o.beta;
}

std::string to_string(CharacterSide s) { return s == CharacterSide::alpha ? "alpha" : "beta"; }
std::string to_string(ParameterPolicy p) { return p == ParameterPolicy::strict ? "strict" : "structural"; }

}  // namespace rigidan
