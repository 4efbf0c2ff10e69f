#pragma once

#include <string>
#include <vector>

#include "rigidan/padic.hpp"

namespace rigidan {

// strict: alpha != beta, 0 < val(beta) <= val(alpha), val(alpha) + val(beta) = k - 1.
// structural: alpha != beta, alpha and beta integral, val(alpha) + val(beta) = k - 1.
// Over Q_p the strict rules force k >= 3; structural admits k = 2 (alpha = p, beta = 1).
enum class ParameterPolicy { strict, structural };

enum class CharacterSide { alpha, beta };

struct InductionCharacter {
  PadicNumber alpha;
  PadicNumber beta;
  int k;
  CharacterSide which = CharacterSide::alpha;
  ParameterPolicy policy = ParameterPolicy::strict;
  bool berger_breuil = false;  // val(alpha) < k - 1

  const ContextPtr& context() const { return alpha.context(); }
  // Exponent of t in chi(diag(s, t)) on the pro-p Iwahori.
  int twist_exponent() const { return k - 2; }
  bool same_parameters(const InductionCharacter& o) const;
};

// Every violated constraint is listed in the thrown ParameterError.
InductionCharacter validate_crystalline(const PadicNumber& alpha, const PadicNumber& beta, int k,
                                        ParameterPolicy policy = ParameterPolicy::strict,
                                        CharacterSide which = CharacterSide::alpha);
std::vector<std::string> crystalline_violations(const PadicNumber& alpha, const PadicNumber& beta, int k,
                                                ParameterPolicy policy);

std::string to_string(CharacterSide s);
std::string to_string(ParameterPolicy p);

}  // namespace rigidan
