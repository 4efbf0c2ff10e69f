#pragma once

// Continuous characters of Q_p^x, trianguline parameters and the filtered
// phi-module D(alpha, beta).

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rigidan/character.hpp"

namespace rigidan {

// Determined by delta(p), the exponent on mu_{p-1} and delta(1 + p).
class ContinuousCharacter {
 public:
  // Throws DomainError unless value_at_p != 0 and wild_value = 1 mod p.
  ContinuousCharacter(PadicNumber value_at_p, long tame_exponent, PadicNumber wild_value);

  static ContinuousCharacter trivial(const ContextPtr& ctx);
  // The inclusion Q_p -> L.
  static ContinuousCharacter x(const ContextPtr& ctx);
  // x -> p^{-val_p(x)}.
  static ContinuousCharacter abs_x(const ContextPtr& ctx);
  // Unramified: trivial on Z_p^x.
  static ContinuousCharacter unramified(const PadicNumber& value_at_p);

  const PadicNumber& value_at_p() const { return value_; }
  long tame_exponent() const { return tame_; }  // in [0, p - 1)
  const PadicNumber& wild_value() const { return wild_; }
  const ContextPtr& context() const { return value_.context(); }

  ContinuousCharacter inverse() const;
  ContinuousCharacter pow(long e) const;
  friend ContinuousCharacter operator*(const ContinuousCharacter& a, const ContinuousCharacter& b);

 private:
  PadicNumber value_;
  long tame_;
  PadicNumber wild_;
};

// Componentwise equality: wild values to absolute precision threshold, values at
// p to relative precision threshold.
Tristate same_character(const ContinuousCharacter& a, const ContinuousCharacter& b, long threshold);
Tristate same_character(const ContinuousCharacter& a, const ContinuousCharacter& b);

// log delta(1 + p) / log(1 + p).
PadicNumber weight(const ContinuousCharacter& delta);

struct TriangulineParam {
  ContinuousCharacter delta1;
  ContinuousCharacter delta2;
  // nullopt is L = infinity; other coordinates are carried as opaque text.
  std::optional<std::vector<std::string>> scriptL;
};

struct SStar {
  bool member;
  long u;       // val_p(delta1(p))
  PadicNumber w;  // weight(delta1) - weight(delta2)
};
SStar in_S_star(const TriangulineParam& s);

// w is taken to be the integer n when n is the balanced residue of w modulo
// p^{N - slack} and |n| < p^{(N - slack) / 2}.
struct IntegerTest {
  Tristate status;
  mpz_class value;
};
IntegerTest as_integer(const PadicNumber& w);

struct SCris {
  Tristate status;
  std::string reason;
};
SCris in_S_cris(const TriangulineParam& s);

struct Ext1 {
  Tristate certain;  // indeterminate on a near-match the search could not settle
  int dimension;
  std::string form;  // "x^-i" or "|x|x^i" when dimension is 2
};
constexpr int kDefaultExt1Bound = 20;
Ext1 ext1_dimension(const ContinuousCharacter& delta1, const ContinuousCharacter& delta2,
                    int bound = kDefaultExt1Bound);

class FilteredPhiModule {
 public:
  FilteredPhiModule(const PadicNumber& alpha, const PadicNumber& beta, int k,
                    ParameterPolicy policy = ParameterPolicy::strict);

  const InductionCharacter& parameters() const { return chi_; }
  int k() const { return chi_.k; }

 private:
  InductionCharacter chi_;
};

struct FilStep {
  int dimension;
  std::string basis;
};
FilStep fil_dimension(const FilteredPhiModule& D, int i);
// Read off the jumps of the filtration, ascending.
std::vector<int> hodge_tate_weights(const FilteredPhiModule& D);
std::pair<PadicNumber, PadicNumber> phi_action(const FilteredPhiModule& D, const PadicNumber& c_alpha,
                                               const PadicNumber& c_beta);

}  // namespace rigidan
