#pragma once

// Truncated rigid analytic functions on the closed ball p^m Z_p.
//
// A TateSeries stores a_0..a_d (d <= D) and a tail bound T. The bound
// certifies val_C(f_true - f_stored) >= T for the Banach valuation
//     val_C(f) = inf_l { val_p(a_l) + m l }.
// T = infinity means the stored polynomial is the function exactly.

#include <vector>

#include "rigidan/padic.hpp"

namespace rigidan {

class TateSeries {
 public:
  TateSeries(ContextPtr ctx, int level, std::vector<PadicNumber> coeffs,
             Valuation tail_bound = Valuation::infinity());

  static TateSeries zero(ContextPtr ctx, int level);
  static TateSeries constant(const PadicNumber& c, int level);
  static TateSeries monomial(const PadicNumber& c, int degree, int level);
  static TateSeries from_ints(ContextPtr ctx, int level, const std::vector<long>& coeffs);

  const ContextPtr& context() const { return ctx_; }
  int level() const { return level_; }
  const std::vector<PadicNumber>& coefficients() const { return coeffs_; }
  // a_l, or the exact zero beyond the stored range.
  PadicNumber coefficient(int l) const;
  Valuation tail_bound() const { return tail_; }
  bool is_exact() const { return tail_.is_infinite(); }
  // Highest index with a nonzero stored coefficient, -1 for the zero series.
  int degree() const;
  int precision_loss() const;

  // The same function restricted to the smaller ball p^{m'} Z_p, m' >= m.
  TateSeries restricted_to(int finer_level) const;
  TateSeries with_tail_bound(Valuation t) const;
  // Stored part truncated to degree <= d; the dropped terms lower the tail bound.
  TateSeries truncated(int d) const;

  friend TateSeries operator+(const TateSeries& f, const TateSeries& g);
  friend TateSeries operator-(const TateSeries& f, const TateSeries& g);
  friend TateSeries operator*(const TateSeries& f, const TateSeries& g);
  TateSeries operator-() const;

 private:
  ContextPtr ctx_;
  int level_;
  std::vector<PadicNumber> coeffs_;
  Valuation tail_;
};

// min over stored terms of val_p(a_l) + m l, capped by the tail bound.
Valuation val_C(const TateSeries& f);
// Same infimum over stored coefficients only.
Valuation stored_val_C(const TateSeries& f);
// inf over stored l >= from of val_p(a_l) + m l.
Valuation stored_val_C_from(const TateSeries& f, int from);

TateSeries scale(const PadicNumber& c, const TateSeries& f);

// (1 0; y 1) f(z) = f(z - y); requires val(y) >= m.
TateSeries translate(const TateSeries& f, const PadicNumber& y);
// f(s z); requires s a unit with val(s - 1) >= m.
TateSeries dilate(const TateSeries& f, const PadicNumber& s);
// f(z / (1 - x z)) * (1 - x z)^{k-2}; requires val(x) >= max(1, m) and k >= 2.
TateSeries mobius_twist(const TateSeries& f, const PadicNumber& x, int k);
// f(z / t) * t^{k-2}; requires t a unit with val(t - 1) >= m and k >= 2.
TateSeries inv_torus(const TateSeries& f, const PadicNumber& t, int k);
// g(z') = f(a + z') on p^{m'} Z_p; requires val(a) >= m and m' >= m.
TateSeries recenter(const TateSeries& f, const PadicNumber& a, int finer_level);
// Horner evaluation; the result's precision is capped by the tail bound.
PadicNumber evaluate(const TateSeries& f, const PadicNumber& z);

// val_C(f - g) >= threshold, decided at the precision both are known to.
Tristate agree(const TateSeries& f, const TateSeries& g, long threshold);
Tristate agree(const TateSeries& f, const TateSeries& g);  // threshold N - slack

// Unchecked substitutions used by the action on coset pieces. They keep the
// level and only require the substitution to map the ball into itself.
namespace raw {
TateSeries translate(const TateSeries& f, const PadicNumber& y);
// f(c z) for integral c.
TateSeries scale_argument(const TateSeries& f, const PadicNumber& c);
// f(z / (1 - x z)) without the character twist; val(x) + m >= 1.
TateSeries mobius_substitute(const TateSeries& f, const PadicNumber& x);
}  // namespace raw

}  // namespace rigidan
