#pragma once

// Bounded-precision arithmetic in Q_p.
//
// A nonzero PadicNumber is p^v * u with u a unit known modulo p^r, where the
// relative precision r never exceeds the context cap N. Zeros remember the
// absolute precision O(p^a) they are known to, except the literal exact zero.
// Precision is tracked through every operation, so a result reports how many
// digits were lost (precision_loss) instead of silently carrying garbage.

#include <gmpxx.h>

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "rigidan/tristate.hpp"
#include "rigidan/valuation.hpp"

namespace rigidan {

class PadicContext;
using ContextPtr = std::shared_ptr<const PadicContext>;

// p: odd prime, N: relative precision cap, D: series truncation degree,
// slack: digits of comparison slack (kappa); comparisons are made to N - slack.
class PadicContext {
 public:
  static ContextPtr create(long p = 5, int precision = 40, int degree = 64, int slack = 4);

  long prime() const { return p_; }
  int precision() const { return n_; }
  int degree() const { return d_; }
  int slack() const { return slack_; }
  int comparison_precision() const { return n_ - slack_; }

  // p^k as an exact integer; k >= 0.
  const mpz_class& pow(int k) const;
  mpz_class pow_uncached(unsigned long k) const;
  int table_size() const { return static_cast<int>(powers_.size()); }

  bool same_parameters(const PadicContext& other) const {
    return p_ == other.p_ && n_ == other.n_ && d_ == other.d_ && slack_ == other.slack_;
  }

 private:
  PadicContext(long p, int n, int d, int slack);

  long p_;
  int n_;
  int d_;
  int slack_;
  std::vector<mpz_class> powers_;
};

bool is_prime(long n);

class PadicNumber {
 public:
  // The exact zero.
  explicit PadicNumber(ContextPtr ctx);

  static PadicNumber from_integer(ContextPtr ctx, const mpz_class& n);
  static PadicNumber from_int(ContextPtr ctx, long n);
  static PadicNumber from_rational(ContextPtr ctx, const mpz_class& num, const mpz_class& den);
  // Decimal integer "-12" or rational "7/25".
  static PadicNumber parse(ContextPtr ctx, std::string_view text);
  // p^k times a unit residue known modulo p^rel (rel is capped at N).
  static PadicNumber from_parts(ContextPtr ctx, long valuation, const mpz_class& unit, int rel);
  static PadicNumber power_of_p(ContextPtr ctx, long k);
  // The inexact zero O(p^a).
  static PadicNumber zero_to(ContextPtr ctx, long absolute_precision);

  const ContextPtr& context() const { return ctx_; }
  long prime() const;

  Valuation valuation() const;
  bool is_zero() const { return zero_; }
  bool is_exact_zero() const { return zero_ && zabs_.is_infinite(); }
  Valuation absolute_precision() const;
  int relative_precision() const { return zero_ ? 0 : rel_; }
  // Digits lost relative to the cap N (0 for exact values and exact zero).
  int precision_loss() const;
  const mpz_class& unit() const { return unit_; }

  // Forget digits beyond p^abs.
  PadicNumber with_absolute_precision(Valuation abs) const;

  // Canonical residue in [0, p^h). Requires the number to be integral and known mod p^h.
  mpz_class residue(int h) const;
  // Integer representative in [0, p^abs) of an integral number.
  mpz_class lift() const;
  bool is_integral() const { return zero_ || val_ >= 0; }
  bool is_unit() const { return !zero_ && val_ == 0; }

  PadicNumber operator-() const;
  PadicNumber inverse() const;
  PadicNumber pow(long e) const;

  friend PadicNumber operator+(const PadicNumber& a, const PadicNumber& b);
  friend PadicNumber operator-(const PadicNumber& a, const PadicNumber& b);
  friend PadicNumber operator*(const PadicNumber& a, const PadicNumber& b);
  friend PadicNumber operator/(const PadicNumber& a, const PadicNumber& b);
  PadicNumber& operator+=(const PadicNumber& o) { return *this = *this + o; }
  PadicNumber& operator-=(const PadicNumber& o) { return *this = *this - o; }
  PadicNumber& operator*=(const PadicNumber& o) { return *this = *this * o; }

  // Equal to the precision both operands are known to.
  friend bool operator==(const PadicNumber& a, const PadicNumber& b) { return (a - b).is_zero(); }

  // Decimal form: integer representative, or "u/p^k" for negative valuation.
  std::string to_string() const;

 private:
  static PadicNumber normalize(ContextPtr ctx, mpz_class s, long base_val, Valuation abs);

  ContextPtr ctx_;
  bool zero_ = true;
  long val_ = 0;
  int rel_ = 0;
  Valuation zabs_;  // absolute precision of a zero; infinity = exact zero
  mpz_class unit_;
};

// valuation > = threshold, with indeterminate when the difference is an
// inexact zero known below the threshold.
Tristate agrees_to(const PadicNumber& a, const PadicNumber& b, long threshold);

Valuation valp(const PadicNumber& x);
// log on 1 + pZ_p; throws DomainError off that domain.
PadicNumber padic_log(const PadicNumber& u);
PadicNumber binom(const ContextPtr& ctx, unsigned long l, unsigned long v);
PadicNumber invert(const PadicNumber& x);
long valuation_of_integer(const mpz_class& n, long p);

// Exact binomial coefficients C(n, k) for 0 <= k <= n < size.
class BinomialTable {
 public:
  explicit BinomialTable(int size);
  const mpz_class& get(int n, int k) const;
  PadicNumber padic(const ContextPtr& ctx, int n, int k) const;
  int size() const { return size_; }

 private:
  int size_;
  std::vector<mpz_class> rows_;
};

}  // namespace rigidan
