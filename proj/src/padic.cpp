#include "rigidan/padic.hpp"

#include <algorithm>
#include <cctype>

#include "rigidan/errors.hpp"

namespace rigidan {

ParameterError::ParameterError(std::vector<std::string> violations)
    : Error([&] {
        std::string msg;
        for (const auto& v : violations) {
          if (!msg.empty()) msg += "; ";
          msg += v;
        }
        return msg;
      }()),
      violations_(std::move(violations)) {}

ParameterError::ParameterError(const std::string& single) : Error(single), violations_{single} {}

long Valuation::value() const {
  if (!finite_) throw DomainError("value() of infinite valuation");
  return value_;
}

std::string Valuation::to_string() const { return finite_ ? std::to_string(value_) : "inf"; }

bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

long valuation_of_integer(const mpz_class& n, long p) {
  if (n == 0) throw DomainError("valuation of integer zero");
  mpz_class rest;
  mpz_class prime(p);
  return static_cast<long>(mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), prime.get_mpz_t()));
}

// ---------------------------------------------------------------- context

PadicContext::PadicContext(long p, int n, int d, int slack) : p_(p), n_(n), d_(d), slack_(slack) {
  const int count = 2 * n + 8;
  powers_.reserve(count);
  mpz_class acc = 1;
  for (int i = 0; i < count; ++i) {
    powers_.push_back(acc);
    acc *= p;
  }
}

ContextPtr PadicContext::create(long p, int precision, int degree, int slack) {
  std::vector<std::string> bad;
  if (!is_prime(p) || p <= 2) bad.push_back("p must be an odd prime (got " + std::to_string(p) + ")");
  if (precision < 1) bad.push_back("precision N must be >= 1");
  if (degree < 0) bad.push_back("truncation degree D must be >= 0");
  if (slack < 0 || slack >= precision) bad.push_back("slack must satisfy 0 <= slack < N");
  if (!bad.empty()) throw ParameterError(bad);
  return ContextPtr(new PadicContext(p, precision, degree, slack));
}

const mpz_class& PadicContext::pow(int k) const {
  if (k < 0) throw DomainError("negative power of p requested as integer");
  if (static_cast<std::size_t>(k) >= powers_.size())
    throw DomainError("power of p beyond the context table: " + std::to_string(k));
  return powers_[k];
}

mpz_class PadicContext::pow_uncached(unsigned long k) const {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p_), k);
  return r;
}

// ---------------------------------------------------------------- numbers

namespace {

void require_same(const PadicNumber& a, const PadicNumber& b) {
  if (a.context() != b.context() && !a.context()->same_parameters(*b.context()))
    throw MismatchError("p-adic operands from different contexts");
}

mpz_class mod_positive(const mpz_class& a, const mpz_class& m) {
  mpz_class r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

}  // namespace

PadicNumber::PadicNumber(ContextPtr ctx) : ctx_(std::move(ctx)) {}

long PadicNumber::prime() const { return ctx_->prime(); }

PadicNumber PadicNumber::normalize(ContextPtr ctx, mpz_class s, long base_val, Valuation abs) {
  const long p = ctx->prime();
  if (abs.is_finite()) {
    const long room = abs.value() - base_val;
    if (room <= 0) return zero_to(std::move(ctx), abs.value());
    if (room < ctx->table_size())
      s = mod_positive(s, ctx->pow(static_cast<int>(room)));
    else
      s = mod_positive(s, ctx->pow_uncached(static_cast<unsigned long>(room)));
  }
  if (s == 0) {
    PadicNumber z(std::move(ctx));
    z.zabs_ = abs;
    return z;
  }
  mpz_class prime(p);
  const long k = static_cast<long>(mpz_remove(s.get_mpz_t(), s.get_mpz_t(), prime.get_mpz_t()));
  const long val = base_val + k;
  long rel = ctx->precision();
  if (abs.is_finite()) rel = std::min<long>(rel, abs.value() - val);
  PadicNumber out(ctx);
  out.zero_ = false;
  out.val_ = val;
  out.rel_ = static_cast<int>(rel);
  out.unit_ = mod_positive(s, ctx->pow(out.rel_));
  return out;
}

PadicNumber PadicNumber::from_integer(ContextPtr ctx, const mpz_class& n) {
  return normalize(std::move(ctx), n, 0, Valuation::infinity());
}

PadicNumber PadicNumber::from_int(ContextPtr ctx, long n) { return from_integer(std::move(ctx), mpz_class(n)); }

PadicNumber PadicNumber::from_rational(ContextPtr ctx, const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw DivisionError("rational with zero denominator");
  auto n = from_integer(ctx, num);
  auto d = from_integer(ctx, den);
  return n / d;
}

PadicNumber PadicNumber::parse(ContextPtr ctx, std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  auto parse_int = [&](std::string_view s) {
    s = trim(s);
    std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i == s.size()) throw FormatError("malformed p-adic literal: '" + std::string(text) + "'");
    for (std::size_t j = i; j < s.size(); ++j)
      if (!std::isdigit(static_cast<unsigned char>(s[j])))
        throw FormatError("malformed p-adic literal: '" + std::string(text) + "'");
    std::string digits(s[0] == '+' ? s.substr(1) : s);
    return mpz_class(digits, 10);
  };
  text = trim(text);
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return from_integer(std::move(ctx), parse_int(text));
  return from_rational(std::move(ctx), parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
}

PadicNumber PadicNumber::from_parts(ContextPtr ctx, long valuation, const mpz_class& unit, int rel) {
  if (rel < 1) throw DomainError("relative precision must be positive");
  rel = std::min(rel, ctx->precision());
  if (unit % ctx->prime() == 0) throw DomainError("unit part divisible by p");
  return normalize(std::move(ctx), unit, valuation, Valuation(valuation + rel));
}

PadicNumber PadicNumber::power_of_p(ContextPtr ctx, long k) {
  PadicNumber out(std::move(ctx));
  out.zero_ = false;
  out.val_ = k;
  out.rel_ = out.ctx_->precision();
  out.unit_ = 1;
  return out;
}

PadicNumber PadicNumber::zero_to(ContextPtr ctx, long absolute_precision) {
  PadicNumber z(std::move(ctx));
  z.zabs_ = Valuation(absolute_precision);
  return z;
}

Valuation PadicNumber::valuation() const { return zero_ ? Valuation::infinity() : Valuation(val_); }

Valuation PadicNumber::absolute_precision() const {
  return zero_ ? zabs_ : Valuation(val_ + rel_);
}

int PadicNumber::precision_loss() const {
  if (zero_) return 0;
  return ctx_->precision() - rel_;
}

PadicNumber PadicNumber::with_absolute_precision(Valuation abs) const {
  if (abs >= absolute_precision()) return *this;
  if (zero_) return zero_to(ctx_, abs.value());
  return normalize(ctx_, unit_, val_, abs);
}

mpz_class PadicNumber::residue(int h) const {
  if (h < 0) throw DomainError("negative residue level");
  if (!is_integral()) throw DomainError("residue of a non-integral p-adic number");
  if (absolute_precision() < Valuation(h))
    throw DomainError("residue mod p^" + std::to_string(h) + " needs more precision than available");
  if (zero_) return 0;
  if (val_ >= h) return 0;
  mpz_class v = unit_ * ctx_->pow_uncached(static_cast<unsigned long>(val_));
  return mod_positive(v, ctx_->pow_uncached(static_cast<unsigned long>(h)));
}

mpz_class PadicNumber::lift() const {
  if (!is_integral()) throw DomainError("lift of a non-integral p-adic number");
  if (zero_) return 0;
  return unit_ * ctx_->pow_uncached(static_cast<unsigned long>(val_));
}

PadicNumber PadicNumber::operator-() const {
  if (zero_) return *this;
  PadicNumber out = *this;
  out.unit_ = ctx_->pow(rel_) - unit_;
  return out;
}

PadicNumber PadicNumber::inverse() const {
  if (zero_) throw DivisionError("inverse of zero");
  PadicNumber out = *this;
  out.val_ = -val_;
  mpz_invert(out.unit_.get_mpz_t(), unit_.get_mpz_t(), ctx_->pow(rel_).get_mpz_t());
  return out;
}

PadicNumber PadicNumber::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  PadicNumber result = from_int(ctx_, 1);
  PadicNumber base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e > 0) base *= base;
  }
  return result;
}

PadicNumber operator+(const PadicNumber& a, const PadicNumber& b) {
  require_same(a, b);
  if (a.is_exact_zero()) return b;
  if (b.is_exact_zero()) return a;
  const Valuation abs = min(a.absolute_precision(), b.absolute_precision());
  if (a.zero_ && b.zero_) return PadicNumber::zero_to(a.ctx_, abs.value());
  long v;
  if (a.zero_) v = b.val_;
  else if (b.zero_) v = a.val_;
  else v = std::min(a.val_, b.val_);
  if (abs <= Valuation(v)) return PadicNumber::zero_to(a.ctx_, abs.value());
  const long room = abs.value() - v;
  mpz_class s = 0;
  for (const PadicNumber* x : {&a, &b}) {
    if (x->zero_) continue;
    const long shift = x->val_ - v;
    if (shift >= room) continue;
    s += x->unit_ * a.ctx_->pow(static_cast<int>(shift));
  }
  return PadicNumber::normalize(a.ctx_, std::move(s), v, abs);
}

PadicNumber operator-(const PadicNumber& a, const PadicNumber& b) { return a + (-b); }

PadicNumber operator*(const PadicNumber& a, const PadicNumber& b) {
  require_same(a, b);
  if (a.is_exact_zero()) return a;
  if (b.is_exact_zero()) return b;
  if (a.zero_ || b.zero_) {
    // O(p^x) * y with y of valuation v is O(p^{x+v}).
    const Valuation ab = a.zero_ ? a.zabs_ : a.valuation();
    const Valuation bb = b.zero_ ? b.zabs_ : b.valuation();
    return PadicNumber::zero_to(a.ctx_, (ab + bb).value());
  }
  PadicNumber out(a.ctx_);
  out.zero_ = false;
  out.val_ = a.val_ + b.val_;
  out.rel_ = std::min(a.rel_, b.rel_);
  out.unit_ = mod_positive(a.unit_ * b.unit_, a.ctx_->pow(out.rel_));
  return out;
}

PadicNumber operator/(const PadicNumber& a, const PadicNumber& b) { return a * b.inverse(); }

std::string PadicNumber::to_string() const {
  if (zero_) return "0";
  if (val_ >= 0) return lift().get_str(10);
  return unit_.get_str(10) + "/" + ctx_->pow_uncached(static_cast<unsigned long>(-val_)).get_str(10);
}

Tristate agrees_to(const PadicNumber& a, const PadicNumber& b, long threshold) {
  const PadicNumber d = a - b;
  if (!d.is_zero()) return from_bool(d.valuation() >= Valuation(threshold));
  return d.absolute_precision() >= Valuation(threshold) ? Tristate::yes : Tristate::indeterminate;
}

// ---------------------------------------------------------------- operations

Valuation valp(const PadicNumber& x) { return x.valuation(); }

PadicNumber padic_log(const PadicNumber& u) {
  const auto& ctx = u.context();
  const PadicNumber y = u - PadicNumber::from_int(ctx, 1);
  if (y.is_zero()) return y;  // log(1 + O(p^a)) = O(p^a)
  if (y.valuation() < Valuation(1)) throw DomainError("padic_log: argument is not congruent to 1 mod p");
  const long v = y.valuation().value();
  const long target = y.absolute_precision().value();
  const long p = ctx->prime();
  PadicNumber sum = y;
  PadicNumber power = y;
  for (long n = 2;; ++n) {
    // floor(log_p n) bounds v_p(m) for every m >= n, and m*v - log_p(m) is increasing.
    long logp = 0;
    for (long q = n; q >= p; q /= p) ++logp;
    if (n * v - logp >= target) break;
    power *= y;
    PadicNumber term = power / PadicNumber::from_int(ctx, n);
    sum = (n % 2 == 0) ? sum - term : sum + term;
  }
  return sum;
}

PadicNumber binom(const ContextPtr& ctx, unsigned long l, unsigned long v) {
  if (v > l) return PadicNumber(ctx);
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), l, v);
  return PadicNumber::from_integer(ctx, r);
}

PadicNumber invert(const PadicNumber& x) { return x.inverse(); }

BinomialTable::BinomialTable(int size) : size_(size), rows_(static_cast<std::size_t>(size) * size) {
  for (int n = 0; n < size; ++n) {
    rows_[n * size] = 1;
    for (int k = 1; k <= n; ++k) rows_[n * size + k] = rows_[(n - 1) * size + k - 1] + (k < n ? rows_[(n - 1) * size + k] : mpz_class(0));
  }
}

const mpz_class& BinomialTable::get(int n, int k) const {
  static const mpz_class zero = 0;
  if (n < 0 || k < 0 || k > n) return zero;
  if (n >= size_) throw DomainError("binomial table too small");
  return rows_[n * size_ + k];
}

PadicNumber BinomialTable::padic(const ContextPtr& ctx, int n, int k) const {
  return PadicNumber::from_integer(ctx, get(n, k));
}

}  // namespace rigidan
