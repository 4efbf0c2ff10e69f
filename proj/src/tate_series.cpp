#include "rigidan/tate_series.hpp"

#include <algorithm>

#include "rigidan/errors.hpp"

namespace rigidan {

namespace {

void require_compatible(const TateSeries& f, const TateSeries& g) {
  if (f.context() != g.context() && !f.context()->same_parameters(*g.context()))
    throw MismatchError("series from different contexts");
  if (f.level() != g.level())
    throw MismatchError("series on different balls (levels " + std::to_string(f.level()) + " and " +
                        std::to_string(g.level()) + ")");
}

Valuation term_val(const PadicNumber& a, int m, int l) {
  if (a.is_zero()) return Valuation::infinity();
  return a.valuation() + Valuation(static_cast<long>(m) * l);
}

}  // namespace

TateSeries::TateSeries(ContextPtr ctx, int level, std::vector<PadicNumber> coeffs, Valuation tail_bound)
    : ctx_(std::move(ctx)), level_(level), coeffs_(std::move(coeffs)), tail_(tail_bound) {
  if (level_ < 0) throw DomainError("ball level must be >= 0");
  if (static_cast<int>(coeffs_.size()) > ctx_->degree() + 1)
    throw DomainError("series has " + std::to_string(coeffs_.size()) + " coefficients, cap is D+1 = " +
                      std::to_string(ctx_->degree() + 1));
  for (const auto& c : coeffs_)
    if (c.context() != ctx_ && !c.context()->same_parameters(*ctx_))
      throw MismatchError("coefficient from a different context");
  while (!coeffs_.empty() && coeffs_.back().is_exact_zero()) coeffs_.pop_back();
}

TateSeries TateSeries::zero(ContextPtr ctx, int level) { return TateSeries(std::move(ctx), level, {}); }

TateSeries TateSeries::constant(const PadicNumber& c, int level) {
  return TateSeries(c.context(), level, {c});
}

TateSeries TateSeries::monomial(const PadicNumber& c, int degree, int level) {
  std::vector<PadicNumber> cs(static_cast<std::size_t>(degree) + 1, PadicNumber(c.context()));
  cs[degree] = c;
  return TateSeries(c.context(), level, std::move(cs));
}

TateSeries TateSeries::from_ints(ContextPtr ctx, int level, const std::vector<long>& coeffs) {
  std::vector<PadicNumber> cs;
  cs.reserve(coeffs.size());
  for (long c : coeffs) cs.push_back(PadicNumber::from_int(ctx, c));
  return TateSeries(std::move(ctx), level, std::move(cs));
}

PadicNumber TateSeries::coefficient(int l) const {
  if (l < 0 || l >= static_cast<int>(coeffs_.size())) return PadicNumber(ctx_);
  return coeffs_[l];
}

int TateSeries::degree() const {
  for (int l = static_cast<int>(coeffs_.size()) - 1; l >= 0; --l)
    if (!coeffs_[l].is_zero()) return l;
  return -1;
}

int TateSeries::precision_loss() const {
  int loss = 0;
  for (const auto& c : coeffs_) loss = std::max(loss, c.precision_loss());
  return loss;
}

TateSeries TateSeries::restricted_to(int finer_level) const {
  if (finer_level < level_) throw DomainError("restriction to a larger ball");
  return TateSeries(ctx_, finer_level, coeffs_, tail_);
}

TateSeries TateSeries::with_tail_bound(Valuation t) const { return TateSeries(ctx_, level_, coeffs_, t); }

TateSeries TateSeries::truncated(int d) const {
  if (d + 1 >= static_cast<int>(coeffs_.size())) return *this;
  const Valuation dropped = stored_val_C_from(*this, d + 1);
  std::vector<PadicNumber> cs(coeffs_.begin(), coeffs_.begin() + std::max(d + 1, 0));
  return TateSeries(ctx_, level_, std::move(cs), min(tail_, dropped));
}

TateSeries operator+(const TateSeries& f, const TateSeries& g) {
  require_compatible(f, g);
  const std::size_t n = std::max(f.coeffs_.size(), g.coeffs_.size());
  std::vector<PadicNumber> cs;
  cs.reserve(n);
  for (std::size_t l = 0; l < n; ++l) cs.push_back(f.coefficient(static_cast<int>(l)) + g.coefficient(static_cast<int>(l)));
  return TateSeries(f.ctx_, f.level_, std::move(cs), min(f.tail_, g.tail_));
}

TateSeries TateSeries::operator-() const {
  std::vector<PadicNumber> cs;
  cs.reserve(coeffs_.size());
  for (const auto& c : coeffs_) cs.push_back(-c);
  return TateSeries(ctx_, level_, std::move(cs), tail_);
}

TateSeries operator-(const TateSeries& f, const TateSeries& g) { return f + (-g); }

TateSeries operator*(const TateSeries& f, const TateSeries& g) {
  require_compatible(f, g);
  const int cap = f.ctx_->degree();
  const int df = static_cast<int>(f.coeffs_.size()) - 1;
  const int dg = static_cast<int>(g.coeffs_.size()) - 1;
  if (df < 0 || dg < 0) {
    // 0 * g: only the tails can contribute.
    const Valuation t = min(f.tail_ + stored_val_C(g), g.tail_ + stored_val_C(f));
    return TateSeries(f.ctx_, f.level_, {}, min(t, f.tail_ + g.tail_));
  }
  const int top = std::min(cap, df + dg);
  std::vector<PadicNumber> cs(static_cast<std::size_t>(top) + 1, PadicNumber(f.ctx_));
  for (int i = 0; i <= df; ++i) {
    if (f.coeffs_[i].is_exact_zero()) continue;
    for (int j = 0; j <= dg && i + j <= top; ++j) {
      if (g.coeffs_[j].is_exact_zero()) continue;
      cs[i + j] += f.coeffs_[i] * g.coeffs_[j];
    }
  }
  // Products a_i b_j with i + j > D are dropped.
  Valuation dropped = Valuation::infinity();
  if (df + dg > cap) {
    std::vector<Valuation> suffix(static_cast<std::size_t>(dg) + 2, Valuation::infinity());
    for (int j = dg; j >= 0; --j) suffix[j] = min(suffix[j + 1], term_val(g.coeffs_[j], g.level_, j));
    for (int i = 0; i <= df; ++i) {
      const int from = cap + 1 - i;
      if (from > dg) continue;
      dropped = min(dropped, term_val(f.coeffs_[i], f.level_, i) + suffix[std::max(from, 0)]);
    }
  }
  Valuation t = min(f.tail_ + stored_val_C(g), g.tail_ + stored_val_C(f));
  t = min(t, f.tail_ + g.tail_);
  t = min(t, dropped);
  return TateSeries(f.ctx_, f.level_, std::move(cs), t);
}

Valuation stored_val_C_from(const TateSeries& f, int from) {
  Valuation v = Valuation::infinity();
  const auto& cs = f.coefficients();
  for (int l = std::max(from, 0); l < static_cast<int>(cs.size()); ++l) v = min(v, term_val(cs[l], f.level(), l));
  return v;
}

Valuation stored_val_C(const TateSeries& f) { return stored_val_C_from(f, 0); }

Valuation val_C(const TateSeries& f) { return min(stored_val_C(f), f.tail_bound()); }

TateSeries scale(const PadicNumber& c, const TateSeries& f) {
  if (c.is_exact_zero()) return TateSeries::zero(f.context(), f.level());
  std::vector<PadicNumber> cs;
  cs.reserve(f.coefficients().size());
  for (const auto& a : f.coefficients()) cs.push_back(c * a);
  const Valuation cv = c.is_zero() ? c.absolute_precision() : c.valuation();
  return TateSeries(f.context(), f.level(), std::move(cs), f.tail_bound() + cv);
}

namespace raw {

TateSeries translate(const TateSeries& f, const PadicNumber& y) {
  // Taylor shift f(z) -> f(z - y) by repeated synthetic division.
  std::vector<PadicNumber> c = f.coefficients();
  const int d = static_cast<int>(c.size()) - 1;
  if (d <= 0 || y.is_exact_zero()) return f;
  const PadicNumber my = -y;
  for (int i = 0; i < d; ++i)
    for (int j = d - 1; j >= i; --j) c[j] += my * c[j + 1];
  return TateSeries(f.context(), f.level(), std::move(c), f.tail_bound());
}

TateSeries scale_argument(const TateSeries& f, const PadicNumber& c) {
  if (!c.is_integral()) throw DomainError("argument scaling by a non-integral factor");
  std::vector<PadicNumber> cs = f.coefficients();
  PadicNumber power = PadicNumber::from_int(f.context(), 1);
  for (std::size_t l = 1; l < cs.size(); ++l) {
    power *= c;
    cs[l] = cs[l] * power;
  }
  return TateSeries(f.context(), f.level(), std::move(cs), f.tail_bound());
}

TateSeries mobius_substitute(const TateSeries& f, const PadicNumber& x) {
  const auto& ctx = f.context();
  const int m = f.level();
  const Valuation vx = x.is_zero() ? x.absolute_precision() : x.valuation();
  if (vx + Valuation(m) < Valuation(1))
    throw DomainError("mobius substitution needs val(x) + m >= 1");
  const auto& a = f.coefficients();
  const int d = static_cast<int>(a.size()) - 1;
  if (d <= 0 || x.is_exact_zero()) return f;
  const int cap = ctx->degree();

  // Horner in w = z / (1 - x z): h <- a_l + w h, where multiplying by w is a
  // shift followed by the prefix recurrence of 1 / (1 - x z).
  std::vector<PadicNumber> h{a[d]};
  for (int l = d - 1; l >= 0; --l) {
    const int len = std::min<int>(static_cast<int>(h.size()) + 1, cap + 1);
    std::vector<PadicNumber> next(static_cast<std::size_t>(len), PadicNumber(ctx));
    for (int j = 1; j < len; ++j) next[j] = h.size() > static_cast<std::size_t>(j - 1) ? h[j - 1] : PadicNumber(ctx);
    for (int j = 2; j < len; ++j) next[j] += x * next[j - 1];
    if (len < cap + 1) {
      // The geometric tail continues past the old degree.
      next.resize(static_cast<std::size_t>(cap) + 1, PadicNumber(ctx));
      for (int j = len; j <= cap; ++j) next[j] = x * next[j - 1];
    }
    next[0] = next[0] + a[l];
    h = std::move(next);
  }

  // a_l z^l (1 - xz)^{-l} puts C(l+q-1, q) a_l x^q on z^{l+q}; the terms with
  // l + q > D are dropped.
  Valuation dropped = Valuation::infinity();
  for (int l = 1; l <= d; ++l) {
    const int q = cap + 1 - l;
    dropped = min(dropped, term_val(a[l], m, l) + (vx + Valuation(m)) * q);
  }
  return TateSeries(ctx, m, std::move(h), min(f.tail_bound(), dropped));
}

}  // namespace raw

namespace {

void require_in_ball(const PadicNumber& y, int m, const char* what) {
  if (!y.is_zero() && y.valuation() < Valuation(m))
    throw DomainError(std::string(what) + ": parameter has valuation " + y.valuation().to_string() +
                      " < level " + std::to_string(m));
  if (y.is_zero() && y.absolute_precision() < Valuation(m))
    throw DomainError(std::string(what) + ": parameter not known to the ball level");
}

void require_congruent_unit(const PadicNumber& s, int m, const char* what) {
  if (!s.is_unit()) throw DomainError(std::string(what) + ": parameter must be a unit");
  require_in_ball(s - PadicNumber::from_int(s.context(), 1), m, what);
}

void require_weight(int k) {
  if (k < 2) throw ParameterError("weight k must be >= 2 (got " + std::to_string(k) + ")");
}

}  // namespace

TateSeries translate(const TateSeries& f, const PadicNumber& y) {
  require_in_ball(y, f.level(), "translate");
  return raw::translate(f, y);
}

TateSeries dilate(const TateSeries& f, const PadicNumber& s) {
  require_congruent_unit(s, f.level(), "dilate");
  return raw::scale_argument(f, s);
}

TateSeries mobius_twist(const TateSeries& f, const PadicNumber& x, int k) {
  require_weight(k);
  require_in_ball(x, std::max(1, f.level()), "mobius_twist");
  TateSeries g = raw::mobius_substitute(f, x);
  if (k == 2 || x.is_exact_zero()) return g;
  const auto& ctx = f.context();
  // (1 - x z)^{k-2} is a polynomial, exact.
  TateSeries factor = TateSeries::from_ints(ctx, f.level(), {1});
  const TateSeries lin(ctx, f.level(), {PadicNumber::from_int(ctx, 1), -x});
  for (int i = 0; i < k - 2; ++i) factor = factor * lin;
  return g * factor;
}

TateSeries inv_torus(const TateSeries& f, const PadicNumber& t, int k) {
  require_weight(k);
  require_congruent_unit(t, f.level(), "inv_torus");
  return scale(t.pow(k - 2), raw::scale_argument(f, t.inverse()));
}

TateSeries recenter(const TateSeries& f, const PadicNumber& a, int finer_level) {
  require_in_ball(a, f.level(), "recenter");
  if (finer_level < f.level()) throw DomainError("recenter: new level below the series level");
  return raw::translate(f, -a).restricted_to(finer_level);
}

PadicNumber evaluate(const TateSeries& f, const PadicNumber& z) {
  require_in_ball(z, f.level(), "evaluate");
  const auto& a = f.coefficients();
  PadicNumber acc(f.context());
  for (int l = static_cast<int>(a.size()) - 1; l >= 0; --l) acc = acc * z + a[l];
  return acc.with_absolute_precision(f.tail_bound());
}

Tristate agree(const TateSeries& f, const TateSeries& g, long threshold) {
  require_compatible(f, g);
  const int m = f.level();
  const std::size_t n = std::max(f.coefficients().size(), g.coefficients().size());
  Tristate out = Tristate::yes;
  for (std::size_t l = 0; l < n; ++l) {
    const PadicNumber d = f.coefficient(static_cast<int>(l)) - g.coefficient(static_cast<int>(l));
    const Valuation shift(static_cast<long>(m) * static_cast<long>(l));
    if (!d.is_zero()) {
      if (d.valuation() + shift < Valuation(threshold)) return Tristate::no;
    } else if (d.absolute_precision() + shift < Valuation(threshold)) {
      out = Tristate::indeterminate;
    }
  }
  if (min(f.tail_bound(), g.tail_bound()) < Valuation(threshold)) out = both(out, Tristate::indeterminate);
  return out;
}

Tristate agree(const TateSeries& f, const TateSeries& g) {
  return agree(f, g, f.context()->comparison_precision());
}

}  // namespace rigidan
