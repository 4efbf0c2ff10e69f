#include "rigidan/galois.hpp"

#include <algorithm>

#include "rigidan/errors.hpp"

namespace rigidan {

namespace {

PadicNumber one(const ContextPtr& ctx) { return PadicNumber::from_int(ctx, 1); }

long mod(long a, long n) { return ((a % n) + n) % n; }

}  // namespace

ContinuousCharacter::ContinuousCharacter(PadicNumber value_at_p, long tame_exponent, PadicNumber wild_value)
    : value_(std::move(value_at_p)), tame_(0), wild_(std::move(wild_value)) {
  const auto& ctx = value_.context();
  if (value_.is_zero()) throw DomainError("character value at p must be nonzero");
  if (agrees_to(wild_, one(ctx), 1) != Tristate::yes) throw DomainError("wild value must be 1 mod p");
  tame_ = mod(tame_exponent, ctx->prime() - 1);
}

ContinuousCharacter ContinuousCharacter::trivial(const ContextPtr& ctx) { return {one(ctx), 0, one(ctx)}; }

ContinuousCharacter ContinuousCharacter::x(const ContextPtr& ctx) {
  return {PadicNumber::from_int(ctx, ctx->prime()), 1, PadicNumber::from_int(ctx, 1 + ctx->prime())};
}

ContinuousCharacter ContinuousCharacter::abs_x(const ContextPtr& ctx) {
  return {PadicNumber::power_of_p(ctx, -1), 0, one(ctx)};
}

ContinuousCharacter ContinuousCharacter::unramified(const PadicNumber& value_at_p) {
  return {value_at_p, 0, one(value_at_p.context())};
}

ContinuousCharacter ContinuousCharacter::inverse() const { return {value_.inverse(), -tame_, wild_.inverse()}; }

ContinuousCharacter ContinuousCharacter::pow(long e) const { return {value_.pow(e), tame_ * e, wild_.pow(e)}; }

ContinuousCharacter operator*(const ContinuousCharacter& a, const ContinuousCharacter& b) {
  return {a.value_ * b.value_, a.tame_ + b.tame_, a.wild_ * b.wild_};
}

Tristate same_character(const ContinuousCharacter& a, const ContinuousCharacter& b, long threshold) {
  if (a.tame_exponent() != b.tame_exponent()) return Tristate::no;
  // delta(p) may have any valuation, so it is compared relatively.
  const auto& ctx = a.context();
  return both(agrees_to(a.value_at_p() / b.value_at_p(), one(ctx), threshold),
              agrees_to(a.wild_value(), b.wild_value(), threshold));
}

Tristate same_character(const ContinuousCharacter& a, const ContinuousCharacter& b) {
  return same_character(a, b, a.context()->comparison_precision());
}

PadicNumber weight(const ContinuousCharacter& delta) {
  const auto& ctx = delta.context();
  return padic_log(delta.wild_value()) / padic_log(PadicNumber::from_int(ctx, 1 + ctx->prime()));
}

SStar in_S_star(const TriangulineParam& s) {
  const Valuation v1 = s.delta1.value_at_p().valuation();
  const Valuation v2 = s.delta2.value_at_p().valuation();
  const bool member = v1 + v2 == Valuation(0) && v1 > Valuation(0);
  return {member, v1.value(), weight(s.delta1) - weight(s.delta2)};
}

IntegerTest as_integer(const PadicNumber& w) {
  const auto& ctx = w.context();
  if (!w.is_integral()) return {Tristate::no, 0};
  const int prec = ctx->comparison_precision();
  if (w.absolute_precision() < Valuation(prec)) return {Tristate::indeterminate, 0};
  const mpz_class& modulus = ctx->pow(prec);
  mpz_class r = w.is_zero() ? mpz_class(0) : w.with_absolute_precision(prec).residue(prec);
  if (2 * r > modulus) r -= modulus;
  if (abs(r) >= ctx->pow(prec / 2)) return {Tristate::no, 0};
  return {Tristate::yes, r};
}

SCris in_S_cris(const TriangulineParam& s) {
  const SStar star = in_S_star(s);
  if (!star.member) return {Tristate::no, "not in S*"};
  if (s.scriptL) return {Tristate::no, "L is not infinity"};
  const IntegerTest n = as_integer(star.w);
  if (n.status == Tristate::indeterminate) return {Tristate::indeterminate, "w(s) is not known to enough digits"};
  if (n.status == Tristate::no) return {Tristate::no, "w(s) is not an integer"};
  if (n.value < 1) return {Tristate::no, "w(s) < 1"};
  if (star.u >= n.value) return {Tristate::no, "u(s) >= w(s)"};
  return {Tristate::yes, "u(s) < w(s), L infinite"};
}

Ext1 ext1_dimension(const ContinuousCharacter& delta1, const ContinuousCharacter& delta2, int bound) {
  if (bound < 1) throw DomainError("ext1 search bound must be >= 1");
  const auto& ctx = delta1.context();
  const ContinuousCharacter q = delta1 * delta2.inverse();
  const ContinuousCharacter x = ContinuousCharacter::x(ctx);
  const ContinuousCharacter ax = ContinuousCharacter::abs_x(ctx);
  bool unsure = false;
  for (int i = 0; i <= bound; ++i) {
    const Tristate t = same_character(q, x.pow(-i));
    if (t == Tristate::yes) return {Tristate::yes, 2, "x^-" + std::to_string(i)};
    unsure |= t == Tristate::indeterminate;
  }
  for (int i = 1; i <= bound; ++i) {
    const Tristate t = same_character(q, ax * x.pow(i));
    if (t == Tristate::yes) return {Tristate::yes, 2, "|x|x^" + std::to_string(i)};
    unsure |= t == Tristate::indeterminate;
  }
  // The valuation of q(p) pins down the only exponent that could still match.
  const long v = q.value_at_p().valuation().value();
  if (-v > bound && same_character(q, x.pow(v)) != Tristate::no) unsure = true;
  if (v + 1 > bound && same_character(q, ax * x.pow(v + 1)) != Tristate::no) unsure = true;
  return {unsure ? Tristate::indeterminate : Tristate::yes, 1, ""};
}

FilteredPhiModule::FilteredPhiModule(const PadicNumber& alpha, const PadicNumber& beta, int k, ParameterPolicy policy)
    : chi_(validate_crystalline(alpha, beta, k, policy)) {}

FilStep fil_dimension(const FilteredPhiModule& D, int i) {
  const int k = D.k();
  if (i <= -(k - 1)) return {2, "e_alpha, e_beta"};
  if (i <= 0) return {1, "e_alpha + e_beta"};
  return {0, ""};
}

std::vector<int> hodge_tate_weights(const FilteredPhiModule& D) {
  std::vector<int> out;
  for (int i = -D.k() - 1; i <= 1; ++i)
    for (int drop = fil_dimension(D, i).dimension - fil_dimension(D, i + 1).dimension; drop > 0; --drop)
      out.push_back(-i);
  std::sort(out.begin(), out.end());
  return out;
}

std::pair<PadicNumber, PadicNumber> phi_action(const FilteredPhiModule& D, const PadicNumber& c_alpha,
                                               const PadicNumber& c_beta) {
  return {c_alpha / D.parameters().alpha, c_beta / D.parameters().beta};
}

}  // namespace rigidan
