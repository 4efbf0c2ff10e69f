#include "rigidan/group_actions.hpp"

#include "rigidan/errors.hpp"

namespace rigidan {

namespace {

PadicNumber one(const ContextPtr& ctx) { return PadicNumber::from_int(ctx, 1); }

// val(v) >= m, with an inexact zero counted only when known that far.
bool at_least(const PadicNumber& v, long m) {
  if (v.is_zero()) return v.absolute_precision() >= Valuation(m);
  return v.valuation() >= Valuation(m);
}

PiecewiseFunction map_leaves(const PiecewiseFunction& f, const std::function<Leaf(const Leaf&)>& fn) {
  std::vector<Leaf> out;
  out.reserve(f.leaves().size());
  for (const auto& l : f.leaves()) out.push_back(fn(l));
  return PiecewiseFunction(f.context(), std::move(out));
}

// (c0 + c1 z)^e as an exact level-h polynomial.
TateSeries linear_power(const PadicNumber& c0, const PadicNumber& c1, int e, int h) {
  const auto& ctx = c0.context();
  TateSeries out = TateSeries::constant(one(ctx), h);
  const TateSeries lin(ctx, h, {c0, c1});
  for (int i = 0; i < e; ++i) out = out * lin;
  return out;
}

// z -> z / (1 - x z) on each coset, with the twist (1 - x z)^e.
PiecewiseFunction upper_pass(const PiecewiseFunction& f, const PadicNumber& x, int e) {
  if (x.is_exact_zero()) return f;
  const auto& ctx = f.context();
  return map_leaves(f, [&](const Leaf& l) {
    const PadicNumber A = PadicNumber::from_integer(ctx, l.center);
    const mpz_class r = (A / (one(ctx) + x * A)).residue(l.level);
    const PadicNumber R = PadicNumber::from_integer(ctx, r);
    const PadicNumber u = one(ctx) - x * R;
    const PadicNumber delta = R / u - A;
    // psi(r + z') - a = delta + (z'/u^2) / (1 - (x/u) z').
    TateSeries s = raw::translate(l.series, -delta);
    s = raw::scale_argument(s, u.pow(-2));
    s = raw::mobius_substitute(s, x / u);
    if (e > 0) s = s * linear_power(u, -x, e, l.level);
    return Leaf{r, l.level, s};
  });
}

// z -> c z with the constant factor j.
PiecewiseFunction scale_pass(const PiecewiseFunction& f, const PadicNumber& c, const PadicNumber& j) {
  const auto& ctx = f.context();
  return map_leaves(f, [&](const Leaf& l) {
    const PadicNumber A = PadicNumber::from_integer(ctx, l.center);
    const mpz_class r = (A / c).residue(l.level);
    const PadicNumber delta = c * PadicNumber::from_integer(ctx, r) - A;
    TateSeries s = raw::scale_argument(raw::translate(l.series, -delta), c);
    return Leaf{r, l.level, scale(j, s)};
  });
}

// z -> z - y.
PiecewiseFunction lower_pass(const PiecewiseFunction& f, const PadicNumber& y) {
  if (y.is_exact_zero()) return f;
  const auto& ctx = f.context();
  return map_leaves(f, [&](const Leaf& l) {
    const PadicNumber A = PadicNumber::from_integer(ctx, l.center);
    const mpz_class r = (A + y).residue(l.level);
    const PadicNumber delta = PadicNumber::from_integer(ctx, r) - y - A;
    return Leaf{r, l.level, raw::translate(l.series, -delta)};
  });
}

void require_I1(const Matrix2& g) {
  if (!in_I1(g)) throw DomainError("matrix is not in the pro-p Iwahori I(1)");
}

}  // namespace

Matrix2 Matrix2::identity(const ContextPtr& ctx) { return {one(ctx), PadicNumber(ctx), PadicNumber(ctx), one(ctx)}; }

Matrix2 Matrix2::lower(const PadicNumber& y) {
  const auto& ctx = y.context();
  return {one(ctx), PadicNumber(ctx), y, one(ctx)};
}

Matrix2 Matrix2::upper(const PadicNumber& x) {
  const auto& ctx = x.context();
  return {one(ctx), x, PadicNumber(ctx), one(ctx)};
}

Matrix2 Matrix2::torus(const PadicNumber& s, const PadicNumber& t) {
  const auto& ctx = s.context();
  return {s, PadicNumber(ctx), PadicNumber(ctx), t};
}

Matrix2 Matrix2::conjugate_w0() const { return {d, c, b, a}; }

Matrix2 operator*(const Matrix2& g, const Matrix2& h) {
  return {g.a * h.a + g.b * h.c, g.a * h.b + g.b * h.d, g.c * h.a + g.d * h.c, g.c * h.b + g.d * h.d};
}

Tristate Matrix2::agrees(const Matrix2& o, long threshold) const {
  Tristate t = agrees_to(a, o.a, threshold);
  t = both(t, agrees_to(b, o.b, threshold));
  t = both(t, agrees_to(c, o.c, threshold));
  return both(t, agrees_to(d, o.d, threshold));
}

std::string GroupLevel::to_string() const { return iwahori ? "I1" : "G(" + std::to_string(m) + ")"; }

bool in_I1(const Matrix2& g) {
  const auto& ctx = g.context();
  return at_least(g.a - one(ctx), 1) && at_least(g.b, 1) && at_least(g.c, 0) && at_least(g.d - one(ctx), 1);
}

bool in_G(const Matrix2& g, int m) {
  const auto& ctx = g.context();
  if (!(at_least(g.a - one(ctx), m) && at_least(g.b, m) && at_least(g.c, m) && at_least(g.d - one(ctx), m)))
    return false;
  return g.determinant().is_unit();
}

IwahoriElement::IwahoriElement(Matrix2 g, GroupLevel level) : g_(std::move(g)), level_(level) {
  if (level_.iwahori) {
    require_I1(g_);
  } else {
    if (level_.m < 0) throw DomainError("negative congruence level");
    if (!in_G(g_, level_.m)) throw DomainError("matrix is not in " + level_.to_string());
  }
}

int IwahoriElement::congruence_level(int cap) const {
  int m = 0;
  while (m < cap && in_G(g_, m + 1)) ++m;
  return m;
}

IwahoriElement operator*(const IwahoriElement& g, const IwahoriElement& h) {
  Matrix2 prod = g.g_ * h.g_;
  if (!g.level_.iwahori && !h.level_.iwahori)
    return IwahoriElement(std::move(prod), GroupLevel::G(std::min(g.level_.m, h.level_.m)));
  if (in_I1(prod)) return IwahoriElement(std::move(prod), GroupLevel::I1());
  return IwahoriElement(std::move(prod), GroupLevel::G(0));
}

Factorization iwahori_factorize(const Matrix2& g) {
  if (!g.a.is_unit()) throw DomainError("factorization needs a unit upper-left entry");
  const PadicNumber ainv = g.a.inverse();
  return {g.c * ainv, g.a, g.d - g.c * g.b * ainv, g.b * ainv};
}

Matrix2 reassemble(const Factorization& f) {
  return Matrix2::lower(f.y) * Matrix2::torus(f.s, f.t) * Matrix2::upper(f.x);
}

TateSeries act(const IwahoriElement& g, const TateSeries& f, const InductionCharacter& chi) {
  const Matrix2& m = g.matrix();
  require_I1(m);
  if (!in_G(m, f.level()))
    throw DomainError("matrix is not in G(" + std::to_string(f.level()) + ") for a series on p^" +
                      std::to_string(f.level()) + " Z_p");
  const Factorization fa = iwahori_factorize(m);
  TateSeries out = mobius_twist(f, fa.x, chi.k);
  out = dilate(out, fa.s);
  out = inv_torus(out, fa.t, chi.k);
  return translate(out, fa.y);
}

PiecewiseFunction act_matrix(const Matrix2& g, const PiecewiseFunction& f, int twist_exponent) {
  const Factorization fa = iwahori_factorize(g);
  if (!fa.s.is_unit() || !fa.t.is_unit()) throw DomainError("torus part is not a unit");
  if (!at_least(fa.x, 1)) throw DomainError("upper unipotent part b/a is not in pZ_p");
  if (!fa.y.is_integral()) throw DomainError("lower unipotent part c/a is not in Z_p");
  PiecewiseFunction out = upper_pass(f, fa.x, twist_exponent);
  out = scale_pass(out, fa.s / fa.t, fa.t.pow(twist_exponent));
  return lower_pass(out, fa.y);
}

PiecewiseFunction act(const IwahoriElement& g, const PiecewiseFunction& f, const InductionCharacter& chi) {
  require_I1(g.matrix());
  return act_matrix(g.matrix(), f, chi.twist_exponent());
}

std::string to_string(Cell c) { return c == Cell::identity ? "identity" : "w0"; }

WeylCellVector WeylCellVector::zero(const ContextPtr& ctx) {
  return WeylCellVector{{PiecewiseFunction::zero(ctx), PiecewiseFunction::zero(ctx)}};
}

WeylCellVector act_cell(const IwahoriElement& g, const WeylCellVector& F, const InductionCharacter& chi) {
  require_I1(g.matrix());
  WeylCellVector out = F;
  for (Cell cell : {Cell::identity, Cell::w0}) {
    const Matrix2 m = cell == Cell::identity ? g.matrix() : g.matrix().conjugate_w0();
    try {
      out[cell] = act_matrix(m, F[cell], chi.twist_exponent());
    } catch (const DomainError& e) {
      throw DomainError("cell " + to_string(cell) + ": " + e.what());
    }
  }
  return out;
}

StepFunction act_smooth(const IwahoriElement& g, const StepFunction& f) {
  require_I1(g.matrix());
  return StepFunction(act_matrix(g.matrix(), f.function(), 0));
}

LocallyAlgebraicFunction act_locally_algebraic(const IwahoriElement& g, const LocallyAlgebraicFunction& f,
                                               const InductionCharacter& chi) {
  const Matrix2& m = g.matrix();
  require_I1(m);
  if (f.weight() != chi.k) throw MismatchError("locally algebraic weight differs from the character weight");
  const int e = chi.twist_exponent();
  const auto& ctx = f.function().context();
  // (g f)(z) = f(phi(z)) (d - b z)^e with phi(z) = (a z - c) / (d - b z). The
  // output coset r + p^h Z_p is mapped by phi onto the input coset A + p^h Z_p,
  // r = phi^{-1}(A) = (d A + c) / (b A + a).
  PiecewiseFunction out = map_leaves(f.function(), [&](const Leaf& l) {
    const int h = l.level;
    const PadicNumber A = PadicNumber::from_integer(ctx, l.center);
    const mpz_class r = ((m.d * A + m.c) / (m.b * A + m.a)).residue(h);
    const PadicNumber R = PadicNumber::from_integer(ctx, r);
    // phi(r + z') - A = N(z') / Dn(z').
    const TateSeries N(ctx, h, {m.a * R - m.c - A * m.d + A * m.b * R, m.a + A * m.b});
    const TateSeries Dn(ctx, h, {m.d - m.b * R, -m.b});
    TateSeries acc = TateSeries::zero(ctx, h);
    TateSeries npow = TateSeries::constant(one(ctx), h);
    for (int i = 0; i <= e; ++i) {
      const PadicNumber p = l.series.coefficient(i);
      if (!p.is_exact_zero()) {
        TateSeries term = scale(p, npow);
        for (int j = 0; j < e - i; ++j) term = term * Dn;
        acc = acc + term;
      }
      npow = npow * N;
    }
    return Leaf{r, h, acc.with_tail_bound(l.series.tail_bound())};
  });
  return LocallyAlgebraicFunction(std::move(out), chi.k);
}

}  // namespace rigidan
