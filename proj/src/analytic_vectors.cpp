#include "rigidan/analytic_vectors.hpp"

#include <climits>

#include "rigidan/errors.hpp"

namespace rigidan {

namespace {

constexpr long kMinusInfinity = LONG_MIN;
constexpr long kMaxSamples = 4096;

TateSeries at_level(const TateSeries& f, int m) {
  if (m < 0) throw DomainError("negative level");
  if (f.level() > m)
    throw DomainError("series lives on p^" + std::to_string(f.level()) + " Z_p, smaller than p^" +
                      std::to_string(m) + " Z_p");
  return f.restricted_to(m);
}

const BinomialTable& binomials(int size) {
  thread_local BinomialTable table(1);
  if (table.size() < size) table = BinomialTable(size);
  return table;
}

// Builds f_0..f_D from term(l, v) -> (target degree, multiplier), skipping
// terms whose degree exceeds D; the dropped terms feed the tail bound.
template <class Term>
OrbitExpansion expand(OrbitFamily family, const TateSeries& f, int m, Term term,
                      const std::function<Valuation(int)>& own_tail) {
  const auto& ctx = f.context();
  const int D = ctx->degree();
  OrbitExpansion out{family, m, {}};
  out.coefficients.reserve(static_cast<std::size_t>(D + 1));
  for (int v = 0; v <= D; ++v) {
    std::vector<PadicNumber> c(static_cast<std::size_t>(D + 1), PadicNumber(ctx));
    Valuation dropped = Valuation::infinity();
    for (int l = 0; l <= f.degree(); ++l) {
      const PadicNumber& a = f.coefficients()[static_cast<std::size_t>(l)];
      if (a.is_exact_zero()) continue;
      int j;
      PadicNumber mult(ctx);
      if (!term(l, v, j, mult)) continue;
      if (j > D) {
        dropped = min(dropped, a.valuation() + static_cast<long>(m) * j);
        continue;
      }
      c[static_cast<std::size_t>(j)] += a * mult;
    }
    out.coefficients.emplace_back(ctx, m, std::move(c), min(own_tail(v), dropped));
  }
  return out;
}

void push(BoundsReport& r, OrbitFamily family, int index, Valuation lhs, Valuation bound) {
  BoundEntry e{family, index, lhs, bound, Valuation::infinity(), lhs >= bound};
  if (lhs.is_finite()) e.margin = bound.is_finite() ? lhs - bound.value() : Valuation(kMinusInfinity);
  if (!e.ok) r.ok = false;
  r.entries.push_back(e);
}

std::string show(Valuation v) {
  if (v.is_finite() && v.value() == kMinusInfinity) return "-inf";
  return v.to_string();
}

bool mod_zero(const ContextPtr& ctx, const mpz_class& c, int m) {
  mpz_class r = c % ctx->pow(m);
  return r == 0;
}

}  // namespace

std::string to_string(OrbitFamily f) {
  switch (f) {
    case OrbitFamily::translation:
      return "translation";
    case OrbitFamily::mobius:
      return "mobius";
    case OrbitFamily::dilation:
      return "dilation";
    case OrbitFamily::inv_torus:
      return "inv_torus";
  }
  return "?";
}

// f(z - y) = sum_v y^v (-1)^v sum_{l>=v} a_l C(l, v) z^{l-v}.
OrbitExpansion orbit_translation(const TateSeries& f0, int m) {
  const TateSeries f = at_level(f0, m);
  const auto& ctx = f.context();
  const auto& B = binomials(ctx->degree() + 2);
  const Valuation T = f.tail_bound();
  return expand(
      OrbitFamily::translation, f, m,
      [&](int l, int v, int& j, PadicNumber& mult) {
        if (l < v) return false;
        j = l - v;
        mult = B.padic(ctx, l, v);
        if (v % 2) mult = -mult;
        return true;
      },
      [&](int v) { return T.is_infinite() ? T : T - static_cast<long>(m) * v; });
}

// f(z / (1 - x z)) = sum_q x^q sum_l a_l C(l + q - 1, q) z^{l+q}.
OrbitExpansion orbit_mobius(const TateSeries& f0, int m, int k) {
  if (k < 2) throw ParameterError("weight k must be >= 2");
  const TateSeries f = at_level(f0, m);
  const auto& ctx = f.context();
  const auto& B = binomials(2 * ctx->degree() + 2);
  const Valuation T = f.tail_bound();
  return expand(
      OrbitFamily::mobius, f, m,
      [&](int l, int q, int& j, PadicNumber& mult) {
        if (q > 0 && l == 0) return false;
        j = l + q;
        mult = q == 0 ? PadicNumber::from_int(ctx, 1) : B.padic(ctx, l + q - 1, q);
        return true;
      },
      [&](int q) { return T + Valuation(static_cast<long>(m) * q); });
}

// f((1 + s') z) = sum_q s'^q sum_{l>=q} a_l C(l, q) z^l.
OrbitExpansion orbit_dilation(const TateSeries& f0, int m) {
  const TateSeries f = at_level(f0, m);
  const auto& ctx = f.context();
  const auto& B = binomials(ctx->degree() + 2);
  const Valuation T = f.tail_bound();
  return expand(
      OrbitFamily::dilation, f, m,
      [&](int l, int q, int& j, PadicNumber& mult) {
        if (l < q) return false;
        j = l;
        mult = B.padic(ctx, l, q);
        return true;
      },
      [&](int) { return T; });
}

// f(z / (1 + t')) = sum_q t'^q (-1)^q sum_l a_l C(l + q - 1, q) z^l.
OrbitExpansion orbit_inv_torus(const TateSeries& f0, int m) {
  const TateSeries f = at_level(f0, m);
  const auto& ctx = f.context();
  const auto& B = binomials(2 * ctx->degree() + 2);
  const Valuation T = f.tail_bound();
  return expand(
      OrbitFamily::inv_torus, f, m,
      [&](int l, int q, int& j, PadicNumber& mult) {
        if (q > 0 && l == 0) return false;
        j = l;
        mult = q == 0 ? PadicNumber::from_int(ctx, 1) : B.padic(ctx, l + q - 1, q);
        if (q % 2) mult = -mult;
        return true;
      },
      [&](int) { return T; });
}

OrbitExpansion orbit_expansion(OrbitFamily family, const TateSeries& f, int m) {
  switch (family) {
    case OrbitFamily::translation:
      return orbit_translation(f, m);
    case OrbitFamily::mobius:
      return orbit_mobius(f, m, 2);
    case OrbitFamily::dilation:
      return orbit_dilation(f, m);
    case OrbitFamily::inv_torus:
      return orbit_inv_torus(f, m);
  }
  throw DomainError("unknown orbit family");
}

PadicNumber reconstruct(const OrbitExpansion& e, const PadicNumber& param, const PadicNumber& z) {
  const auto& ctx = z.context();
  PadicNumber acc(ctx);
  for (auto it = e.coefficients.rbegin(); it != e.coefficients.rend(); ++it) acc = acc * param + evaluate(*it, z);
  return acc;
}

const BoundEntry* BoundsReport::first_violation() const {
  for (const auto& e : entries)
    if (!e.ok) return &e;
  return nullptr;
}

void check_expansion(const TateSeries& f, const OrbitExpansion& e, BoundsReport& report) {
  const long m = e.m;
  const Valuation whole = stored_val_C(f);
  for (std::size_t i = 0; i < e.coefficients.size(); ++i) {
    const int v = static_cast<int>(i);
    const Valuation lhs = stored_val_C(e.coefficients[i]);
    switch (e.family) {
      case OrbitFamily::translation:
        push(report, e.family, v, lhs + Valuation(m * v), stored_val_C_from(f, v));
        break;
      case OrbitFamily::mobius:
        push(report, e.family, v, lhs, whole + Valuation(m * v));
        break;
      case OrbitFamily::dilation:
        push(report, e.family, v, lhs, stored_val_C_from(f, v));
        break;
      case OrbitFamily::inv_torus:
        push(report, e.family, v, lhs, whole);
        break;
    }
  }
}

BoundsReport check_bounds(const TateSeries& f0, int m) {
  const TateSeries f = at_level(f0, m);
  BoundsReport report{m, {}, true};
  for (OrbitFamily family : kOrbitFamilies) check_expansion(f, orbit_expansion(family, f, m), report);
  return report;
}

BoundsReport verify_bounds(const TateSeries& f, int m) {
  BoundsReport report = check_bounds(f, m);
  if (const BoundEntry* e = report.first_violation())
    throw VerificationError("orbit estimate violated: family " + to_string(e->family) + ", index " +
                            std::to_string(e->index) + " (val_C " + e->val_C.to_string() + " < bound " +
                            e->bound.to_string() + ", margin " + show(e->margin) + ")");
  return report;
}

Tristate orbit_membership(const PiecewiseFunction& f, int m) {
  if (m < 0) throw DomainError("negative level");
  const auto& ctx = f.context();
  int top = m;
  int degree = 0;
  for (const auto& l : f.leaves()) {
    if (l.level <= m) {
      if (l.center == 0) return Tristate::yes;
      continue;
    }
    if (!mod_zero(ctx, l.center, m)) continue;
    if (!l.series.is_exact()) return Tristate::indeterminate;
    top = std::max(top, l.level);
    degree = std::max(degree, l.series.degree());
  }
  // phi(t) = f(p^m t) is a polynomial of degree <= d on each class mod p^j.
  // If its Mahler coefficients vanish for d < n < p^j (d + 1), the degree-d
  // interpolant agrees with phi at d + 1 points of every class, hence everywhere.
  const int j = top - m;
  const mpz_class count = ctx->pow(j) * (degree + 1);
  if (count > kMaxSamples) return Tristate::indeterminate;
  const long n = count.get_si();
  std::vector<PadicNumber> v;
  v.reserve(static_cast<std::size_t>(n));
  const PadicNumber pm = PadicNumber::power_of_p(ctx, m);
  for (long t = 0; t < n; ++t) v.push_back(f.evaluate(pm * PadicNumber::from_int(ctx, t)));
  for (long r = 1; r < n; ++r)
    for (long i = n - 1; i >= r; --i) v[i] = v[i] - v[i - 1];
  const long threshold = ctx->comparison_precision();
  const PadicNumber zero(ctx);
  Tristate status = Tristate::yes;
  for (long i = degree + 1; i < n; ++i) {
    const Tristate t = agrees_to(v[i], zero, threshold);
    if (t == Tristate::no) return Tristate::no;
    status = both(status, t);
  }
  return status;
}

AnalyticVerdict is_analytic_vector(const PiecewiseFunction& f, int m) {
  Membership r = is_member_Can(f, m);
  return {r.status, orbit_membership(f, m), std::move(r.witness)};
}

GAElement GAElement::certify(WeylCellVector F, int n, int m) {
  if (n < 0) throw DomainError("negative level n");
  if (m <= n) throw DomainError("analyticity level m must exceed n");
  for (Cell cell : {Cell::identity, Cell::w0}) {
    const Membership r = is_member_Can(F[cell], m);
    if (r.status != Tristate::yes)
      throw DomainError("cell " + to_string(cell) + " is not certified analytic on p^" + std::to_string(m) +
                        " Z_p: " + r.reason);
  }
  return GAElement{std::move(F), n, m};
}

bool CokernelParams::same(const CokernelParams& o) const {
  return chi.same_parameters(o.chi) && n == o.n && m == o.m;
}

CokernelElement CokernelElement::make(WeylCellVector F_alpha, WeylCellVector F_beta, const CokernelParams& params) {
  const auto& ctx = params.chi.context();
  for (const WeylCellVector* F : {&F_alpha, &F_beta})
    for (const auto& cell : F->cells)
      if (!cell.context()->same_parameters(*ctx)) throw MismatchError("cell context differs from the character's");
  return CokernelElement{GAElement::certify(std::move(F_alpha), params.n, params.m),
                         GAElement::certify(std::move(F_beta), params.n, params.m), params};
}

CokernelElement CokernelElement::zero(const CokernelParams& params) {
  const auto& ctx = params.chi.context();
  return make(WeylCellVector::zero(ctx), WeylCellVector::zero(ctx), params);
}

EmbeddingStrategy beta_component_embedding() {
  return [](const WeylCellVector& d_alpha, const WeylCellVector& d_beta, const CokernelParams& params) {
    Tristate status = Tristate::yes;
    for (Cell cell : {Cell::identity, Cell::w0}) {
      const auto zero = PiecewiseFunction::zero(d_alpha[cell].context());
      status = both(status, agree(d_alpha[cell], zero));
      status = both(status, is_member_pi_an(d_beta[cell], params.m, params.chi.k));
      if (status == Tristate::no) break;
    }
    return status;
  };
}

Tristate cokernel_equal(const CokernelElement& c1, const CokernelElement& c2, const EmbeddingStrategy& strategy) {
  if (!c1.params.same(c2.params)) throw MismatchError("cokernel elements carry different parameters");
  WeylCellVector d_alpha = c1.alpha_part.F;
  WeylCellVector d_beta = c1.beta_part.F;
  for (Cell cell : {Cell::identity, Cell::w0}) {
    d_alpha[cell] = c1.alpha_part.F[cell] - c2.alpha_part.F[cell];
    d_beta[cell] = c1.beta_part.F[cell] - c2.beta_part.F[cell];
  }
  return strategy(d_alpha, d_beta, c1.params);
}

Witness witness_nonzero(const PadicNumber& alpha, const PadicNumber& beta, int k, int n, int m,
                        ParameterPolicy policy) {
  const InductionCharacter chi = validate_crystalline(alpha, beta, k, policy);
  const CokernelParams params{chi, n, m};
  const auto& ctx = alpha.context();
  WeylCellVector F_alpha = WeylCellVector::zero(ctx);
  F_alpha[Cell::identity] =
      PiecewiseFunction::global(TateSeries::monomial(PadicNumber::from_int(ctx, 1), k - 2, 0));
  CokernelElement element = CokernelElement::make(std::move(F_alpha), WeylCellVector::zero(ctx), params);
  const Tristate eq = cokernel_equal(element, CokernelElement::zero(params));
  if (eq != Tristate::no)
    throw VerificationError("witness class could not be separated from zero (" + std::string(to_string(eq)) + ")");
  return {std::move(element), eq};
}

}  // namespace rigidan
