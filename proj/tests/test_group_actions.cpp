#include "doctest.h"
#include "oracle.hpp"
#include "rigidan/errors.hpp"
#include "rigidan/group_actions.hpp"
#include "rigidan/random.hpp"

using namespace rigidan;

namespace {

PadicNumber num(const ContextPtr& ctx, long v) { return PadicNumber::from_int(ctx, v); }

InductionCharacter character(const ContextPtr& ctx, int k) {
  // alpha = p^{k-2} * 2, beta = p: valid under the strict rules for k >= 3.
  if (k == 2) return validate_crystalline(num(ctx, 5), num(ctx, 1), 2, ParameterPolicy::structural);
  return validate_crystalline(num(ctx, 2) * PadicNumber::power_of_p(ctx, k - 2), num(ctx, 5), k);
}

Matrix2 mat(const ContextPtr& ctx, long a, long b, long c, long d) {
  return {num(ctx, a), num(ctx, b), num(ctx, c), num(ctx, d)};
}

// Exact value of (g f)(z) = f((a z - c)/(d - b z)) (d - b z)^e for integer data.
mpq_class closed_form(const std::vector<mpz_class>& f, long a, long b, long c, long d, int e, const mpq_class& z) {
  const mpq_class den = d - b * z;
  const mpq_class w = (a * z - c) / den;
  mpq_class acc = 0;
  for (int l = static_cast<int>(f.size()) - 1; l >= 0; --l) acc = acc * w + mpq_class(f[l]);
  return acc * oracle::power(den, e);
}

bool same_function(const PiecewiseFunction& f, const PiecewiseFunction& g) {
  return agree(f, g) == Tristate::yes;
}

}  // namespace

TEST_SUITE("group_actions") {

TEST_CASE("factorization") {
  auto ctx = PadicContext::create();
  auto id = iwahori_factorize(Matrix2::identity(ctx));
  CHECK(id.y.is_zero());
  CHECK(id.s == num(ctx, 1));
  CHECK(id.t == num(ctx, 1));
  CHECK(id.x.is_zero());
  auto low = iwahori_factorize(mat(ctx, 1, 0, 7, 1));
  CHECK(low.y == num(ctx, 7));
  CHECK(low.x.is_zero());
  auto f = iwahori_factorize(mat(ctx, 6, 5, 1, 6));
  CHECK(oracle::matches(f.y, mpq_class(1, 6), 40));
  CHECK(oracle::matches(f.s, 6, 40));
  CHECK(oracle::matches(f.t, mpq_class(31, 6), 40));
  CHECK(oracle::matches(f.x, mpq_class(5, 6), 40));
  CHECK(reassemble(f).agrees(mat(ctx, 6, 5, 1, 6), 40) == Tristate::yes);
  CHECK_THROWS_AS(iwahori_factorize(mat(ctx, 5, 1, 1, 1)), DomainError);

  for (int i = 0; i < 100; ++i) {
    Rng rng = Rng::for_case(1, "factor", i);
    auto g = gen::iwahori(ctx, rng);
    CHECK(reassemble(iwahori_factorize(g)).agrees(g, ctx->comparison_precision()) == Tristate::yes);
  }
}

TEST_CASE("group membership") {
  auto ctx = PadicContext::create();
  CHECK(in_I1(mat(ctx, 6, 5, 1, 6)));
  CHECK_FALSE(in_I1(mat(ctx, 6, 1, 1, 6)));
  CHECK_FALSE(in_I1(mat(ctx, 2, 5, 1, 6)));
  CHECK(in_G(mat(ctx, 26, 25, 50, 1), 2));
  CHECK_FALSE(in_G(mat(ctx, 26, 25, 5, 1), 2));
  CHECK_THROWS_AS(IwahoriElement(mat(ctx, 6, 1, 1, 6)), DomainError);
  CHECK_THROWS_AS(IwahoriElement(mat(ctx, 6, 5, 1, 6), GroupLevel::G(1)), DomainError);
  CHECK(IwahoriElement(mat(ctx, 26, 25, 50, 126)).congruence_level() == 2);
}

TEST_CASE("act on series: examples") {
  auto ctx = PadicContext::create();
  auto chi3 = character(ctx, 3);
  auto z2 = TateSeries::from_ints(ctx, 1, {0, 0, 1});
  CHECK(agree(act(IwahoriElement(Matrix2::identity(ctx)), z2, chi3), z2) == Tristate::yes);
  auto low = act(IwahoriElement(Matrix2::lower(num(ctx, 5))), z2, chi3);
  CHECK(agree(low, TateSeries::from_ints(ctx, 1, {25, -10, 1})) == Tristate::yes);
  auto up = act(IwahoriElement(Matrix2::upper(num(ctx, 5))), TateSeries::from_ints(ctx, 1, {1}), chi3);
  CHECK(agree(up, TateSeries::from_ints(ctx, 1, {1, -5})) == Tristate::yes);
  // lower(1) is in I(1) but not in G(1).
  CHECK_THROWS_AS(act(IwahoriElement(Matrix2::lower(num(ctx, 1))), z2, chi3), DomainError);
}

TEST_CASE("act on series: closed form, isometry, associativity") {
  auto ctx = PadicContext::create();
  const long prec = ctx->comparison_precision();
  for (int i = 0; i < 60; ++i) {
    Rng rng = Rng::for_case(2, "series", i);
    const int m = i % 3;
    const int k = 2 + i % 4;
    auto chi = character(ctx, k);
    // Small integer data so the closed form is checkable in Q.
    const long pm = oracle::power(mpz_class(5), std::max(m, 1)).get_si();
    const long a = 1 + pm * rng.uniform(-20, 20), b = pm * rng.uniform(-20, 20);
    const long c = (m == 0 ? 1 : pm) * rng.uniform(-20, 20), d = 1 + pm * rng.uniform(-20, 20);
    std::vector<mpz_class> fc;
    for (int l = 0; l <= 10; ++l) fc.push_back(rng.uniform(-1000, 1000));
    std::vector<PadicNumber> pc;
    for (auto& x : fc) pc.push_back(PadicNumber::from_integer(ctx, x));
    TateSeries f(ctx, m, pc);
    IwahoriElement g(mat(ctx, a, b, c, d));
    auto gf = act(g, f, chi);
    CHECK(val_C(gf) == val_C(f));
    for (int j = 0; j < 5; ++j) {
      const mpq_class z = mpq_class(oracle::power(mpz_class(5), m) * rng.uniform(-100000, 100000));
      auto v = evaluate(gf, oracle::to_padic(ctx, z));
      CHECK(oracle::matches(v, closed_form(fc, a, b, c, d, k - 2, z), v.absolute_precision().value()));
    }
    auto g1 = IwahoriElement(gen::congruence(ctx, rng, m));
    auto g2 = IwahoriElement(gen::congruence(ctx, rng, m));
    auto F = gen::series(ctx, rng, m, 12);
    CHECK(agree(act(g1 * g2, F, chi), act(g1, act(g2, F, chi), chi), prec) == Tristate::yes);
  }
}

TEST_CASE("act on piecewise functions") {
  auto ctx = PadicContext::create();
  auto chi = character(ctx, 4);
  auto ind = PiecewiseFunction::indicator(ctx, 0, 1, num(ctx, 1));
  auto id = IwahoriElement(Matrix2::identity(ctx));
  CHECK(same_function(act(id, ind, chi), ind));

  for (int i = 0; i < 20; ++i) {
    Rng rng = Rng::for_case(3, "piecewise", i);
    auto f = gen::piecewise(ctx, rng, 1 + i % 2, 3);
    auto g1 = IwahoriElement(gen::iwahori(ctx, rng));
    auto g2 = IwahoriElement(gen::iwahori(ctx, rng));
    CHECK(same_function(act(g1 * g2, f, chi), act(g1, act(g2, f, chi), chi)));
    // Pointwise agreement with the series action of a global piece.
    auto s = gen::series(ctx, rng, 0, 6);
    auto glob = act(g1, PiecewiseFunction::global(s), chi);
    auto direct = act(g1, s, chi);
    for (int j = 0; j < 5; ++j) {
      auto z = gen::integral(ctx, rng);
      auto u = glob.evaluate(z), v = evaluate(direct, z);
      CHECK(agrees_to(u, v, min(u.absolute_precision(), v.absolute_precision()).value()) == Tristate::yes);
    }
  }
}

TEST_CASE("act_cell") {
  auto ctx = PadicContext::create();
  for (int k = 2; k <= 5; ++k) {
    auto chi = character(ctx, k);
    WeylCellVector F{{PiecewiseFunction::global(TateSeries::from_ints(ctx, 0, {1})),
                      PiecewiseFunction::global(TateSeries::from_ints(ctx, 0, {1}))}};
    auto s = num(ctx, 6), t = num(ctx, 11);
    auto out = act_cell(IwahoriElement(Matrix2::torus(s, t)), F, chi);
    CHECK(agree(out[Cell::identity].leaves()[0].series, TateSeries::constant(t.pow(k - 2), 0)) == Tristate::yes);
    CHECK(agree(out[Cell::w0].leaves()[0].series, TateSeries::constant(s.pow(k - 2), 0)) == Tristate::yes);
    auto id = act_cell(IwahoriElement(Matrix2::identity(ctx)), F, chi);
    CHECK(same_function(id[Cell::identity], F[Cell::identity]));
  }
  auto chi = character(ctx, 3);
  auto z = PiecewiseFunction::global(TateSeries::from_ints(ctx, 0, {0, 1}));
  WeylCellVector F{{z, z}};
  auto y = num(ctx, 5);
  auto out = act_cell(IwahoriElement(Matrix2::lower(y)), F, chi);
  CHECK(same_function(out[Cell::identity], act_matrix(Matrix2::lower(y), z, 1)));
  CHECK(same_function(out[Cell::w0], act_matrix(Matrix2::upper(y), z, 1)));
  CHECK(Matrix2::lower(y).conjugate_w0().agrees(Matrix2::upper(y), 40) == Tristate::yes);
  try {
    act_cell(IwahoriElement(Matrix2::lower(num(ctx, 1))), F, chi);
    FAIL("expected a domain error");
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("cell w0") != std::string::npos);
  }

  for (int i = 0; i < 15; ++i) {
    Rng rng = Rng::for_case(4, "cells", i);
    WeylCellVector G{{gen::piecewise(ctx, rng, 1, 2), gen::piecewise(ctx, rng, 1, 2)}};
    auto g1 = IwahoriElement(gen::congruence(ctx, rng, 1));
    auto g2 = IwahoriElement(gen::congruence(ctx, rng, 1));
    auto lhs = act_cell(g1 * g2, G, chi);
    auto rhs = act_cell(g1, act_cell(g2, G, chi), chi);
    for (Cell c : {Cell::identity, Cell::w0}) CHECK(same_function(lhs[c], rhs[c]));
  }
}

TEST_CASE("act_smooth") {
  auto ctx = PadicContext::create();
  auto ind = StepFunction(PiecewiseFunction::indicator(ctx, 0, 1, num(ctx, 1)));
  CHECK(same_function(act_smooth(IwahoriElement(Matrix2::identity(ctx)), ind).function(), ind.function()));
  CHECK(same_function(act_smooth(IwahoriElement(Matrix2::lower(num(ctx, 5))), ind).function(), ind.function()));
  auto c = StepFunction(PiecewiseFunction::global(TateSeries::from_ints(ctx, 0, {3})));
  auto torus = IwahoriElement(Matrix2::torus(num(ctx, 6), num(ctx, 11)));
  CHECK(same_function(act_smooth(torus, c).function(), c.function()));
  // lower(1) moves the indicator of 5Z_p to the indicator of 1 + 5Z_p.
  auto moved = act_smooth(IwahoriElement(Matrix2::lower(num(ctx, 1))), ind);
  CHECK(moved.function().evaluate(num(ctx, 1)) == num(ctx, 1));
  CHECK(moved.function().evaluate(num(ctx, 0)).is_zero());

  for (int i = 0; i < 30; ++i) {
    Rng rng = Rng::for_case(5, "smooth", i);
    auto f = StepFunction(gen::piecewise(ctx, rng, 2, 0));
    auto g1 = IwahoriElement(gen::iwahori(ctx, rng));
    auto g2 = IwahoriElement(gen::iwahori(ctx, rng));
    CHECK(same_function(act_smooth(g1 * g2, f).function(), act_smooth(g1, act_smooth(g2, f)).function()));
  }
}

TEST_CASE("act_locally_algebraic") {
  auto ctx = PadicContext::create();
  for (int k = 2; k <= 6; ++k) {
    auto chi = character(ctx, k);
    for (int j = 0; j <= k - 2; ++j) {
      auto f = LocallyAlgebraicFunction(PiecewiseFunction::global(TateSeries::monomial(num(ctx, 1), j, 0)), k);
      for (int i = 0; i < 5; ++i) {
        Rng rng = Rng::for_case(6, "monomials", 100 * k + 10 * j + i);
        auto g = IwahoriElement(gen::iwahori(ctx, rng));
        auto out = act_locally_algebraic(g, f, chi);
        CHECK(out.function().max_degree() <= k - 2);
        CHECK(out.function().all_exact());
        CHECK(same_function(out.function(), act(g, f.function(), chi)));
      }
    }
  }
  // Upper unipotent on z for k = 3: (z / (1 - x z)) (1 - x z) = z.
  auto chi3 = character(ctx, 3);
  auto z = LocallyAlgebraicFunction(PiecewiseFunction::global(TateSeries::from_ints(ctx, 0, {0, 1})), 3);
  auto out = act_locally_algebraic(IwahoriElement(Matrix2::upper(num(ctx, 5))), z, chi3);
  CHECK(same_function(out.function(), z.function()));

  for (int i = 0; i < 30; ++i) {
    Rng rng = Rng::for_case(6, "algebraic", i);
    const int k = 2 + i % 4;
    auto chi = character(ctx, k);
    auto f = LocallyAlgebraicFunction(gen::piecewise(ctx, rng, 1 + i % 2, k - 2), k);
    auto g1 = IwahoriElement(gen::iwahori(ctx, rng));
    auto g2 = IwahoriElement(gen::iwahori(ctx, rng));
    auto lhs = act_locally_algebraic(g1 * g2, f, chi);
    auto rhs = act_locally_algebraic(g1, act_locally_algebraic(g2, f, chi), chi);
    CHECK(same_function(lhs.function(), rhs.function()));
    CHECK(same_function(lhs.function(), act(g1 * g2, f.function(), chi)));
  }
}

}  // TEST_SUITE
