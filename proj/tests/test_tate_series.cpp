#include <random>

#include "doctest.h"
#include "oracle.hpp"
#include "rigidan/errors.hpp"
#include "rigidan/tate_series.hpp"

using namespace rigidan;

namespace {

PadicNumber num(const ContextPtr& ctx, long v) { return PadicNumber::from_int(ctx, v); }

// Exact polynomial with integer coefficients c_l * p^{e_l}.
struct IntPoly {
  std::vector<mpz_class> c;
};

IntPoly random_poly(std::mt19937_64& rng, int deg, long p) {
  std::uniform_int_distribution<long> d(-1000000, 1000000);
  std::uniform_int_distribution<int> e(0, 3);
  IntPoly f;
  for (int l = 0; l <= deg; ++l) f.c.push_back(mpz_class(d(rng)) * oracle::power(mpz_class(p), e(rng)));
  return f;
}

TateSeries to_series(const ContextPtr& ctx, const IntPoly& f, int m) {
  std::vector<PadicNumber> cs;
  for (const auto& c : f.c) cs.push_back(PadicNumber::from_integer(ctx, c));
  return TateSeries(ctx, m, cs);
}

mpq_class eval_exact(const IntPoly& f, const mpq_class& z) {
  mpq_class acc = 0;
  for (int l = static_cast<int>(f.c.size()) - 1; l >= 0; --l) acc = acc * z + mpq_class(f.c[l]);
  return acc;
}

bool coeffs_are(const TateSeries& f, const std::vector<mpq_class>& want, long prec) {
  const int n = std::max<int>(f.coefficients().size(), want.size());
  for (int l = 0; l < n; ++l) {
    mpq_class w = l < static_cast<int>(want.size()) ? want[l] : mpq_class(0);
    if (!oracle::matches(f.coefficient(l), w, prec)) return false;
  }
  return true;
}

}  // namespace

TEST_SUITE("tate_series") {

TEST_CASE("val_C") {
  auto ctx = PadicContext::create();
  CHECK(val_C(TateSeries::zero(ctx, 1)).is_infinite());
  CHECK(val_C(TateSeries::from_ints(ctx, 3, {1})) == Valuation(0));
  CHECK(val_C(TateSeries::from_ints(ctx, 2, {5, 1, 0, 25})) == Valuation(1));
  CHECK(val_C(TateSeries::from_ints(ctx, 0, {5}).with_tail_bound(0)) == Valuation(0));
}

TEST_CASE("translate") {
  auto ctx = PadicContext::create();
  auto z = TateSeries::from_ints(ctx, 1, {0, 1});
  CHECK(coeffs_are(translate(z, num(ctx, 15)), {-15, 1}, 40));
  auto z2 = TateSeries::from_ints(ctx, 1, {0, 0, 1});
  CHECK(coeffs_are(translate(z2, num(ctx, 5)), {25, -10, 1}, 40));
  CHECK(coeffs_are(translate(z2, PadicNumber(ctx)), {0, 0, 1}, 40));
  CHECK_THROWS_AS(translate(z2, num(ctx, 1)), DomainError);
}

TEST_CASE("dilate") {
  auto ctx = PadicContext::create();
  auto z2 = TateSeries::from_ints(ctx, 1, {0, 0, 1});
  CHECK(coeffs_are(dilate(z2, num(ctx, 6)), {0, 0, 36}, 40));
  CHECK(coeffs_are(dilate(z2, num(ctx, 1)), {0, 0, 1}, 40));
  CHECK(coeffs_are(dilate(TateSeries::from_ints(ctx, 1, {7}), num(ctx, 11)), {7}, 40));
  CHECK_THROWS_AS(dilate(z2, num(ctx, 2)), DomainError);
  CHECK_THROWS_AS(dilate(TateSeries::from_ints(ctx, 0, {0, 1}), num(ctx, 5)), DomainError);
}

TEST_CASE("mobius_twist") {
  auto ctx = PadicContext::create();
  auto one = TateSeries::from_ints(ctx, 1, {1});
  CHECK(coeffs_are(mobius_twist(one, num(ctx, 5), 3), {1, -5}, 40));
  auto z = TateSeries::from_ints(ctx, 1, {0, 1});
  CHECK(coeffs_are(mobius_twist(z, PadicNumber(ctx), 2), {0, 1}, 40));
  auto g = mobius_twist(z, num(ctx, 5), 2);
  std::vector<mpq_class> geo(65, 0);
  for (int q = 0; q < 64; ++q) geo[q + 1] = oracle::power(mpq_class(5), q);
  CHECK(coeffs_are(g, geo, 40));
  // The first dropped term is 5^64 z^65, of val_C 64 + 65.
  CHECK(g.tail_bound() == Valuation(64 + 65));
  CHECK_THROWS_AS(mobius_twist(z, num(ctx, 5), 1), ParameterError);
  CHECK_THROWS_AS(mobius_twist(z, num(ctx, 1), 2), DomainError);
  CHECK_THROWS_AS(mobius_twist(TateSeries::from_ints(ctx, 2, {0, 1}), num(ctx, 5), 2), DomainError);
}

TEST_CASE("mobius matches the binomial expansion") {
  auto ctx = PadicContext::create(5, 40, 30);
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const int m = 1 + trial % 3;
    IntPoly f = random_poly(rng, 8, 5);
    const mpq_class x = mpq_class(5 * (1 + static_cast<long>(trial))) * oracle::power(mpq_class(5), m - 1);
    const int k = 2 + trial % 4;
    // f(z/(1-xz)) (1-xz)^{k-2}: coefficient of z^j from a_l z^l (1-xz)^{k-2-l}.
    std::vector<mpq_class> want(31, 0);
    for (int l = 0; l < static_cast<int>(f.c.size()); ++l) {
      const long e = k - 2 - l;
      for (int q = 0; l + q <= 30; ++q) {
        // (1 - v)^e = sum_q (-1)^q C(e, q) v^q, generalized binomial.
        mpq_class gb = 1;
        for (int i = 0; i < q; ++i) gb = gb * mpq_class(e - i) / (i + 1);
        want[l + q] += mpq_class(f.c[l]) * gb * oracle::power(mpq_class(-x), q);
      }
    }
    auto g = mobius_twist(to_series(ctx, f, m), oracle::to_padic(ctx, x), k);
    CHECK(coeffs_are(g, want, 35));
  }
}

TEST_CASE("inv_torus") {
  auto ctx = PadicContext::create();
  auto one = TateSeries::from_ints(ctx, 1, {1});
  CHECK(coeffs_are(inv_torus(one, num(ctx, 6), 4), {36}, 40));
  auto z = TateSeries::from_ints(ctx, 1, {0, 1});
  CHECK(coeffs_are(inv_torus(z, num(ctx, 6), 2), {0, mpq_class(1, 6)}, 40));
  CHECK(coeffs_are(inv_torus(z, num(ctx, 1), 5), {0, 1}, 40));
  CHECK_THROWS_AS(inv_torus(z, num(ctx, 2), 2), DomainError);
  CHECK_THROWS_AS(inv_torus(z, num(ctx, 6), 0), ParameterError);
}

TEST_CASE("recenter and evaluate") {
  auto ctx = PadicContext::create();
  auto z = TateSeries::from_ints(ctx, 1, {0, 1});
  auto r = recenter(z, num(ctx, 5), 2);
  CHECK(r.level() == 2);
  CHECK(coeffs_are(r, {5, 1}, 40));
  auto z2 = TateSeries::from_ints(ctx, 1, {0, 0, 1});
  CHECK(coeffs_are(recenter(z2, num(ctx, 5), 2), {25, 10, 1}, 40));
  CHECK_THROWS_AS(recenter(z2, num(ctx, 1), 2), DomainError);
  CHECK_THROWS_AS(recenter(z2, num(ctx, 5), 0), DomainError);

  auto f = TateSeries::from_ints(ctx, 1, {5, 1, 0, 25});
  CHECK(evaluate(f, num(ctx, 5)) == num(ctx, 3135));
  CHECK(evaluate(z2, num(ctx, 5)) == num(ctx, 25));
  CHECK(evaluate(TateSeries::from_ints(ctx, 1, {1}), num(ctx, 10)) == num(ctx, 1));
  CHECK_THROWS_AS(evaluate(f, num(ctx, 1)), DomainError);
  // Precision of a value is capped by the certificate.
  auto t = f.with_tail_bound(7);
  CHECK(evaluate(t, num(ctx, 5)).absolute_precision() == Valuation(7));
}

TEST_CASE("ring operations") {
  auto ctx = PadicContext::create(5, 40, 6);
  auto f = TateSeries::from_ints(ctx, 1, {1, 1, 1, 1});
  auto g = TateSeries::from_ints(ctx, 1, {1, 0, 0, 5, 0, 0, 25});
  auto h = f * g;
  // Dropped: 25 z^7, 25 z^8, 25 z^9; the smallest is 2 + 7.
  CHECK(h.tail_bound() == Valuation(9));
  CHECK(coeffs_are(h, {1, 1, 1, 6, 5, 5, 30}, 40));
  CHECK(coeffs_are(f + g, {2, 1, 1, 6, 0, 0, 25}, 40));
  CHECK(val_C(scale(num(ctx, 25), f)) == Valuation(2));
  CHECK_THROWS_AS(f + TateSeries::from_ints(ctx, 2, {1}), MismatchError);
  CHECK_THROWS_AS(TateSeries(ctx, 1, std::vector<PadicNumber>(8, num(ctx, 1))), DomainError);
}

TEST_CASE("isometry and evaluation compatibility on random series") {
  auto ctx = PadicContext::create();
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<long> d(0, 100000);
  const long prec = ctx->comparison_precision();
  for (int trial = 0; trial < 100; ++trial) {
    const int m = 1 + trial % 3;
    IntPoly fp = random_poly(rng, 12, 5);
    auto f = to_series(ctx, fp, m);
    const mpz_class pm = oracle::power(mpz_class(5), m);
    const mpq_class y(pm * d(rng)), x(pm * 5 * d(rng)), s(1 + pm * d(rng)), t(1 + pm * d(rng));
    const int k = 2 + trial % 3;
    auto py = oracle::to_padic(ctx, y), px = oracle::to_padic(ctx, x);
    auto ps = oracle::to_padic(ctx, s), pt = oracle::to_padic(ctx, t);
    auto tr = translate(f, py);
    auto di = dilate(f, ps);
    auto mo = mobius_twist(f, px, k);
    auto it = inv_torus(f, pt, k);
    for (const auto* g : {&tr, &di, &mo, &it}) CHECK(val_C(*g) == val_C(f));

    for (int j = 0; j < 5; ++j) {
      const mpq_class zq(pm * d(rng));
      auto z = oracle::to_padic(ctx, zq);
      CHECK(oracle::matches(evaluate(tr, z), eval_exact(fp, zq - y), prec));
      CHECK(oracle::matches(evaluate(di, z), eval_exact(fp, s * zq), prec));
      const mpq_class u = 1 - x * zq;
      CHECK(oracle::matches(evaluate(mo, z), eval_exact(fp, zq / u) * oracle::power(u, k - 2), prec));
      CHECK(oracle::matches(evaluate(it, z), eval_exact(fp, zq / t) * oracle::power(t, k - 2), prec));
      const mpq_class a(pm * d(rng));
      auto rc = recenter(f, oracle::to_padic(ctx, a), m + 1);
      const mpq_class zz(pm * 5 * d(rng));
      CHECK(oracle::matches(evaluate(rc, oracle::to_padic(ctx, zz)), eval_exact(fp, a + zz), prec));
    }
  }
}

TEST_CASE("val_C subadditivity") {
  auto ctx = PadicContext::create();
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const int m = trial % 4;
    auto f = to_series(ctx, random_poly(rng, 40, 5), m);
    auto g = to_series(ctx, random_poly(rng, 40, 5), m);
    CHECK(val_C(f * g) >= val_C(f) + val_C(g));
    CHECK(val_C(f + g) >= min(val_C(f), val_C(g)));
  }
}

TEST_CASE("agree") {
  auto ctx = PadicContext::create();
  auto f = TateSeries::from_ints(ctx, 1, {1, 2, 3});
  auto g = TateSeries::from_ints(ctx, 1, {1, 2, 3 + 5 * 5 * 5});
  CHECK(agree(f, f) == Tristate::yes);
  CHECK(agree(f, g) == Tristate::no);
  CHECK(agree(f, g, 5) == Tristate::yes);
  CHECK(agree(f.with_tail_bound(10), f) == Tristate::indeterminate);
}

}  // TEST_SUITE
