#include "rigidan/random.hpp"

#include <algorithm>

namespace rigidan {

Rng Rng::for_case(std::uint64_t seed, std::string_view suite, std::uint64_t index) {
  std::uint64_t h = 1469598103934665603ULL;  // FNV-1a
  for (char c : suite) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ULL;
  }
  Rng mix(seed ^ h);
  const std::uint64_t a = mix.next();
  return Rng(a ^ (index * 0x9E3779B97F4A7C15ULL));
}

std::uint64_t Rng::next() {
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

long Rng::uniform(long lo, long hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<long>(next() % span);
}

mpz_class Rng::below(const mpz_class& bound) {
  const std::size_t words = mpz_sizeinbase(bound.get_mpz_t(), 2) / 64 + 2;
  mpz_class acc = 0;
  for (std::size_t i = 0; i < words; ++i) acc = (acc << 64) + mpz_class(std::to_string(next()));
  return acc % bound;
}

namespace gen {

PadicNumber integral(const ContextPtr& ctx, Rng& rng, int min_valuation) {
  const mpz_class u = rng.below(ctx->pow(ctx->precision()));
  return PadicNumber::from_integer(ctx, u) * PadicNumber::power_of_p(ctx, min_valuation);
}

PadicNumber unit(const ContextPtr& ctx, Rng& rng) {
  mpz_class u = rng.below(ctx->pow(ctx->precision()));
  if (u % ctx->prime() == 0) u += 1;
  return PadicNumber::from_integer(ctx, u);
}

PadicNumber one_plus(const ContextPtr& ctx, Rng& rng, int m) {
  return PadicNumber::from_int(ctx, 1) + integral(ctx, rng, m);
}

TateSeries series(const ContextPtr& ctx, Rng& rng, int m, int degree) {
  degree = std::min(degree, ctx->degree());
  std::vector<PadicNumber> cs;
  for (int l = 0; l <= degree; ++l) cs.push_back(integral(ctx, rng, static_cast<int>(rng.uniform(0, 3))));
  // Keep the top coefficient nonzero so the degree is as requested.
  if (cs.back().is_zero()) cs.back() = PadicNumber::from_int(ctx, 1);
  return TateSeries(ctx, m, std::move(cs));
}

Matrix2 iwahori(const ContextPtr& ctx, Rng& rng) {
  return {one_plus(ctx, rng, 1), integral(ctx, rng, 1), integral(ctx, rng, 0), one_plus(ctx, rng, 1)};
}

Matrix2 congruence(const ContextPtr& ctx, Rng& rng, int m) {
  const int e = std::max(m, 1);
  return {one_plus(ctx, rng, e), integral(ctx, rng, e), integral(ctx, rng, m), one_plus(ctx, rng, e)};
}

PiecewiseFunction piecewise(const ContextPtr& ctx, Rng& rng, int level, int degree) {
  return PiecewiseFunction::from_residues(ctx, level, [&](const mpz_class&) {
    const int d = static_cast<int>(rng.uniform(0, degree));
    return series(ctx, rng, level, d);
  });
}

InductionCharacter character(const ContextPtr& ctx, Rng& rng) {
  const int k = static_cast<int>(rng.uniform(3, 6));
  PadicNumber alpha = unit(ctx, rng) * PadicNumber::power_of_p(ctx, k - 2);
  PadicNumber beta = unit(ctx, rng) * PadicNumber::power_of_p(ctx, 1);
  if (k == 3 && alpha == beta) alpha = alpha * PadicNumber::from_int(ctx, 2);
  return validate_crystalline(alpha, beta, k);
}

ContinuousCharacter continuous_character(const ContextPtr& ctx, Rng& rng) {
  const PadicNumber v = unit(ctx, rng) * PadicNumber::power_of_p(ctx, rng.uniform(-3, 3));
  return {v, rng.uniform(0, ctx->prime() - 2), one_plus(ctx, rng, 1)};
}

CokernelElement cokernel_element(const ContextPtr& ctx, Rng& rng, const CokernelParams& params) {
  const int m = params.m;
  const auto pick = [&]() {
    switch (rng.uniform(0, 4)) {
      case 0:
        return PiecewiseFunction::zero(ctx);
      case 1:
        return PiecewiseFunction::global(TateSeries::from_ints(ctx, 0, {1, 2}));
      case 2:
        return PiecewiseFunction::global(TateSeries::from_ints(ctx, 0, {0, 0, 1}));
      case 3:
        // Constant on p^m Z_p, another constant elsewhere.
        return PiecewiseFunction::indicator(ctx, 0, m, PadicNumber::from_int(ctx, 3));
      default:
        return PiecewiseFunction::global(TateSeries::from_ints(ctx, 0, {4, 0, 0, 1}));
    }
  };
  WeylCellVector a{{pick(), pick()}};
  WeylCellVector b{{pick(), pick()}};
  return CokernelElement::make(std::move(a), std::move(b), params);
}

}  // namespace gen

}  // namespace rigidan
