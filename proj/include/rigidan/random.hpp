#pragma once

// Seeded generators. Case k of suite S is a pure function of (seed, S, k).

#include <cstdint>
#include <string_view>

#include "rigidan/analytic_vectors.hpp"
#include "rigidan/galois.hpp"

namespace rigidan {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}
  static Rng for_case(std::uint64_t seed, std::string_view suite, std::uint64_t index);

  std::uint64_t next();
  long uniform(long lo, long hi);  // inclusive
  bool coin() { return next() & 1; }
  mpz_class below(const mpz_class& bound);

 private:
  std::uint64_t state_;
};

namespace gen {

// p^v u with u uniform in [0, p^N); may be zero.
PadicNumber integral(const ContextPtr& ctx, Rng& rng, int min_valuation = 0);
PadicNumber unit(const ContextPtr& ctx, Rng& rng);
// 1 + p^m u.
PadicNumber one_plus(const ContextPtr& ctx, Rng& rng, int m);
// Exact polynomial of the given degree on p^m Z_p; each coefficient carries a
// random extra valuation in [0, 3].
TateSeries series(const ContextPtr& ctx, Rng& rng, int m, int degree);
Matrix2 iwahori(const ContextPtr& ctx, Rng& rng);
// I(1) intersected with G(m).
Matrix2 congruence(const ContextPtr& ctx, Rng& rng, int m);
PiecewiseFunction piecewise(const ContextPtr& ctx, Rng& rng, int level, int degree);
// Strict crystalline data with k in [3, 6]: alpha = u p^{k-2}, beta = u' p.
InductionCharacter character(const ContextPtr& ctx, Rng& rng);
ContinuousCharacter continuous_character(const ContextPtr& ctx, Rng& rng);
// Cells drawn from a small pool of analytic functions on p^m Z_p, so that
// equal classes come up often.
CokernelElement cokernel_element(const ContextPtr& ctx, Rng& rng, const CokernelParams& params);

}  // namespace gen

}  // namespace rigidan
