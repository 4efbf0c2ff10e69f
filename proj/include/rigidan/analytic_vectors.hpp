#pragma once

// Orbit-map expansions with their valuation estimates, G(m)-analyticity
// tests, and the cokernel model of the rigid analytic vectors.

#include <functional>
#include <string>
#include <vector>

#include "rigidan/group_actions.hpp"

namespace rigidan {

enum class OrbitFamily { translation, mobius, dilation, inv_torus };
std::string to_string(OrbitFamily f);
constexpr OrbitFamily kOrbitFamilies[] = {OrbitFamily::translation, OrbitFamily::mobius, OrbitFamily::dilation,
                                          OrbitFamily::inv_torus};

// act(generator(param), f) = sum_v param^v f_v, with param = y, x, s - 1, t - 1.
// The mobius and torus expansions are untwisted.
struct OrbitExpansion {
  OrbitFamily family;
  int m;
  std::vector<TateSeries> coefficients;  // f_0 .. f_D
};

OrbitExpansion orbit_translation(const TateSeries& f, int m);
OrbitExpansion orbit_mobius(const TateSeries& f, int m, int k);
OrbitExpansion orbit_dilation(const TateSeries& f, int m);
OrbitExpansion orbit_inv_torus(const TateSeries& f, int m);
OrbitExpansion orbit_expansion(OrbitFamily family, const TateSeries& f, int m);
// sum_v param^v f_v(z).
PadicNumber reconstruct(const OrbitExpansion& e, const PadicNumber& param, const PadicNumber& z);

struct BoundEntry {
  OrbitFamily family;
  int index;
  Valuation val_C;  // left side: val_C(f_v) (+ m v for translation)
  Valuation bound;
  Valuation margin;  // infinity when vacuous
  bool ok;
};

struct BoundsReport {
  int m;
  std::vector<BoundEntry> entries;
  bool ok = true;
  const BoundEntry* first_violation() const;
};

// Checks the four estimates on stored coefficients.
BoundsReport check_bounds(const TateSeries& f, int m);
// One family against a supplied expansion (also used to inject corrupted data).
void check_expansion(const TateSeries& f, const OrbitExpansion& e, BoundsReport& report);
// As check_bounds, but a violated estimate throws VerificationError naming it.
BoundsReport verify_bounds(const TateSeries& f, int m);

// Independent analyticity route: samples t -> f(p^m t) and tests whether its
// Mahler coefficients vanish beyond the leaf degree.
Tristate orbit_membership(const PiecewiseFunction& f, int m);

struct AnalyticVerdict {
  Tristate status;  // re-expansion route
  Tristate orbit;   // orbit-coefficient route
  std::optional<TateSeries> witness;
};
AnalyticVerdict is_analytic_vector(const PiecewiseFunction& f, int m);

// Cell vector whose cells are certified analytic on p^m Z_p, m > n.
struct GAElement {
  WeylCellVector F;
  int n;
  int m;

  // Throws DomainError unless m > n and every cell passes is_member_Can at m.
  static GAElement certify(WeylCellVector F, int n, int m);
};

struct CokernelParams {
  InductionCharacter chi;
  int n;
  int m;
  bool same(const CokernelParams& o) const;
};

struct CokernelElement {
  GAElement alpha_part;
  GAElement beta_part;
  CokernelParams params;

  static CokernelElement make(WeylCellVector F_alpha, WeylCellVector F_beta, const CokernelParams& params);
  static CokernelElement zero(const CokernelParams& params);
};

// Is (d_alpha, d_beta) in the image of the embedded locally algebraic space?
using EmbeddingStrategy =
    std::function<Tristate(const WeylCellVector& d_alpha, const WeylCellVector& d_beta, const CokernelParams&)>;
// Image through the beta component only: d_alpha = 0 and d_beta locally
// algebraic of degree <= k - 2 and glued on p^m Z_p in each cell.
EmbeddingStrategy beta_component_embedding();

// Throws MismatchError when the parameters differ.
Tristate cokernel_equal(const CokernelElement& c1, const CokernelElement& c2,
                        const EmbeddingStrategy& strategy = beta_component_embedding());

struct Witness {
  CokernelElement element;
  Tristate equals_zero;
};
// F_alpha = z^{k-2} on the identity cell, F_beta = 0; checks that the class is nonzero.
Witness witness_nonzero(const PadicNumber& alpha, const PadicNumber& beta, int k, int n, int m,
                        ParameterPolicy policy = ParameterPolicy::strict);

}  // namespace rigidan
