#pragma once

// Locally analytic functions on Z_p as finite coset partitions.
//
// Each leaf is a coset c + p^h Z_p (0 <= c < p^h) carrying a TateSeries at
// level h in the local coordinate z' = z - c.

#include <functional>
#include <optional>
#include <vector>

#include "rigidan/tate_series.hpp"

namespace rigidan {

struct Leaf {
  mpz_class center;
  int level;
  TateSeries series;
};

class PiecewiseFunction {
 public:
  // Sorts the leaves by (level, center) and checks that they partition Z_p.
  PiecewiseFunction(ContextPtr ctx, std::vector<Leaf> leaves);

  static PiecewiseFunction global(const TateSeries& f);
  // value on center + p^level Z_p, 0 elsewhere.
  static PiecewiseFunction indicator(ContextPtr ctx, const mpz_class& center, int level,
                                     const PadicNumber& value);
  // Uniform partition at one level, series chosen per residue.
  static PiecewiseFunction from_residues(ContextPtr ctx, int level,
                                         const std::function<TateSeries(const mpz_class&)>& piece);
  static PiecewiseFunction zero(ContextPtr ctx);

  const ContextPtr& context() const { return ctx_; }
  const std::vector<Leaf>& leaves() const { return leaves_; }
  int max_level() const;
  int max_degree() const;
  bool all_exact() const;
  // The leaf containing an integral z (z must be known mod p^{leaf level}).
  const Leaf& leaf_at(const PadicNumber& z) const;
  PadicNumber evaluate(const PadicNumber& z) const;

  PiecewiseFunction operator-() const;
  friend PiecewiseFunction operator+(const PiecewiseFunction& f, const PiecewiseFunction& g);
  friend PiecewiseFunction operator-(const PiecewiseFunction& f, const PiecewiseFunction& g);
  PiecewiseFunction scaled(const PadicNumber& c) const;

 private:
  ContextPtr ctx_;
  std::vector<Leaf> leaves_;
};

// Locally constant: every leaf has degree <= 0.
class StepFunction {
 public:
  explicit StepFunction(PiecewiseFunction f);
  const PiecewiseFunction& function() const { return f_; }

 private:
  PiecewiseFunction f_;
};

// Locally polynomial of degree <= k - 2.
class LocallyAlgebraicFunction {
 public:
  LocallyAlgebraicFunction(PiecewiseFunction f, int k);
  const PiecewiseFunction& function() const { return f_; }
  int weight() const { return k_; }

 private:
  PiecewiseFunction f_;
  int k_;
};

// Subdivide every leaf down to the given level.
PiecewiseFunction refine(const PiecewiseFunction& f, int level);

// Pairs of restrictions of f and g to the cosets of their common refinement.
struct LeafPair {
  mpz_class center;
  int level;
  TateSeries left;
  TateSeries right;
};
std::vector<LeafPair> common_refinement(const PiecewiseFunction& f, const PiecewiseFunction& g);

Tristate agree(const PiecewiseFunction& f, const PiecewiseFunction& g, long threshold);
Tristate agree(const PiecewiseFunction& f, const PiecewiseFunction& g);

struct Membership {
  Tristate status = Tristate::no;
  std::optional<TateSeries> witness;  // the glued series on p^m Z_p when status is yes
  std::string reason;
};

// Does the restriction of f to p^m Z_p come from one series on that ball?
Membership is_member_Can(const PiecewiseFunction& f, int m);
// Is the restriction of f to p^m Z_p one constant?
Tristate is_member_C_m(const StepFunction& f, int m);
// Leaf degrees <= k - 2 everywhere and the restriction to p^m Z_p glues to a
// polynomial of degree <= k - 2.
Tristate is_member_pi_an(const PiecewiseFunction& f, int m, int k);

// c_n = sum_j (-1)^{n-j} C(n, j) f(j) for n < count; count <= D + 1.
std::vector<PadicNumber> mahler_coefficients(const PiecewiseFunction& f, int count);

}  // namespace rigidan
