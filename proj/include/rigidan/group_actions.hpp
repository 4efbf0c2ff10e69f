#pragma once

// Iwahori and congruence-subgroup matrices acting on function models.
//
// Generators act by
//   (1 0; y 1) f(z)   = f(z - y)
//   diag(s, t) f(z)   = f(s z / t) t^{k-2}
//   (1 x; 0 1) f(z)   = f(z / (1 - x z)) (1 - x z)^{k-2}
// and g = lower(y) diag(s, t) upper(x) acts as upper, then torus, then lower.
// In closed form (g f)(z) = f((a z - c) / (d - b z)) (d - b z)^{k-2}.

#include <array>
#include <string>

#include "rigidan/character.hpp"
#include "rigidan/function_spaces.hpp"

namespace rigidan {

struct Matrix2 {
  PadicNumber a, b, c, d;

  static Matrix2 identity(const ContextPtr& ctx);
  static Matrix2 lower(const PadicNumber& y);
  static Matrix2 upper(const PadicNumber& x);
  static Matrix2 torus(const PadicNumber& s, const PadicNumber& t);
  // w0 g w0 with w0 the antidiagonal permutation matrix.
  Matrix2 conjugate_w0() const;
  PadicNumber determinant() const { return a * d - b * c; }
  const ContextPtr& context() const { return a.context(); }
  friend Matrix2 operator*(const Matrix2& g, const Matrix2& h);
  // Entrywise equality to the given absolute precision.
  Tristate agrees(const Matrix2& o, long threshold) const;
};

// I(1) (pro-p Iwahori) or G(m).
struct GroupLevel {
  bool iwahori = true;
  int m = 1;

  static GroupLevel I1() { return {true, 1}; }
  static GroupLevel G(int m) { return {false, m}; }
  std::string to_string() const;
};

bool in_I1(const Matrix2& g);
bool in_G(const Matrix2& g, int m);

class IwahoriElement {
 public:
  // Throws DomainError when g is not in the declared group.
  IwahoriElement(Matrix2 g, GroupLevel level = GroupLevel::I1());

  const Matrix2& matrix() const { return g_; }
  GroupLevel declared_level() const { return level_; }
  // Largest m <= cap with g in G(m).
  int congruence_level(int cap = 64) const;
  friend IwahoriElement operator*(const IwahoriElement& g, const IwahoriElement& h);

 private:
  Matrix2 g_;
  GroupLevel level_;
};

struct Factorization {
  PadicNumber y, s, t, x;
};
// g = lower(y) diag(s, t) upper(x); requires a to be a unit.
Factorization iwahori_factorize(const Matrix2& g);
Matrix2 reassemble(const Factorization& f);

// Level-m series; g must lie in I(1) and G(m).
TateSeries act(const IwahoriElement& g, const TateSeries& f, const InductionCharacter& chi);
// Coset-wise action on Z_p; g in I(1).
PiecewiseFunction act(const IwahoriElement& g, const PiecewiseFunction& f, const InductionCharacter& chi);
// Generator action for any matrix with a unit corner a, units s, t and b/a in pZ_p.
PiecewiseFunction act_matrix(const Matrix2& g, const PiecewiseFunction& f, int twist_exponent);

enum class Cell { identity = 0, w0 = 1 };
std::string to_string(Cell c);

struct WeylCellVector {
  std::array<PiecewiseFunction, 2> cells;

  const PiecewiseFunction& operator[](Cell c) const { return cells[static_cast<int>(c)]; }
  PiecewiseFunction& operator[](Cell c) { return cells[static_cast<int>(c)]; }
  static WeylCellVector zero(const ContextPtr& ctx);
};

// Identity cell acted on by g, w0 cell by w0 g w0. Errors name the cell.
WeylCellVector act_cell(const IwahoriElement& g, const WeylCellVector& F, const InductionCharacter& chi);
StepFunction act_smooth(const IwahoriElement& g, const StepFunction& f);
// Exact polynomial route through the closed form; output degree stays <= k - 2.
LocallyAlgebraicFunction act_locally_algebraic(const IwahoriElement& g, const LocallyAlgebraicFunction& f,
                                               const InductionCharacter& chi);

}  // namespace rigidan
