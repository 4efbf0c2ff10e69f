#include "rigidan/function_spaces.hpp"

#include <algorithm>
#include <set>

#include "rigidan/errors.hpp"

namespace rigidan {

namespace {

mpz_class mod_pow(const ContextPtr& ctx, const mpz_class& a, int h) {
  mpz_class r;
  const mpz_class m = ctx->pow_uncached(static_cast<unsigned long>(h));
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

bool leaf_less(const Leaf& a, const Leaf& b) {
  if (a.level != b.level) return a.level < b.level;
  return a.center < b.center;
}

// Series on the sub-coset (center, level) of a leaf, in its own local coordinate.
TateSeries restrict_leaf(const Leaf& leaf, const mpz_class& center, int level) {
  if (level == leaf.level) return leaf.series;
  const auto& ctx = leaf.series.context();
  return recenter(leaf.series, PadicNumber::from_integer(ctx, center - leaf.center), level);
}

}  // namespace

PiecewiseFunction::PiecewiseFunction(ContextPtr ctx, std::vector<Leaf> leaves)
    : ctx_(std::move(ctx)), leaves_(std::move(leaves)) {
  if (leaves_.empty()) throw DomainError("a function needs at least one leaf");
  int top = 0;
  for (const auto& l : leaves_) {
    if (l.level < 0) throw DomainError("negative coset level");
    if (l.center < 0 || l.center >= ctx_->pow_uncached(static_cast<unsigned long>(l.level)))
      throw DomainError("coset center " + l.center.get_str() + " outside [0, p^" + std::to_string(l.level) + ")");
    if (l.series.level() != l.level)
      throw DomainError("leaf series level " + std::to_string(l.series.level()) + " differs from coset level " +
                        std::to_string(l.level));
    if (!l.series.context()->same_parameters(*ctx_)) throw MismatchError("leaf series from a different context");
    top = std::max(top, l.level);
  }
  std::sort(leaves_.begin(), leaves_.end(), leaf_less);

  // Measure: sum of p^{top - h} must be p^top.
  mpz_class measure = 0;
  for (const auto& l : leaves_) measure += ctx_->pow_uncached(static_cast<unsigned long>(top - l.level));
  if (measure != ctx_->pow_uncached(static_cast<unsigned long>(top)))
    throw DomainError("leaves do not partition Z_p (measure mismatch)");
  // Disjointness: no coset contains another.
  std::set<std::pair<int, mpz_class>> seen;
  std::set<int> levels;
  for (const auto& l : leaves_) {
    for (int h : levels)
      if (seen.count({h, mod_pow(ctx_, l.center, h)}))
        throw DomainError("overlapping cosets at " + l.center.get_str() + " + p^" + std::to_string(l.level) + "Z_p");
    if (!seen.insert({l.level, l.center}).second)
      throw DomainError("duplicate coset " + l.center.get_str() + " + p^" + std::to_string(l.level) + "Z_p");
    levels.insert(l.level);
  }
}

PiecewiseFunction PiecewiseFunction::global(const TateSeries& f) {
  if (f.level() != 0) throw DomainError("a global function needs a level-0 series");
  return PiecewiseFunction(f.context(), {Leaf{0, 0, f}});
}

PiecewiseFunction PiecewiseFunction::indicator(ContextPtr ctx, const mpz_class& center, int level,
                                               const PadicNumber& value) {
  if (level < 0) throw DomainError("negative coset level");
  const mpz_class c = mod_pow(ctx, center, level);
  const long p = ctx->prime();
  std::vector<Leaf> leaves;
  leaves.push_back(Leaf{c, level, TateSeries::constant(value, level)});
  // The complement: at each depth j, the p - 1 siblings of the path to c.
  for (int j = 0; j < level; ++j) {
    const mpz_class pj = ctx->pow_uncached(static_cast<unsigned long>(j));
    const mpz_class base = mod_pow(ctx, c, j);
    const mpz_class digit = (c / pj) % p;
    for (long e = 0; e < p; ++e) {
      if (e == digit) continue;
      leaves.push_back(Leaf{base + e * pj, j + 1, TateSeries::zero(ctx, j + 1)});
    }
  }
  return PiecewiseFunction(std::move(ctx), std::move(leaves));
}

PiecewiseFunction PiecewiseFunction::from_residues(ContextPtr ctx, int level,
                                                   const std::function<TateSeries(const mpz_class&)>& piece) {
  std::vector<Leaf> leaves;
  const mpz_class count = ctx->pow_uncached(static_cast<unsigned long>(level));
  for (mpz_class r = 0; r < count; ++r) leaves.push_back(Leaf{r, level, piece(r)});
  return PiecewiseFunction(std::move(ctx), std::move(leaves));
}

PiecewiseFunction PiecewiseFunction::zero(ContextPtr ctx) {
  auto z = TateSeries::zero(ctx, 0);
  return PiecewiseFunction(std::move(ctx), {Leaf{0, 0, z}});
}

int PiecewiseFunction::max_level() const {
  int top = 0;
  for (const auto& l : leaves_) top = std::max(top, l.level);
  return top;
}

int PiecewiseFunction::max_degree() const {
  int d = -1;
  for (const auto& l : leaves_) d = std::max(d, l.series.degree());
  return d;
}

bool PiecewiseFunction::all_exact() const {
  return std::all_of(leaves_.begin(), leaves_.end(), [](const Leaf& l) { return l.series.is_exact(); });
}

const Leaf& PiecewiseFunction::leaf_at(const PadicNumber& z) const {
  if (!z.is_integral()) throw DomainError("point outside Z_p");
  for (const auto& l : leaves_)
    if (z.residue(l.level) == l.center) return l;
  throw DomainError("no leaf contains the point");  // unreachable for a partition
}

PadicNumber PiecewiseFunction::evaluate(const PadicNumber& z) const {
  const Leaf& l = leaf_at(z);
  return rigidan::evaluate(l.series, z - PadicNumber::from_integer(ctx_, l.center));
}

PiecewiseFunction PiecewiseFunction::operator-() const {
  std::vector<Leaf> out = leaves_;
  for (auto& l : out) l.series = -l.series;
  return PiecewiseFunction(ctx_, std::move(out));
}

PiecewiseFunction PiecewiseFunction::scaled(const PadicNumber& c) const {
  std::vector<Leaf> out = leaves_;
  for (auto& l : out) l.series = scale(c, l.series);
  return PiecewiseFunction(ctx_, std::move(out));
}

std::vector<LeafPair> common_refinement(const PiecewiseFunction& f, const PiecewiseFunction& g) {
  if (!f.context()->same_parameters(*g.context())) throw MismatchError("functions from different contexts");
  const auto& ctx = f.context();
  std::vector<LeafPair> out;
  for (const auto& a : f.leaves())
    for (const auto& b : g.leaves()) {
      const int h = std::min(a.level, b.level);
      if (mod_pow(ctx, a.center, h) != mod_pow(ctx, b.center, h)) continue;
      const Leaf& fine = a.level >= b.level ? a : b;
      out.push_back(LeafPair{fine.center, fine.level, restrict_leaf(a, fine.center, fine.level),
                             restrict_leaf(b, fine.center, fine.level)});
    }
  return out;
}

PiecewiseFunction operator+(const PiecewiseFunction& f, const PiecewiseFunction& g) {
  std::vector<Leaf> leaves;
  for (auto& pr : common_refinement(f, g)) leaves.push_back(Leaf{pr.center, pr.level, pr.left + pr.right});
  return PiecewiseFunction(f.context(), std::move(leaves));
}

PiecewiseFunction operator-(const PiecewiseFunction& f, const PiecewiseFunction& g) { return f + (-g); }

Tristate agree(const PiecewiseFunction& f, const PiecewiseFunction& g, long threshold) {
  Tristate out = Tristate::yes;
  for (const auto& pr : common_refinement(f, g)) {
    out = both(out, agree(pr.left, pr.right, threshold));
    if (out == Tristate::no) break;
  }
  return out;
}

Tristate agree(const PiecewiseFunction& f, const PiecewiseFunction& g) {
  return agree(f, g, f.context()->comparison_precision());
}

StepFunction::StepFunction(PiecewiseFunction f) : f_(std::move(f)) {
  for (const auto& l : f_.leaves())
    if (l.series.degree() > 0) throw DomainError("step function leaf has positive degree");
}

LocallyAlgebraicFunction::LocallyAlgebraicFunction(PiecewiseFunction f, int k) : f_(std::move(f)), k_(k) {
  if (k < 2) throw ParameterError("weight k must be >= 2");
  for (const auto& l : f_.leaves())
    if (l.series.degree() > k - 2)
      throw DomainError("leaf degree " + std::to_string(l.series.degree()) + " exceeds k - 2 = " +
                        std::to_string(k - 2));
}

PiecewiseFunction refine(const PiecewiseFunction& f, int level) {
  if (level < f.max_level()) throw DomainError("refine below the current maximal level");
  const auto& ctx = f.context();
  std::vector<Leaf> out;
  for (const auto& l : f.leaves()) {
    const mpz_class ph = ctx->pow_uncached(static_cast<unsigned long>(l.level));
    const mpz_class count = ctx->pow_uncached(static_cast<unsigned long>(level - l.level));
    for (mpz_class t = 0; t < count; ++t) {
      const mpz_class c = l.center + t * ph;
      out.push_back(Leaf{c, level, restrict_leaf(l, c, level)});
    }
  }
  return PiecewiseFunction(ctx, std::move(out));
}

Membership is_member_Can(const PiecewiseFunction& f, int m) {
  if (m < 0) throw DomainError("negative level");
  const auto& ctx = f.context();
  std::vector<const Leaf*> inside;
  for (const auto& l : f.leaves()) {
    if (l.level <= m) {
      if (l.center == 0) return {Tristate::yes, l.series.restricted_to(m), "one leaf covers p^m Z_p"};
      continue;
    }
    if (mod_pow(ctx, l.center, m) == 0) inside.push_back(&l);
  }

  for (const Leaf* l : inside)
    if (!l->series.is_exact())
      return {Tristate::indeterminate, std::nullopt, "truncated pieces cannot certify gluing across cosets"};

  // Exact pieces are polynomials: the glued function, if any, is the first
  // one re-expanded about 0.
  Tristate status = Tristate::yes;
  std::optional<TateSeries> candidate;
  if (!inside.empty()) {
    const Leaf* first = inside.front();
    // A polynomial is also a series on the larger ball.
    const auto shifted = raw::translate(first->series, PadicNumber::from_integer(ctx, first->center));
    candidate = TateSeries(ctx, m, shifted.coefficients());
  }
  const long threshold = ctx->comparison_precision();
  for (const Leaf* l : inside) {
    const auto local = recenter(*candidate, PadicNumber::from_integer(ctx, l->center), l->level);
    const Tristate t = agree(local, l->series, threshold);
    if (t == Tristate::no)
      return {Tristate::no, std::nullopt, "pieces on p^m Z_p disagree at coset " + l->center.get_str()};
    status = both(status, t);
  }
  if (status != Tristate::yes) return {status, std::nullopt, "pieces agree only below the comparison precision"};
  return {Tristate::yes, candidate, "pieces re-expand to one polynomial"};
}

Tristate is_member_pi_an(const PiecewiseFunction& f, int m, int k) {
  if (k < 2) throw ParameterError("weight k must be >= 2");
  if (f.max_degree() > k - 2) return Tristate::no;
  const Membership r = is_member_Can(f, m);
  if (r.status != Tristate::yes) return r.status;
  return from_bool(r.witness->degree() <= k - 2);
}

Tristate is_member_C_m(const StepFunction& f, int m) { return is_member_pi_an(f.function(), m, 2); }

std::vector<PadicNumber> mahler_coefficients(const PiecewiseFunction& f, int count) {
  const auto& ctx = f.context();
  if (count < 0 || count > ctx->degree() + 1)
    throw DomainError("mahler coefficient count must lie in [0, D + 1]");
  std::vector<PadicNumber> v;
  v.reserve(static_cast<std::size_t>(count));
  for (int j = 0; j < count; ++j) v.push_back(f.evaluate(PadicNumber::from_int(ctx, j)));
  for (int n = 1; n < count; ++n)
    for (int j = count - 1; j >= n; --j) v[j] = v[j] - v[j - 1];
  return v;
}

}  // namespace rigidan
