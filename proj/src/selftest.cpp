#include "rigidan/selftest.hpp"

#include <algorithm>
#include <functional>

#include "rigidan/random.hpp"

namespace rigidan {

namespace {

struct Outcome {
  bool ok;
  json data;
  std::string detail;
};

using CaseFn = std::function<Outcome(const ContextPtr&, Rng&)>;

struct Suite {
  const char* name;
  CaseFn run;
};

PadicNumber num(const ContextPtr& ctx, long v) { return PadicNumber::from_int(ctx, v); }

long threshold(const ContextPtr& ctx) { return ctx->comparison_precision(); }

Outcome check(bool ok, json data, const std::string& what) { return {ok, std::move(data), ok ? "" : what}; }

Outcome ring_axioms(const ContextPtr& ctx, Rng& rng) {
  const auto a = gen::integral(ctx, rng, static_cast<int>(rng.uniform(0, 3)));
  const auto b = gen::unit(ctx, rng);
  const auto c = gen::integral(ctx, rng);
  const long t = threshold(ctx);
  bool ok = agrees_to(a * (b + c), a * b + a * c, t) == Tristate::yes;
  ok = ok && agrees_to((a + b) - b, a, t) == Tristate::yes;
  ok = ok && agrees_to(b * b.inverse(), num(ctx, 1), t) == Tristate::yes;
  return check(ok, {{"a", to_json(a)}, {"b", to_json(b)}, {"c", to_json(c)}}, "ring identity failed");
}

Outcome valuation_multiplicative(const ContextPtr& ctx, Rng& rng) {
  const auto a = gen::unit(ctx, rng) * PadicNumber::power_of_p(ctx, rng.uniform(-5, 5));
  const auto b = gen::unit(ctx, rng) * PadicNumber::power_of_p(ctx, rng.uniform(-5, 5));
  return check((a * b).valuation() == a.valuation() + b.valuation(), {{"a", to_json(a)}, {"b", to_json(b)}},
               "val(ab) != val(a) + val(b)");
}

Outcome orbit_bounds(const ContextPtr& ctx, Rng& rng) {
  const int m = static_cast<int>(rng.uniform(1, 3));
  auto f = gen::series(ctx, rng, m, static_cast<int>(rng.uniform(0, 24)));
  const BoundsReport r = check_bounds(f, m);
  std::string detail;
  if (const BoundEntry* e = r.first_violation())
    detail = to_string(e->family) + " index " + std::to_string(e->index);
  return {r.ok, {{"m", m}, {"f", to_json(f)}}, detail};
}

Outcome isometry(const ContextPtr& ctx, Rng& rng) {
  const int m = static_cast<int>(rng.uniform(1, 3));
  auto f = gen::series(ctx, rng, m, static_cast<int>(rng.uniform(0, 10)));
  const Matrix2 g = gen::congruence(ctx, rng, m);
  const auto chi = gen::character(ctx, rng);
  const auto out = act(IwahoriElement(g, GroupLevel::G(m)), f, chi);
  return check(val_C(out) == val_C(f), {{"f", to_json(f)}, {"g", to_json(g)}, {"chi", to_json(chi)}},
               "val_C(g f) = " + val_C(out).to_string() + ", val_C(f) = " + val_C(f).to_string());
}

Outcome series_associativity(const ContextPtr& ctx, Rng& rng) {
  const int m = static_cast<int>(rng.uniform(0, 2));
  auto f = gen::series(ctx, rng, m, static_cast<int>(rng.uniform(0, 8)));
  const IwahoriElement g(gen::congruence(ctx, rng, m), GroupLevel::G(m));
  const IwahoriElement h(gen::congruence(ctx, rng, m), GroupLevel::G(m));
  const auto chi = gen::character(ctx, rng);
  const Tristate t = agree(act(g * h, f, chi), act(g, act(h, f, chi), chi));
  return check(t == Tristate::yes,
               {{"f", to_json(f)}, {"g", to_json(g.matrix())}, {"h", to_json(h.matrix())}, {"chi", to_json(chi)}},
               "act(gh, f) and act(g, act(h, f)) differ: " + std::string(to_string(t)));
}

Outcome evaluation(const ContextPtr& ctx, Rng& rng) {
  const int m = static_cast<int>(rng.uniform(1, 3));
  auto f = gen::series(ctx, rng, m, static_cast<int>(rng.uniform(0, 8)));
  const Matrix2 g = gen::congruence(ctx, rng, m);
  const auto chi = gen::character(ctx, rng);
  const auto out = act(IwahoriElement(g, GroupLevel::G(m)), f, chi);
  const auto z = gen::integral(ctx, rng, m);
  const auto den = g.d - g.b * z;
  const auto expect = evaluate(f, (g.a * z - g.c) / den) * den.pow(chi.k - 2);
  return check(agrees_to(evaluate(out, z), expect, threshold(ctx)) == Tristate::yes,
               {{"f", to_json(f)}, {"g", to_json(g)}, {"z", to_json(z)}, {"chi", to_json(chi)}},
               "(g f)(z) differs from the closed form");
}

Outcome tail_growth(const ContextPtr& ctx, Rng& rng) {
  const int m = static_cast<int>(rng.uniform(1, 3));
  auto f = gen::series(ctx, rng, m, static_cast<int>(rng.uniform(0, 16)));
  const Valuation floor = min(stored_val_C(f), f.tail_bound());
  for (OrbitFamily family : kOrbitFamilies) {
    const auto e = orbit_expansion(family, f, m);
    for (std::size_t v = 0; v < e.coefficients.size(); ++v) {
      const Valuation lhs = val_C(e.coefficients[v]) + Valuation(static_cast<long>(m * v));
      if (lhs < floor)
        return {false, {{"m", m}, {"f", to_json(f)}}, to_string(family) + " index " + std::to_string(v)};
      if (family == OrbitFamily::translation && static_cast<int>(v) > f.degree() &&
          !e.coefficients[v].coefficients().empty())
        return {false, {{"m", m}, {"f", to_json(f)}}, "translation term beyond the degree"};
    }
  }
  return {true, {}, ""};
}

Outcome refine_values(const ContextPtr& ctx, Rng& rng) {
  const int level = static_cast<int>(rng.uniform(0, 2));
  auto f = gen::piecewise(ctx, rng, level, 3);
  auto g = refine(f, level + 1);
  const auto z = gen::integral(ctx, rng);
  return check(agrees_to(f.evaluate(z), g.evaluate(z), threshold(ctx)) == Tristate::yes,
               {{"f", to_json(f)}, {"z", to_json(z)}}, "refinement changed a value");
}

Outcome membership_routes(const ContextPtr& ctx, Rng& rng) {
  const int m = static_cast<int>(rng.uniform(0, 2));
  const int level = m + static_cast<int>(rng.uniform(1, 2));
  const int deg = static_cast<int>(rng.uniform(0, 3));
  PiecewiseFunction f = rng.coin() ? refine(PiecewiseFunction::global(gen::series(ctx, rng, 0, deg)), level)
                                   : gen::piecewise(ctx, rng, level, deg);
  const AnalyticVerdict v = is_analytic_vector(f, m);
  return check(v.status == v.orbit, {{"m", m}, {"f", to_json(f)}},
               "routes disagree: " + std::string(to_string(v.status)) + " vs " + std::string(to_string(v.orbit)));
}

Outcome piecewise_associativity(const ContextPtr& ctx, Rng& rng) {
  auto f = gen::piecewise(ctx, rng, static_cast<int>(rng.uniform(0, 1)), 3);
  const IwahoriElement g(gen::iwahori(ctx, rng));
  const IwahoriElement h(gen::iwahori(ctx, rng));
  const auto chi = gen::character(ctx, rng);
  const Tristate t = agree(act(g * h, f, chi), act(g, act(h, f, chi), chi));
  return check(t == Tristate::yes, {{"f", to_json(f)}, {"g", to_json(g.matrix())}, {"h", to_json(h.matrix())}},
               "piecewise action is not associative: " + std::string(to_string(t)));
}

Outcome algebraic_degree(const ContextPtr& ctx, Rng& rng) {
  const auto chi = gen::character(ctx, rng);
  auto f = LocallyAlgebraicFunction(gen::piecewise(ctx, rng, 1, chi.k - 2), chi.k);
  const IwahoriElement g(gen::iwahori(ctx, rng));
  const auto out = act_locally_algebraic(g, f, chi);
  return check(out.function().max_degree() <= chi.k - 2, {{"f", to_json(f.function())}, {"g", to_json(g.matrix())}},
               "degree grew beyond k - 2");
}

Outcome cokernel_equivalence(const ContextPtr& ctx, Rng& rng) {
  const CokernelParams params{validate_crystalline(num(ctx, 10), num(ctx, 5), 3), 1, 2};
  const auto a = gen::cokernel_element(ctx, rng, params);
  const auto b = gen::cokernel_element(ctx, rng, params);
  const auto c = gen::cokernel_element(ctx, rng, params);
  const Tristate ab = cokernel_equal(a, b), ba = cokernel_equal(b, a);
  const Tristate bc = cokernel_equal(b, c), ac = cokernel_equal(a, c);
  std::string bad;
  if (cokernel_equal(a, a) != Tristate::yes) bad = "not reflexive";
  if (ab != ba) bad = "not symmetric";
  if (ab == Tristate::yes && bc == Tristate::yes && ac != Tristate::yes) bad = "not transitive";
  return {bad.empty(), {{"a", to_json(a)}, {"b", to_json(b)}, {"c", to_json(c)}}, bad};
}

Outcome weight_additivity(const ContextPtr& ctx, Rng& rng) {
  const auto a = gen::continuous_character(ctx, rng);
  const auto b = gen::continuous_character(ctx, rng);
  return check(agrees_to(weight(a * b), weight(a) + weight(b), threshold(ctx)) == Tristate::yes,
               {{"a", to_json(a)}, {"b", to_json(b)}}, "weight is not additive");
}

Outcome filtration(const ContextPtr& ctx, Rng& rng) {
  const auto chi = gen::character(ctx, rng);
  const FilteredPhiModule D(chi.alpha, chi.beta, chi.k);
  bool ok = (chi.alpha.valuation() + chi.beta.valuation()) == Valuation(chi.k - 1);
  for (int i = -chi.k - 2; i <= 2; ++i) ok = ok && fil_dimension(D, i).dimension >= fil_dimension(D, i + 1).dimension;
  ok = ok && hodge_tate_weights(D) == std::vector<int>{0, chi.k - 1};
  const auto s = gen::unit(ctx, rng);
  const auto c1 = gen::integral(ctx, rng), c2 = gen::integral(ctx, rng);
  const auto [x1, x2] = phi_action(D, s * c1, s * c2);
  const auto [y1, y2] = phi_action(D, c1, c2);
  ok = ok && agrees_to(x1, s * y1, threshold(ctx) - chi.k) == Tristate::yes &&
       agrees_to(x2, s * y2, threshold(ctx) - chi.k) == Tristate::yes;
  return check(ok, {{"chi", to_json(chi)}}, "filtration or phi property failed");
}

const std::vector<Suite>& suites() {
  static const std::vector<Suite> all = {
      {"padic.ring_axioms", ring_axioms},
      {"padic.valuation_multiplicative", valuation_multiplicative},
      {"tate.orbit_bounds", orbit_bounds},
      {"tate.isometry", isometry},
      {"tate.associativity", series_associativity},
      {"tate.evaluation", evaluation},
      {"tate.tail_growth", tail_growth},
      {"functions.refine", refine_values},
      {"functions.membership_routes", membership_routes},
      {"actions.piecewise_associativity", piecewise_associativity},
      {"actions.algebraic_degree", algebraic_degree},
      {"cokernel.equivalence", cokernel_equivalence},
      {"galois.weight_additivity", weight_additivity},
      {"galois.filtration", filtration},
  };
  return all;
}

}  // namespace

std::vector<std::string> selftest_suites() {
  std::vector<std::string> out;
  for (const auto& s : suites()) out.emplace_back(s.name);
  return out;
}

json run_selftest(const SelftestConfig& config) {
  json report;
  report["seed"] = config.seed;
  report["count"] = config.count;
  report["context"] = to_json(*config.ctx);
  json results = json::array();
  bool all_ok = true;
  for (const auto& suite : suites()) {
    if (!config.only.empty() &&
        std::find(config.only.begin(), config.only.end(), suite.name) == config.only.end())
      continue;
    int passed = 0;
    json first;
    for (int i = 0; i < config.count; ++i) {
      Rng rng = Rng::for_case(config.seed, suite.name, static_cast<std::uint64_t>(i));
      Outcome o;
      try {
        o = suite.run(config.ctx, rng);
      } catch (const std::exception& e) {
        o = {false, json::object(), std::string("exception: ") + e.what()};
      }
      if (o.ok) {
        ++passed;
      } else if (first.is_null()) {
        first = {{"index", i}, {"detail", o.detail}, {"case", o.data}};
      }
    }
    json r = {{"name", suite.name}, {"cases", config.count}, {"passed", passed}, {"failed", config.count - passed}};
    if (!first.is_null()) r["first_failure"] = first;
    all_ok = all_ok && passed == config.count;
    results.push_back(r);
  }
  report["suites"] = results;
  report["ok"] = all_ok;
  return report;
}

}  // namespace rigidan
