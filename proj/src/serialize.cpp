#include "rigidan/serialize.hpp"

#include "rigidan/errors.hpp"

namespace rigidan {

namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object()) throw FormatError(std::string("expected an object holding '") + key + "'");
  auto it = j.find(key);
  if (it == j.end()) throw FormatError(std::string("missing field '") + key + "'");
  return *it;
}

long integer(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number_integer()) throw FormatError(std::string("field '") + key + "' must be an integer");
  return v.get<long>();
}

std::string text(const json& j, const char* what) {
  if (!j.is_string()) throw FormatError(std::string(what) + " must be a string");
  return j.get<std::string>();
}

ParameterPolicy policy_from(const std::string& s) {
  if (s == "strict") return ParameterPolicy::strict;
  if (s == "structural") return ParameterPolicy::structural;
  throw FormatError("unknown parameter policy '" + s + "'");
}

CharacterSide side_from(const std::string& s) {
  if (s == "alpha") return CharacterSide::alpha;
  if (s == "beta") return CharacterSide::beta;
  throw FormatError("unknown character side '" + s + "'");
}

}  // namespace

json to_json(const PadicContext& ctx) {
  return {{"p", ctx.prime()}, {"precision", ctx.precision()}, {"degree", ctx.degree()}, {"slack", ctx.slack()}};
}

ContextPtr context_from_json(const json& j) {
  return PadicContext::create(integer(j, "p"), static_cast<int>(integer(j, "precision")),
                              static_cast<int>(integer(j, "degree")), static_cast<int>(integer(j, "slack")));
}

namespace {

// Balanced representative: -10 rather than p^N - 10.
std::string decimal(const PadicNumber& x) {
  if (x.is_zero()) return "0";
  const auto& ctx = x.context();
  const long v = x.valuation().value();
  const mpz_class modulus = ctx->pow_uncached(static_cast<unsigned long>(x.relative_precision()));
  mpz_class u = x.unit();
  if (2 * u > modulus) u -= modulus;
  if (v >= 0) return mpz_class(u * ctx->pow_uncached(static_cast<unsigned long>(v))).get_str();
  return u.get_str() + "/" + ctx->pow_uncached(static_cast<unsigned long>(-v)).get_str();
}

}  // namespace

json to_json(const PadicNumber& x) {
  if (x.is_exact_zero()) return "0";
  if (!x.is_zero() && x.relative_precision() >= x.context()->precision()) return decimal(x);
  return {{"value", decimal(x)}, {"precision", x.absolute_precision().value()}};
}

PadicNumber padic_from_json(const ContextPtr& ctx, const json& j) {
  if (j.is_number_integer()) return PadicNumber::from_int(ctx, j.get<long>());
  if (j.is_string()) return PadicNumber::parse(ctx, j.get<std::string>());
  if (j.is_object()) {
    const long a = integer(j, "precision");
    const PadicNumber v = PadicNumber::parse(ctx, text(field(j, "value"), "p-adic value"));
    if (v.is_zero()) return PadicNumber::zero_to(ctx, a);
    return v.with_absolute_precision(a);
  }
  throw FormatError("p-adic number must be a string, integer or {value, precision}");
}

json to_json(const Valuation& v) {
  if (v.is_infinite()) return "inf";
  return v.value();
}

Valuation valuation_from_json(const json& j) {
  if (j.is_string() && j.get<std::string>() == "inf") return Valuation::infinity();
  if (j.is_number_integer()) return Valuation(j.get<long>());
  throw FormatError("valuation must be an integer or \"inf\"");
}

json to_json(const TateSeries& f) {
  json c = json::array();
  for (const auto& a : f.coefficients()) c.push_back(to_json(a));
  return {{"level", f.level()}, {"coefficients", c}, {"tail_bound", to_json(f.tail_bound())}};
}

TateSeries series_from_json(const ContextPtr& ctx, const json& j) {
  const json& c = field(j, "coefficients");
  if (!c.is_array()) throw FormatError("coefficients must be an array");
  std::vector<PadicNumber> coeffs;
  for (const auto& a : c) coeffs.push_back(padic_from_json(ctx, a));
  Valuation tail = Valuation::infinity();
  if (j.contains("tail_bound")) tail = valuation_from_json(j["tail_bound"]);
  return TateSeries(ctx, static_cast<int>(integer(j, "level")), std::move(coeffs), tail);
}

json to_json(const PiecewiseFunction& f) {
  json leaves = json::array();
  for (const auto& l : f.leaves())
    leaves.push_back({{"center", l.center.get_str()}, {"level", l.level}, {"series", to_json(l.series)}});
  return {{"leaves", leaves}};
}

PiecewiseFunction function_from_json(const ContextPtr& ctx, const json& j) {
  if (j.is_object() && j.contains("coefficients")) return PiecewiseFunction::global(series_from_json(ctx, j));
  const json& ls = field(j, "leaves");
  if (!ls.is_array()) throw FormatError("leaves must be an array");
  std::vector<Leaf> leaves;
  for (const auto& l : ls) {
    mpz_class center;
    if (center.set_str(text(field(l, "center"), "leaf center"), 10) != 0) throw FormatError("malformed leaf center");
    leaves.push_back({center, static_cast<int>(integer(l, "level")), series_from_json(ctx, field(l, "series"))});
  }
  return PiecewiseFunction(ctx, std::move(leaves));
}

json to_json(const Matrix2& g) {
  return {{"a", to_json(g.a)}, {"b", to_json(g.b)}, {"c", to_json(g.c)}, {"d", to_json(g.d)}};
}

Matrix2 matrix_from_json(const ContextPtr& ctx, const json& j) {
  return {padic_from_json(ctx, field(j, "a")), padic_from_json(ctx, field(j, "b")),
          padic_from_json(ctx, field(j, "c")), padic_from_json(ctx, field(j, "d"))};
}

json to_json(const InductionCharacter& chi) {
  return {{"alpha", to_json(chi.alpha)},
          {"beta", to_json(chi.beta)},
          {"k", chi.k},
          {"policy", to_string(chi.policy)},
          {"side", to_string(chi.which)}};
}

InductionCharacter character_from_json(const ContextPtr& ctx, const json& j) {
  const ParameterPolicy policy =
      j.contains("policy") ? policy_from(text(j["policy"], "policy")) : ParameterPolicy::strict;
  const CharacterSide side = j.contains("side") ? side_from(text(j["side"], "side")) : CharacterSide::alpha;
  return validate_crystalline(padic_from_json(ctx, field(j, "alpha")), padic_from_json(ctx, field(j, "beta")),
                              static_cast<int>(integer(j, "k")), policy, side);
}

json to_json(const ContinuousCharacter& d) {
  return {{"value_at_p", to_json(d.value_at_p())},
          {"tame_exponent", d.tame_exponent()},
          {"wild_value", to_json(d.wild_value())}};
}

ContinuousCharacter continuous_character_from_json(const ContextPtr& ctx, const json& j) {
  return {padic_from_json(ctx, field(j, "value_at_p")), integer(j, "tame_exponent"),
          padic_from_json(ctx, field(j, "wild_value"))};
}

json to_json(const TriangulineParam& s) {
  json L = "inf";
  if (s.scriptL) L = *s.scriptL;
  return {{"delta1", to_json(s.delta1)}, {"delta2", to_json(s.delta2)}, {"scriptL", L}};
}

TriangulineParam trianguline_from_json(const ContextPtr& ctx, const json& j) {
  TriangulineParam s{continuous_character_from_json(ctx, field(j, "delta1")),
                     continuous_character_from_json(ctx, field(j, "delta2")), std::nullopt};
  if (j.contains("scriptL")) {
    const json& L = j["scriptL"];
    if (L.is_array()) {
      std::vector<std::string> coords;
      for (const auto& c : L) coords.push_back(c.is_string() ? c.get<std::string>() : c.dump());
      s.scriptL = std::move(coords);
    } else if (!(L.is_string() && L.get<std::string>() == "inf")) {
      throw FormatError("scriptL must be \"inf\" or an array of coordinates");
    }
  }
  return s;
}

json to_json(const WeylCellVector& F) {
  return {{"identity", to_json(F[Cell::identity])}, {"w0", to_json(F[Cell::w0])}};
}

WeylCellVector cells_from_json(const ContextPtr& ctx, const json& j) {
  return WeylCellVector{{function_from_json(ctx, field(j, "identity")), function_from_json(ctx, field(j, "w0"))}};
}

json to_json(const CokernelElement& c) {
  return {{"character", to_json(c.params.chi)},
          {"n", c.params.n},
          {"m", c.params.m},
          {"alpha", to_json(c.alpha_part.F)},
          {"beta", to_json(c.beta_part.F)}};
}

CokernelElement cokernel_from_json(const ContextPtr& ctx, const json& j) {
  const CokernelParams params{character_from_json(ctx, field(j, "character")), static_cast<int>(integer(j, "n")),
                              static_cast<int>(integer(j, "m"))};
  return CokernelElement::make(cells_from_json(ctx, field(j, "alpha")), cells_from_json(ctx, field(j, "beta")),
                               params);
}

json make_file(const PadicContext& ctx, const std::string& kind, json payload) {
  return {{"context", to_json(ctx)}, {kind, std::move(payload)}};
}

DataFile parse_file(const std::string& text_in, const std::string& kind, const ContextPtr& fallback) {
  json j;
  try {
    j = json::parse(text_in);
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw FormatError("top level must be an object");
  if (!j.contains(kind)) throw FormatError("file holds no '" + kind + "' entry");
  ContextPtr ctx = j.contains("context") ? context_from_json(j["context"]) : fallback;
  return {ctx, j[kind]};
}

std::string canonical(const json& j) { return j.dump(2) + "\n"; }

}  // namespace rigidan
