#pragma once

// Canonical JSON forms. Keys are sorted; p-adic numbers are decimal strings
// ("12", "7/25"), or {"value", "precision"} when known to fewer than N
// relative digits. Files wrap one payload as {"context": {...}, kind: payload}.

#include <json.hpp>
#include <string>

#include "rigidan/analytic_vectors.hpp"
#include "rigidan/galois.hpp"

namespace rigidan {

using json = nlohmann::json;

json to_json(const PadicContext& ctx);
ContextPtr context_from_json(const json& j);

json to_json(const PadicNumber& x);
PadicNumber padic_from_json(const ContextPtr& ctx, const json& j);

json to_json(const Valuation& v);
Valuation valuation_from_json(const json& j);

json to_json(const TateSeries& f);
TateSeries series_from_json(const ContextPtr& ctx, const json& j);

json to_json(const PiecewiseFunction& f);
// Accepts {"leaves": [...]} or a bare series object (taken as global).
PiecewiseFunction function_from_json(const ContextPtr& ctx, const json& j);

json to_json(const Matrix2& g);
Matrix2 matrix_from_json(const ContextPtr& ctx, const json& j);

json to_json(const InductionCharacter& chi);
// Validated through validate_crystalline.
InductionCharacter character_from_json(const ContextPtr& ctx, const json& j);

json to_json(const ContinuousCharacter& d);
ContinuousCharacter continuous_character_from_json(const ContextPtr& ctx, const json& j);

json to_json(const TriangulineParam& s);
TriangulineParam trianguline_from_json(const ContextPtr& ctx, const json& j);

json to_json(const WeylCellVector& F);
WeylCellVector cells_from_json(const ContextPtr& ctx, const json& j);

json to_json(const CokernelElement& c);
CokernelElement cokernel_from_json(const ContextPtr& ctx, const json& j);

struct DataFile {
  ContextPtr ctx;
  json payload;
};
json make_file(const PadicContext& ctx, const std::string& kind, json payload);
// Throws FormatError on malformed text or a missing kind. A file without a
// context uses fallback.
DataFile parse_file(const std::string& text, const std::string& kind, const ContextPtr& fallback);

// Two-space indented dump with a trailing newline.
std::string canonical(const json& j);

}  // namespace rigidan
