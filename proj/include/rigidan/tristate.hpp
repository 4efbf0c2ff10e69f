#pragma once

#include <string_view>

namespace rigidan {

// Outcome of a test decided at finite precision.
enum class Tristate { no, yes, indeterminate };

constexpr Tristate from_bool(bool b) { return b ? Tristate::yes : Tristate::no; }

// Conjunction: a definite "no" dominates, then indeterminate.
constexpr Tristate both(Tristate a, Tristate b) {
  if (a == Tristate::no || b == Tristate::no) return Tristate::no;
  if (a == Tristate::indeterminate || b == Tristate::indeterminate) return Tristate::indeterminate;
  return Tristate::yes;
}

constexpr std::string_view to_string(Tristate t) {
  switch (t) {
    case Tristate::no: return "false";
    case Tristate::yes: return "true";
    default: return "indeterminate";
  }
}

}  // namespace rigidan
