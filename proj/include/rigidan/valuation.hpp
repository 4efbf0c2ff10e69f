#pragma once

#include <compare>
#include <climits>
#include <cstdint>
#include <string>

namespace rigidan {

// An integer or +infinity. Arithmetic saturates at infinity.
class Valuation {
 public:
  constexpr Valuation() = default;  // +infinity
  constexpr Valuation(long v) : value_(v), finite_(true) {}  // NOLINT(google-explicit-constructor)

  static constexpr Valuation infinity() { return Valuation(); }

  constexpr bool is_infinite() const { return !finite_; }
  constexpr bool is_finite() const { return finite_; }
  long value() const;

  friend constexpr bool operator==(const Valuation& a, const Valuation& b) {
    return a.finite_ == b.finite_ && (!a.finite_ || a.value_ == b.value_);
  }
  friend constexpr std::strong_ordering operator<=>(const Valuation& a, const Valuation& b) {
    if (!a.finite_ || !b.finite_) return b.finite_ <=> a.finite_;
    return a.value_ <=> b.value_;
  }

  friend constexpr Valuation operator+(const Valuation& a, const Valuation& b) {
    if (!a.finite_ || !b.finite_) return infinity();
    return Valuation(a.value_ + b.value_);
  }
  friend constexpr Valuation operator-(const Valuation& a, long b) {
    if (!a.finite_) return infinity();
    return Valuation(a.value_ - b);
  }
  // k >= 0; 0 * infinity is taken to be 0.
  friend constexpr Valuation operator*(const Valuation& a, long k) {
    if (k == 0) return Valuation(0);
    if (!a.finite_) return infinity();
    return Valuation(a.value_ * k);
  }
  Valuation& operator+=(const Valuation& other) { return *this = *this + other; }

  std::string to_string() const;

 private:
  long value_ = 0;
  bool finite_ = false;
};

inline Valuation min(const Valuation& a, const Valuation& b) { return a < b ? a : b; }

}  // namespace rigidan
