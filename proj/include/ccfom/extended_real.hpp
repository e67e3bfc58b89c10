#pragma once

#include <cmath>
#include <limits>
#include <string>

#include "ccfom/error.hpp"

namespace ccfom {

/// A value in R ∪ {+∞, −∞}. Infinities are explicit states, never produced by
/// accident from floating-point overflow: constructing a finite value from a
/// non-finite double throws.
class ExtendedReal {
 public:
  enum class Kind { finite, plus_infinity, minus_infinity };

  static ExtendedReal finite(double v) {
    require(std::isfinite(v), ErrorKind::invalid_argument, "ExtendedReal::finite given a non-finite value");
    return ExtendedReal(Kind::finite, v);
  }
  static ExtendedReal plus_infinity() { return ExtendedReal(Kind::plus_infinity, 0.0); }
  static ExtendedReal minus_infinity() { return ExtendedReal(Kind::minus_infinity, 0.0); }

  Kind kind() const noexcept { return kind_; }
  bool is_finite() const noexcept { return kind_ == Kind::finite; }
  bool is_plus_infinity() const noexcept { return kind_ == Kind::plus_infinity; }
  bool is_minus_infinity() const noexcept { return kind_ == Kind::minus_infinity; }

  double value() const {
    require(is_finite(), ErrorKind::invalid_argument, "value() on an infinite ExtendedReal");
    return value_;
  }

  // ±inf as an IEEE double, for output and plotting.
  double to_double() const noexcept {
    switch (kind_) {
      case Kind::plus_infinity: return std::numeric_limits<double>::infinity();
      case Kind::minus_infinity: return -std::numeric_limits<double>::infinity();
      default: return value_;
    }
  }

  ExtendedReal operator-() const noexcept {
    switch (kind_) {
      case Kind::plus_infinity: return minus_infinity();
      case Kind::minus_infinity: return plus_infinity();
      default: return ExtendedReal(Kind::finite, -value_);
    }
  }

  friend ExtendedReal operator+(ExtendedReal a, double b) {
    if (!a.is_finite()) return a;
    return finite(a.value_ + b);
  }
  friend ExtendedReal operator+(double a, ExtendedReal b) { return b + a; }
  friend ExtendedReal operator-(ExtendedReal a, double b) { return a + (-b); }

  friend ExtendedReal operator+(ExtendedReal a, ExtendedReal b) {
    if (a.is_finite()) return b + a.value_;
    if (b.is_finite() || a.kind_ == b.kind_) return a;
    fail(ErrorKind::invalid_argument, "+inf + -inf is undefined");
  }

  friend bool operator==(const ExtendedReal& a, const ExtendedReal& b) noexcept {
    return a.kind_ == b.kind_ && a.value_ == b.value_;
  }

 private:
  ExtendedReal(Kind kind, double v) : kind_(kind), value_(v) {}

  Kind kind_;
  double value_;
};

inline std::string to_string(const ExtendedReal& v) {
  if (v.is_plus_infinity()) return "+inf";
  if (v.is_minus_infinity()) return "-inf";
  return std::to_string(v.value());
}

}  // namespace ccfom
