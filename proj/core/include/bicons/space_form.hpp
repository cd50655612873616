#pragma once

#include <cmath>
#include <limits>
#include <string>

namespace bicons {

/// Sectional curvature of the ambient space form N^3(eps); always -1, 0 or +1.
class SpaceFormSign {
 public:
  /// Throws DomainError for anything other than -1, 0, +1.
  explicit SpaceFormSign(int eps);

  static SpaceFormSign hyperbolic() { return SpaceFormSign(-1); }
  static SpaceFormSign flat() { return SpaceFormSign(0); }
  static SpaceFormSign spherical() { return SpaceFormSign(1); }

  int value() const { return eps_; }
  double as_double() const { return static_cast<double>(eps_); }
  std::string ambient_name() const;

  friend bool operator==(SpaceFormSign a, SpaceFormSign b) { return a.eps_ == b.eps_; }

 private:
  int eps_;
};

/// A real number or +infinity, tagged explicitly instead of using a sentinel.
class ExtendedReal {
 public:
  static ExtendedReal finite(double v) { return ExtendedReal(v, false); }
  static ExtendedReal plus_infinity() { return ExtendedReal(0.0, true); }

  bool is_infinite() const { return infinite_; }
  bool is_finite() const { return !infinite_; }
  /// Throws NotApplicable when infinite.
  double value() const;
  /// The value as a double, mapping the infinite case to +inf.
  double as_double() const {
    return infinite_ ? std::numeric_limits<double>::infinity() : value_;
  }

 private:
  ExtendedReal(double v, bool inf) : value_(v), infinite_(inf) {}
  double value_;
  bool infinite_;
};

}  // namespace bicons
