#pragma once

#include <cmath>
#include <limits>
#include <string>

namespace nodal {

/// A signed real stored as (sign, log10 |value|).
///
/// Probabilities such as 10^-4500 sit far below the smallest double, so the
/// bound pipelines carry every extreme quantity in this form. A value with
/// sign 0 is exactly zero and its logarithm is -infinity.
class LogMagnitude {
 public:
  constexpr LogMagnitude() = default;

  static LogMagnitude zero() { return {}; }
  static LogMagnitude from_log10(double log10_abs, int sign = 1);
  static LogMagnitude from_ln(double ln_abs, int sign = 1);
  static LogMagnitude from_double(double value);

  int sign() const { return sign_; }
  bool is_zero() const { return sign_ == 0; }
  double log10_abs() const { return log10_; }
  double ln_abs() const;

  /// Plain double; exact when log10_abs lies in [-300, 300], otherwise the
  /// result under- or overflows like ordinary arithmetic would.
  double to_double() const;

  LogMagnitude operator-() const;
  LogMagnitude scaled(double factor) const;

  friend LogMagnitude operator*(const LogMagnitude& a, const LogMagnitude& b);
  friend LogMagnitude operator/(const LogMagnitude& a, const LogMagnitude& b);
  friend LogMagnitude operator+(const LogMagnitude& a, const LogMagnitude& b);
  friend LogMagnitude operator-(const LogMagnitude& a, const LogMagnitude& b);

  friend bool operator==(const LogMagnitude&, const LogMagnitude&) = default;

  /// Total order on the represented reals.
  friend bool operator<(const LogMagnitude& a, const LogMagnitude& b);

  /// "3.2725e-247" style rendering that works below the double range.
  std::string to_scientific(int digits = 5) const;

 private:
  constexpr LogMagnitude(int sign, double log10_abs) : sign_(sign), log10_(log10_abs) {}

  int sign_ = 0;
  double log10_ = -std::numeric_limits<double>::infinity();
};

}  // namespace nodal
