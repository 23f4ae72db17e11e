#include "nodal/log_magnitude.hpp"

#include <cstdio>
#include <stdexcept>
#include <utility>

namespace nodal {
namespace {

constexpr double kLn10 = 2.302585092994045684;

// log10(1 + 10^d) for d <= 0.
double log10_one_plus(double d) { return std::log1p(std::exp(d * kLn10)) / kLn10; }

// log10(1 - 10^d) for d < 0.
double log10_one_minus(double d) {
  const double x = d * kLn10;
  // expm1 keeps precision when the two magnitudes nearly coincide.
  if (x > -0.693) return std::log(-std::expm1(x)) / kLn10;
  return std::log1p(-std::exp(x)) / kLn10;
}

}  // namespace

LogMagnitude LogMagnitude::from_log10(double log10_abs, int sign) {
  if (sign == 0 || log10_abs == -std::numeric_limits<double>::infinity()) return {};
  if (std::isnan(log10_abs)) throw std::domain_error("LogMagnitude: NaN logarithm");
  return {sign > 0 ? 1 : -1, log10_abs};
}

LogMagnitude LogMagnitude::from_ln(double ln_abs, int sign) { return from_log10(ln_abs / kLn10, sign); }

LogMagnitude LogMagnitude::from_double(double value) {
  if (std::isnan(value)) throw std::domain_error("LogMagnitude: NaN value");
  if (value == 0.0) return {};
  return {value > 0 ? 1 : -1, std::log10(std::fabs(value))};
}

double LogMagnitude::ln_abs() const { return log10_ * kLn10; }

double LogMagnitude::to_double() const {
  if (sign_ == 0) return 0.0;
  return sign_ * std::pow(10.0, log10_);
}

LogMagnitude LogMagnitude::operator-() const { return {-sign_, log10_}; }

LogMagnitude LogMagnitude::scaled(double factor) const { return *this * from_double(factor); }

LogMagnitude operator*(const LogMagnitude& a, const LogMagnitude& b) {
  if (a.is_zero() || b.is_zero()) return {};
  return {a.sign_ * b.sign_, a.log10_ + b.log10_};
}

LogMagnitude operator/(const LogMagnitude& a, const LogMagnitude& b) {
  if (b.is_zero()) throw std::domain_error("LogMagnitude: division by zero");
  if (a.is_zero()) return {};
  return {a.sign_ * b.sign_, a.log10_ - b.log10_};
}

LogMagnitude operator+(const LogMagnitude& a, const LogMagnitude& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const LogMagnitude& big = a.log10_ >= b.log10_ ? a : b;
  const LogMagnitude& small = a.log10_ >= b.log10_ ? b : a;
  const double d = small.log10_ - big.log10_;
  if (big.sign_ == small.sign_) return {big.sign_, big.log10_ + log10_one_plus(d)};
  if (d == 0.0) return {};
  return {big.sign_, big.log10_ + log10_one_minus(d)};
}

LogMagnitude operator-(const LogMagnitude& a, const LogMagnitude& b) { return a + (-b); }

bool operator<(const LogMagnitude& a, const LogMagnitude& b) {
  if (a.sign_ != b.sign_) return a.sign_ < b.sign_;
  if (a.sign_ == 0) return false;
  return a.sign_ > 0 ? a.log10_ < b.log10_ : a.log10_ > b.log10_;
}

std::string LogMagnitude::to_scientific(int digits) const {
  if (sign_ == 0) return "0";
  double exponent = std::floor(log10_);
  double mantissa = std::pow(10.0, log10_ - exponent);
  // Rounding the mantissa can carry into the next decade.
  const double scale = std::pow(10.0, digits - 1);
  if (std::round(mantissa * scale) / scale >= 10.0) {
    mantissa /= 10.0;
    exponent += 1.0;
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s%.*fe%+.0f", sign_ < 0 ? "-" : "", digits - 1, mantissa, exponent);
  return buf;
}

}  // namespace nodal
