#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "nodal/specfun.hpp"

namespace nodal {
namespace {

constexpr double kLn10 = std::numbers::ln10;
constexpr double kNominalRelError = 1e-14;
constexpr double kAsymptoticFrom = 700.0;
constexpr double kCombinedTailFrom = 40.0;

bool supported_order(double s) { return s == -0.5 || s == 0.0 || s == 0.5 || s == 1.0; }

// Lentz evaluation of the continued fraction for Gamma(s, x) e^x x^-s.
// Returns ln of that factor.
double ln_continued_fraction(double s, double x) {
  constexpr double tiny = 1e-300;
  double b = x + 1.0 - s;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 100000; ++i) {
    const double an = -i * (i - s);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-16) break;
  }
  return std::log(h);
}

// x^(s-1) e^-x sum_k (s-1)...(s-k) x^-k, truncated where terms stop
// shrinking. The series envelopes its remainder for s < 1.
GammaEnclosure asymptotic(double s, double x) {
  double sum = 1.0;
  double term = 1.0;
  double err = 0.0;
  for (int k = 1;; ++k) {
    const double next = term * (s - k) / x;
    if (std::fabs(next) >= std::fabs(term) || std::fabs(next) < 1e-17 * std::fabs(sum)) {
      err = std::fabs(next);
      break;
    }
    sum += next;
    term = next;
  }
  const double ln_value = (s - 1.0) * std::log(x) - x + std::log(sum);
  return {LogMagnitude::from_ln(ln_value), err / sum};
}

LogMagnitude small_x(double s, double x) {
  if (s == 0.5) return LogMagnitude::from_double(std::sqrt(std::numbers::pi) * std::erfc(std::sqrt(x)));
  if (s == 0.0) return LogMagnitude::from_double(-std::expint(-x));
  // Gamma(-1/2, x) = 2 x^-1/2 e^-x - 2 Gamma(1/2, x)
  const double g_half = std::sqrt(std::numbers::pi) * std::erfc(std::sqrt(x));
  return LogMagnitude::from_double(2.0 * std::exp(-x) / std::sqrt(x) - 2.0 * g_half);
}

}  // namespace

GammaEnclosure upper_gamma_enclosure(double s, double x) {
  if (!supported_order(s)) throw RangeError("log_upper_gamma: s must be one of -1/2, 0, 1/2, 1");
  if (!std::isfinite(x) || x < 0.0) throw RangeError("log_upper_gamma: x must be finite and >= 0");
  if (s == 1.0) return {LogMagnitude::from_ln(-x), 0.0};
  if (x == 0.0) {
    if (s > 0.0) return {LogMagnitude::from_double(std::tgamma(s)), 0.0};
    return {LogMagnitude::from_log10(std::numeric_limits<double>::infinity()), 0.0};
  }
  if (x < 1.0) return {small_x(s, x), kNominalRelError};
  if (x <= kAsymptoticFrom) {
    return {LogMagnitude::from_ln(s * std::log(x) - x + ln_continued_fraction(s, x)), kNominalRelError};
  }
  return asymptotic(s, x);
}

LogMagnitude log_upper_gamma(double s, double x) { return upper_gamma_enclosure(s, x).value; }

LogMagnitude gaussian_deficit_tail(double a) {
  if (!(a >= 0.0) || !std::isfinite(a)) throw RangeError("gaussian_deficit_tail: a must be finite and >= 0");
  if (a == 0.0) return LogMagnitude::from_double(1.0);
  const double pref = 2.0 / std::sqrt(2.0 * std::numbers::pi);
  const double t = 0.5 * a * a;

  if (t < kCombinedTailFrom) {
    const LogMagnitude half = log_upper_gamma(0.5, t).scaled(1.0 / std::numbers::sqrt2);
    const LogMagnitude zero = log_upper_gamma(0.0, t).scaled(0.5 * a);
    LogMagnitude v = (half - zero).scaled(pref);
    if (v.log10_abs() > 0.0) v = LogMagnitude::from_double(1.0);
    return v;
  }

  // Both gammas share the leading term t^-1/2 e^-t / sqrt2, which cancels.
  // Sum the difference of their asymptotic coefficients directly.
  double u = 1.0;  // (1/2-1)...(1/2-k) t^-k
  double v = 1.0;  // (0-1)...(0-k) t^-k
  double sum = 0.0;
  double prev = std::numeric_limits<double>::infinity();
  for (int k = 1;; ++k) {
    u *= (0.5 - k) / t;
    v *= (0.0 - k) / t;
    const double term = u - v;
    if (std::fabs(term) >= std::fabs(prev) || std::fabs(term) < 1e-17 * std::fabs(sum)) break;
    sum += term;
    prev = term;
  }
  const double ln_value = std::log(pref / std::numbers::sqrt2) - 0.5 * std::log(t) - t + std::log(sum);
  return LogMagnitude::from_ln(ln_value);
}

LogMagnitude gaussian_deficit_tail_appendix(double a) {
  if (!(a >= 0.0) || !std::isfinite(a)) throw RangeError("gaussian_deficit_tail_appendix: a must be finite and >= 0");
  const double t = 0.5 * a * a;
  const LogMagnitude half = log_upper_gamma(0.5, t).scaled(1.0 / std::numbers::sqrt2);
  if (a == 0.0) return half.scaled(2.0 / std::sqrt(2.0 * std::numbers::pi));
  const LogMagnitude minus_half = log_upper_gamma(-0.5, t).scaled(0.5 * a);
  return (half - minus_half).scaled(2.0 / std::sqrt(2.0 * std::numbers::pi));
}

}  // namespace nodal
