#pragma once

#include <stdexcept>

#include "nodal/log_magnitude.hpp"

namespace nodal {

/// Thrown when an argument lies outside the documented accuracy envelope.
struct RangeError : std::range_error {
  using std::range_error::range_error;
};

inline constexpr int kBesselMaxOrder = 512;
inline constexpr double kBesselMaxArg = 100.0;

/// J_n(r). Absolute error below 1e-12 for n <= 512, 0 <= r <= 100.
double bessel_j(int n, double r);

/// J_n'(r) from the recurrence (J_{n-1} - J_{n+1}) / 2; J_0' is -J_1.
double bessel_j_deriv(int n, double r);

/// J_n''(r) from Bessel's equation; r must be positive.
double bessel_j_deriv2(int n, double r);

/// d/dr (J_n(r) / r); r must be positive.
double bessel_j_over_r_deriv(int n, double r);

/// Fills out[0..nmax] with J_0(r)..J_nmax(r) by one backward recurrence.
/// No envelope check; nmax up to a few thousand is fine.
void bessel_j_sequence(int nmax, double r, double* out);

/// Upper incomplete gamma with an explicit relative error estimate. For
/// large x the estimate is the first omitted term of the enveloping
/// asymptotic series, so it bounds the truncation error.
struct GammaEnclosure {
  LogMagnitude value;
  double rel_error = 0.0;
};

/// Gamma(s, x) for s in {-1/2, 0, 1/2, 1}, x >= 0.
GammaEnclosure upper_gamma_enclosure(double s, double x);
LogMagnitude log_upper_gamma(double s, double x);

/// 2/sqrt(2 pi) * integral_a^inf (1 - a/x) exp(-x^2/2) dx.
LogMagnitude gaussian_deficit_tail(double a);

/// The variant with Gamma(-1/2, .) in place of Gamma(0, .) used by some
/// published scripts. It overestimates the integral for large a; kept for
/// comparison only.
LogMagnitude gaussian_deficit_tail_appendix(double a);

}  // namespace nodal
