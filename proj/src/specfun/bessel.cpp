#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "nodal/specfun.hpp"

namespace nodal {
namespace {

constexpr double kRescaleAbove = 1e250;
constexpr double kRescaleBy = 1e-250;

void check_envelope(int n, double r) {
  if (n < 0 || n > kBesselMaxOrder || !(r >= 0.0) || r > kBesselMaxArg)
    throw RangeError("bessel_j: (n=" + std::to_string(n) + ", r=" + std::to_string(r) +
                     ") outside n <= 512, 0 <= r <= 100");
}

int miller_start(int nmax, double r) {
  const int mx = std::max(nmax, static_cast<int>(std::ceil(r)));
  int m = mx + 20 + static_cast<int>(std::sqrt(50.0 * mx));
  return m + (m & 1);
}

// Monotone alternating series; used only while r^2/4 <= n + 1.
double series(int n, double r) {
  const double q = 0.25 * r * r;
  double term = std::exp(n * std::log(0.5 * r) - std::lgamma(n + 1.0));
  double sum = term;
  for (int k = 1; k < 200; ++k) {
    term *= -q / (k * static_cast<double>(n + k));
    sum += term;
    if (std::fabs(term) <= 1e-17 * std::fabs(sum)) break;
  }
  return sum;
}

// Backward recurrence normalized by J_0 + 2 sum J_2k = 1. Writes
// J_0..J_nmax into out.
void miller(int nmax, double r, double* out) {
  const int m = miller_start(nmax, r);
  const double two_over_r = 2.0 / r;
  double jp = 0.0;  // J_{k+1}
  double jk = 1e-30;
  double norm = 0.0;
  for (int k = m; k >= 1; --k) {
    const double jm = k * two_over_r * jk - jp;  // J_{k-1}
    jp = jk;
    jk = jm;
    const int idx = k - 1;
    if (idx <= nmax) out[idx] = jm;
    if (idx > 0 && (idx & 1) == 0) norm += 2.0 * jm;
    if (std::fabs(jm) > kRescaleAbove) {
      jp *= kRescaleBy;
      jk *= kRescaleBy;
      norm *= kRescaleBy;
      for (int i = idx; i <= nmax; ++i) out[i] *= kRescaleBy;
    }
  }
  norm += jk;
  const double inv = 1.0 / norm;
  for (int i = 0; i <= nmax; ++i) out[i] *= inv;
}

double j_unchecked(int n, double r) {
  if (r == 0.0) return n == 0 ? 1.0 : 0.0;
  if (0.25 * r * r <= n + 1.0) return series(n, r);
  std::array<double, kBesselMaxOrder + 2> buf;
  miller(n, r, buf.data());
  return buf[n];
}

}  // namespace

double bessel_j(int n, double r) {
  check_envelope(n, r);
  return j_unchecked(n, r);
}

double bessel_j_deriv(int n, double r) {
  check_envelope(n, r);
  if (n == 0) return -j_unchecked(1, r);
  return 0.5 * (j_unchecked(n - 1, r) - j_unchecked(n + 1, r));
}

double bessel_j_deriv2(int n, double r) {
  check_envelope(n, r);
  if (r <= 0.0) throw RangeError("bessel_j_deriv2: r must be positive");
  const double nr = n / r;
  return -bessel_j_deriv(n, r) / r - (1.0 - nr * nr) * j_unchecked(n, r);
}

double bessel_j_over_r_deriv(int n, double r) {
  check_envelope(n, r);
  if (r <= 0.0) throw RangeError("bessel_j_over_r_deriv: r must be positive");
  return bessel_j_deriv(n, r) / r - j_unchecked(n, r) / (r * r);
}

void bessel_j_sequence(int nmax, double r, double* out) {
  if (nmax < 0 || !(r >= 0.0)) throw RangeError("bessel_j_sequence: bad arguments");
  if (r == 0.0) {
    std::fill(out, out + nmax + 1, 0.0);
    out[0] = 1.0;
    return;
  }
  if (r < 1e-20) {
    // Each recurrence step would grow by ~2k/r and overflow past the rescale.
    for (int n = 0; n <= nmax; ++n) out[n] = series(n, r);
    return;
  }
  miller(nmax, r, out);
}

}  // namespace nodal
