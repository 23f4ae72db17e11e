#include <cmath>
#include <numbers>
#include <vector>

#include "nodal/kernels.hpp"
#include "nodal/specfun.hpp"

namespace nodal::kernels::scalar {

void bessel_table(const double* r, std::size_t count, int nmax, double* table) {
  std::vector<double> seq(nmax + 1);
  for (std::size_t i = 0; i < count; ++i) {
    bessel_j_sequence(nmax, r[i], seq.data());
    for (int n = 0; n <= nmax; ++n) table[n * count + i] = seq[n];
  }
}

void harmonic_sum(const HarmonicArgs& a, double* out) {
  for (std::size_t i = 0; i < a.count; ++i) {
    const double c1 = a.cos1[i];
    const double s1 = a.sin1[i];
    const double* t = a.table + a.col[i];
    double c = c1, s = s1;
    double acc = 0.0;
    for (int n = 1; n <= a.nmax; ++n) {
      acc += (a.xi[n] * c + a.eta[n] * s) * t[n * a.stride];
      const double cn = c * c1 - s * s1;
      s = s * c1 + c * s1;
      c = cn;
    }
    out[i] = a.xi0 * t[0] + std::numbers::sqrt2 * acc;
  }
}

}  // namespace nodal::kernels::scalar
