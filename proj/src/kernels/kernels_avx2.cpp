// Compiled with -mavx2 -mfma; only reached when the CPU reports both.

#include <immintrin.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "nodal/kernels.hpp"
#include "nodal/specfun.hpp"

namespace nodal::kernels::avx2 {
namespace {

constexpr double kRescaleAbove = 1e250;
constexpr double kRescaleBy = 1e-250;
constexpr double kTinyRadius = 1e-20;

int miller_start(int nmax, double r) {
  const int mx = std::max(nmax, static_cast<int>(std::ceil(r)));
  int m = mx + 20 + static_cast<int>(std::sqrt(50.0 * mx));
  return m + (m & 1);
}

// Four radii at once, columns i..i+3 of the n-major table.
void miller4(const double* r, std::size_t count, int nmax, double* table) {
  alignas(32) double rr[4];
  double rmax = 0.0;
  for (int l = 0; l < 4; ++l) {
    // Degenerate lanes run on a dummy radius and are patched afterwards.
    rr[l] = r[l] < kTinyRadius ? 1.0 : r[l];
    rmax = std::max(rmax, rr[l]);
  }
  const int m = miller_start(nmax, rmax);
  const __m256d two_over_r = _mm256_div_pd(_mm256_set1_pd(2.0), _mm256_load_pd(rr));
  const __m256d abs_mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
  const __m256d limit = _mm256_set1_pd(kRescaleAbove);
  const __m256d two = _mm256_set1_pd(2.0);
  __m256d jp = _mm256_setzero_pd();
  __m256d jk = _mm256_set1_pd(1e-30);
  __m256d norm = _mm256_setzero_pd();

  for (int k = m; k >= 1; --k) {
    const __m256d scale = _mm256_mul_pd(_mm256_set1_pd(static_cast<double>(k)), two_over_r);
    const __m256d jm = _mm256_fmsub_pd(scale, jk, jp);
    jp = jk;
    jk = jm;
    const int idx = k - 1;
    if (idx <= nmax) _mm256_storeu_pd(table + idx * count, jm);
    if (idx > 0 && (idx & 1) == 0) norm = _mm256_fmadd_pd(two, jm, norm);
    const __m256d big = _mm256_cmp_pd(_mm256_and_pd(jm, abs_mask), limit, _CMP_GT_OQ);
    const int lanes = _mm256_movemask_pd(big);
    if (lanes) {
      const __m256d f = _mm256_blendv_pd(_mm256_set1_pd(1.0), _mm256_set1_pd(kRescaleBy), big);
      jp = _mm256_mul_pd(jp, f);
      jk = _mm256_mul_pd(jk, f);
      norm = _mm256_mul_pd(norm, f);
      for (int i = idx; i <= nmax; ++i) {
        double* row = table + i * count;
        _mm256_storeu_pd(row, _mm256_mul_pd(_mm256_loadu_pd(row), f));
      }
    }
  }
  norm = _mm256_add_pd(norm, jk);
  const __m256d inv = _mm256_div_pd(_mm256_set1_pd(1.0), norm);
  for (int n = 0; n <= nmax; ++n) {
    double* row = table + n * count;
    _mm256_storeu_pd(row, _mm256_mul_pd(_mm256_loadu_pd(row), inv));
  }

  for (int l = 0; l < 4; ++l) {
    if (r[l] >= kTinyRadius) continue;
    std::vector<double> seq(nmax + 1);
    bessel_j_sequence(nmax, r[l], seq.data());
    for (int n = 0; n <= nmax; ++n) table[n * count + l] = seq[n];
  }
}

}  // namespace

void bessel_table(const double* r, std::size_t count, int nmax, double* table) {
  std::size_t i = 0;
  for (; i + 4 <= count; i += 4) miller4(r + i, count, nmax, table + i);
  if (i == count) return;
  std::vector<double> seq(nmax + 1);
  for (; i < count; ++i) {
    bessel_j_sequence(nmax, r[i], seq.data());
    for (int n = 0; n <= nmax; ++n) table[n * count + i] = seq[n];
  }
}

void harmonic_sum(const HarmonicArgs& a, double* out) {
  std::size_t i = 0;
  const __m256d sqrt2 = _mm256_set1_pd(std::numbers::sqrt2);
  for (; i + 4 <= a.count; i += 4) {
    const __m256d c1 = _mm256_loadu_pd(a.cos1 + i);
    const __m256d s1 = _mm256_loadu_pd(a.sin1 + i);
    const __m128i col = _mm_loadu_si128(reinterpret_cast<const __m128i*>(a.col + i));
    __m256d c = c1, s = s1;
    __m256d acc = _mm256_setzero_pd();
    for (int n = 1; n <= a.nmax; ++n) {
      const __m256d J = _mm256_i32gather_pd(a.table + n * a.stride, col, 8);
      const __m256d coef = _mm256_fmadd_pd(_mm256_set1_pd(a.xi[n]), c, _mm256_mul_pd(_mm256_set1_pd(a.eta[n]), s));
      acc = _mm256_fmadd_pd(coef, J, acc);
      const __m256d cn = _mm256_fmsub_pd(c, c1, _mm256_mul_pd(s, s1));
      s = _mm256_fmadd_pd(s, c1, _mm256_mul_pd(c, s1));
      c = cn;
    }
    const __m256d J0 = _mm256_i32gather_pd(a.table, col, 8);
    const __m256d v = _mm256_fmadd_pd(_mm256_set1_pd(a.xi0), J0, _mm256_mul_pd(sqrt2, acc));
    _mm256_storeu_pd(out + i, v);
  }
  if (i < a.count) {
    HarmonicArgs rest = a;
    rest.cos1 += i;
    rest.sin1 += i;
    rest.col += i;
    rest.count -= i;
    scalar::harmonic_sum(rest, out + i);
  }
}

}  // namespace nodal::kernels::avx2
