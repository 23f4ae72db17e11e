#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

// Hot loops of the field simulator. Each kernel has a portable scalar
// reference and, on x86-64, an AVX2/FMA variant chosen at runtime.

namespace nodal::kernels {

enum class Isa { scalar, avx2 };

std::string to_string(Isa isa);

bool avx2_available();

/// The variant the dispatching entry points will use.
Isa active_isa();

/// Pins dispatch to the scalar kernels (testing, reproducibility checks).
void force_scalar(bool on);

/// table[n * count + i] = J_n(r[i]) for n = 0..nmax, i < count.
void bessel_table(const double* r, std::size_t count, int nmax, double* table);

/// out[i] = xi0 J_0 + sqrt2 sum_{n=1..nmax} (xi[n] cos n t_i + eta[n] sin n t_i) J_n,
/// where J_n = table[n * stride + col[i]] and (cos1[i], sin1[i]) = (cos t_i, sin t_i).
/// xi and eta are indexed from 1; entry 0 is ignored.
struct HarmonicArgs {
  const double* cos1;
  const double* sin1;
  const std::int32_t* col;
  std::size_t count;
  const double* table;
  std::size_t stride;
  int nmax;
  double xi0;
  const double* xi;
  const double* eta;
};

void harmonic_sum(const HarmonicArgs& args, double* out);

namespace scalar {
void bessel_table(const double* r, std::size_t count, int nmax, double* table);
void harmonic_sum(const HarmonicArgs& args, double* out);
}  // namespace scalar

#if defined(NODAL_HAVE_AVX2)
namespace avx2 {
void bessel_table(const double* r, std::size_t count, int nmax, double* table);
void harmonic_sum(const HarmonicArgs& args, double* out);
}  // namespace avx2
#endif

}  // namespace nodal::kernels
