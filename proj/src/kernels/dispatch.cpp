#include <atomic>

#include "nodal/kernels.hpp"

namespace nodal::kernels {
namespace {

std::atomic<bool> g_force_scalar{false};

}  // namespace

std::string to_string(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

bool avx2_available() {
#if defined(NODAL_HAVE_AVX2)
  static const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return ok;
#else
  return false;
#endif
}

Isa active_isa() { return !g_force_scalar.load() && avx2_available() ? Isa::avx2 : Isa::scalar; }

void force_scalar(bool on) { g_force_scalar.store(on); }

void bessel_table(const double* r, std::size_t count, int nmax, double* table) {
#if defined(NODAL_HAVE_AVX2)
  if (active_isa() == Isa::avx2) return avx2::bessel_table(r, count, nmax, table);
#endif
  scalar::bessel_table(r, count, nmax, table);
}

void harmonic_sum(const HarmonicArgs& args, double* out) {
#if defined(NODAL_HAVE_AVX2)
  if (active_isa() == Isa::avx2) return avx2::harmonic_sum(args, out);
#endif
  scalar::harmonic_sum(args, out);
}

}  // namespace nodal::kernels
