#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "nodal/kernels.hpp"
#include "oracles.hpp"

namespace k = nodal::kernels;

namespace {

std::vector<double> random_radii(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 100.0);
  std::vector<double> r(count);
  for (auto& x : r) x = u(rng);
  r[0] = 0.0;
  r[1] = 1e-25;
  r[2] = 100.0;
  return r;
}

struct HarmonicCase {
  std::vector<double> c, s, table, xi, eta;
  std::vector<std::int32_t> col;
  k::HarmonicArgs args{};
};

HarmonicCase make_case(std::size_t count, int nmax, std::uint64_t seed) {
  HarmonicCase h;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> u(0.0, 2 * M_PI);
  const std::size_t columns = 37;
  const auto radii = random_radii(columns, seed + 1);
  h.table.resize(columns * (nmax + 1));
  k::scalar::bessel_table(radii.data(), columns, nmax, h.table.data());
  for (std::size_t i = 0; i < count; ++i) {
    const double t = u(rng);
    h.c.push_back(std::cos(t));
    h.s.push_back(std::sin(t));
    h.col.push_back(static_cast<std::int32_t>(rng() % columns));
  }
  h.xi.resize(nmax + 1);
  h.eta.resize(nmax + 1);
  for (int n = 1; n <= nmax; ++n) {
    h.xi[n] = g(rng);
    h.eta[n] = g(rng);
  }
  h.args = {h.c.data(), h.s.data(), h.col.data(), count, h.table.data(), columns, nmax, g(rng), h.xi.data(), h.eta.data()};
  return h;
}

}  // namespace

TEST_SUITE("kernels") {
  TEST_CASE("scalar bessel table against the oracle") {
    const auto r = random_radii(203, 11);
    const int nmax = 120;
    std::vector<double> t(r.size() * (nmax + 1));
    k::scalar::bessel_table(r.data(), r.size(), nmax, t.data());
    for (int n = 0; n <= nmax; ++n)
      for (std::size_t i = 0; i < r.size(); ++i) CHECK(std::fabs(t[n * r.size() + i] - oracle::bessel_j(n, r[i])) < 1e-13);
  }

  TEST_CASE("scalar harmonic sum against direct evaluation") {
    const auto h = make_case(101, 60, 3);
    std::vector<double> out(101);
    k::scalar::harmonic_sum(h.args, out.data());
    for (std::size_t i = 0; i < out.size(); ++i) {
      const double theta = std::atan2(h.s[i], h.c[i]);
      double ref = h.args.xi0 * h.table[h.col[i]];
      for (int n = 1; n <= 60; ++n)
        ref += std::sqrt(2.0) * (h.xi[n] * std::cos(n * theta) + h.eta[n] * std::sin(n * theta)) *
               h.table[n * h.args.stride + h.col[i]];
      CHECK(std::fabs(out[i] - ref) < 1e-12);
    }
  }

  TEST_CASE("with p = 0 the sum is xi0 J_0") {
    auto h = make_case(64, 30, 5);
    std::fill(h.xi.begin(), h.xi.end(), 0.0);
    std::fill(h.eta.begin(), h.eta.end(), 0.0);
    std::vector<double> out(64);
    k::harmonic_sum(h.args, out.data());
    for (std::size_t i = 0; i < out.size(); ++i) CHECK(out[i] == doctest::Approx(h.args.xi0 * h.table[h.col[i]]).epsilon(1e-15));
  }

  TEST_CASE("dispatch can be pinned to scalar") {
    k::force_scalar(true);
    CHECK(k::active_isa() == k::Isa::scalar);
    k::force_scalar(false);
    CHECK(k::active_isa() == (k::avx2_available() ? k::Isa::avx2 : k::Isa::scalar));
    CHECK(k::to_string(k::Isa::avx2) == "avx2");
  }

#if defined(NODAL_HAVE_AVX2)
  TEST_CASE("avx2 kernels match the scalar reference") {
    if (!k::avx2_available()) {
      MESSAGE("AVX2/FMA not available on this CPU; equivalence not exercised");
      return;
    }
    for (std::size_t count : {1u, 3u, 4u, 5u, 203u}) {
      const auto r = random_radii(std::max<std::size_t>(count, 3), 17 + count);
      const int nmax = 150;
      std::vector<double> a(r.size() * (nmax + 1)), b(a.size());
      k::scalar::bessel_table(r.data(), r.size(), nmax, a.data());
      k::avx2::bessel_table(r.data(), r.size(), nmax, b.data());
      double worst = 0.0;
      for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::fabs(a[i] - b[i]));
      CHECK(worst <= 1e-13);
    }
    for (std::size_t count : {1u, 2u, 7u, 8u, 1001u}) {
      const auto h = make_case(count, 100, 23 + count);
      std::vector<double> a(count), b(count);
      k::scalar::harmonic_sum(h.args, a.data());
      k::avx2::harmonic_sum(h.args, b.data());
      for (std::size_t i = 0; i < count; ++i) CHECK(std::fabs(a[i] - b[i]) <= 1e-13 * std::max(1.0, std::fabs(a[i])));
    }
  }
#endif
}
