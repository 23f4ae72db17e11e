#include <doctest.h>

#include <cmath>
#include <numbers>

#include "nodal/rootfind.hpp"
#include "nodal/specfun.hpp"
#include "oracles.hpp"

using nodal::Interval;

namespace {

// Dense scan with the oracle Bessel functions.
double brute_extremum(nodal::ExtremumKind kind, int n, Interval iv, bool want_max) {
  constexpr int kPoints = 200001;
  double best = want_max ? 0.0 : std::numeric_limits<double>::infinity();
  for (int i = 0; i < kPoints; ++i) {
    const double r = iv.lo + iv.width() * i / (kPoints - 1);
    double v = 0.0;
    switch (kind) {
      case nodal::ExtremumKind::abs_value: v = oracle::bessel_j(n, r); break;
      case nodal::ExtremumKind::abs_deriv: v = oracle::bessel_j_prime(n, r); break;
      case nodal::ExtremumKind::abs_over_r: v = oracle::bessel_j(n, r) / r; break;
    }
    best = want_max ? std::max(best, std::fabs(v)) : std::min(best, std::fabs(v));
  }
  return best;
}

}  // namespace

TEST_SUITE("rootfind") {
  TEST_CASE("brent finds a bracketed root and is deterministic") {
    const auto f = [](double x) { return std::cos(x); };
    const double r = nodal::find_root(f, {1.0, 2.0});
    CHECK(std::fabs(r - std::numbers::pi / 2) < 1e-12);
    CHECK(nodal::find_root(f, {1.0, 2.0}) == r);
    CHECK(nodal::find_root([](double x) { return x * x * x - 2.0; }, {0.0, 3.0}, 1e-14) ==
          doctest::Approx(std::cbrt(2.0)).epsilon(1e-14));
    CHECK_THROWS_AS(nodal::find_root(f, {0.0, 1.0}), nodal::NoSignChange);
  }

  TEST_CASE("bessel zeros match an independent implementation") {
    for (int order : {0, 1})
      for (int k = 1; k <= 20; ++k) CHECK(std::fabs(nodal::bessel_zero(order, k) - oracle::bessel_zero(order, k)) < 1e-12);
    CHECK_THROWS(nodal::bessel_zero(2, 1));
    CHECK_THROWS(nodal::bessel_zero(0, 21));
  }

  TEST_CASE("quoted zeros") {
    CHECK(std::fabs(nodal::bessel_zero(0, 1) - 2.404825) < 1e-5);
    CHECK(std::fabs(nodal::bessel_zero(0, 2) - 5.520078) < 1e-5);
    CHECK(std::fabs(nodal::bessel_zero(0, 3) - 8.6537) < 1e-4);
    CHECK(std::fabs(nodal::bessel_zero(1, 1) - 3.831705) < 1e-5);
    CHECK(std::fabs(nodal::bessel_zero(1, 2) - 7.015586) < 1e-5);
  }

  TEST_CASE("level bands are the right components and nest") {
    for (int k = 1; k <= 3; ++k) {
      Interval prev{nodal::bessel_zero(0, k), nodal::bessel_zero(0, k)};
      for (double eps : {0.001, 0.01, 0.05, 0.064008, 0.086161, 0.2}) {
        const Interval b = nodal::level_band(eps, k);
        CHECK(std::fabs(std::fabs(oracle::bessel_j(0, b.lo)) - eps) < 1e-12);
        CHECK(std::fabs(std::fabs(oracle::bessel_j(0, b.hi)) - eps) < 1e-12);
        CHECK(b.contains(nodal::bessel_zero(0, k)));
        CHECK(b.lo < prev.lo);
        CHECK(prev.hi < b.hi);
        // J_0 is monotone on the band, so |J_0| <= eps throughout.
        for (int i = 1; i < 100; ++i) CHECK(std::fabs(oracle::bessel_j(0, b.lo + b.width() * i / 100)) <= eps);
        prev = b;
      }
    }
    // Above |J_0(j_{1,1})| the first band merges with its neighbours.
    CHECK_THROWS_AS(nodal::level_band(0.41, 1), nodal::BandUnbounded);
    CHECK_NOTHROW(nodal::level_band(0.40, 1));
  }

  TEST_CASE("interval extrema agree with a dense scan") {
    using K = nodal::ExtremumKind;
    const Interval annulus{1.9048255576957667, 6.0200781102863115};
    for (K kind : {K::abs_value, K::abs_deriv, K::abs_over_r}) {
      for (int n : {0, 1, 2, 3, 5, 6, 9, 20}) {
        CAPTURE(nodal::to_string(kind));
        CAPTURE(n);
        const auto mx = nodal::interval_max(kind, n, annulus);
        CHECK(std::fabs(mx.max_value - brute_extremum(kind, n, annulus, true)) < 1e-8);
        CHECK(annulus.contains(mx.argmax));
        CHECK(std::fabs(std::fabs(nodal::extremum_profile(kind, n, mx.argmax)) - mx.max_value) < 1e-15);
        const auto mn = nodal::interval_min(kind, n, {2.0, 3.0});
        // Near a zero of the profile the scan only resolves |f| to about
        // spacing * |f'|, so the oracle bounds the infimum from above.
        const double scanned = brute_extremum(kind, n, {2.0, 3.0}, false);
        CHECK(mn.min_value <= scanned + 1e-15);
        CHECK(scanned - mn.min_value < 5e-6);
      }
    }
  }
}
