#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include "nodal/barrier.hpp"
#include "nodal/specfun.hpp"

namespace nodal {
namespace {

constexpr int kTerms = 20;
constexpr double kNormFraction = 0.999;

}  // namespace

ZeroCaptureReport verify_zero_capture(double delta, double eps, int trials, std::uint64_t seed,
                                      PerturbationKind kind) {
  ZeroCaptureReport rep;
  rep.delta = delta;
  rep.eps = eps;
  rep.trials = trials;
  rep.seed = seed;
  rep.kind = kind;

  const double j = bessel_zero(0, 1);
  const Interval annulus{j - delta, j + delta};
  Interval band{j, j};
  if (eps > 0.0) {
    try {
      band = level_band(eps, 1);
      BarrierConfig cfg;
      cfg.delta = delta;
      rep.hypotheses_hold = check_hypotheses(cfg, eps, {band}).all_satisfied();
    } catch (const BandUnbounded&) {
      band = annulus;
    }
  }

  std::array<double, kTerms + 1> sup_v{}, sup_d{}, sup_q{};
  for (int n = 1; n <= kTerms; ++n) {
    sup_v[n] = interval_max(ExtremumKind::abs_value, n, annulus).max_value;
    sup_d[n] = interval_max(ExtremumKind::abs_deriv, n, annulus).max_value;
    sup_q[n] = n * interval_max(ExtremumKind::abs_over_r, n, annulus).max_value;
  }

  for (int t = 0; t < trials; ++t) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(t)};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> normal;
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    const double theta = angle(rng);

    std::array<double, kTerms + 1> a{}, b{};
    double constant = 0.0;
    if (kind == PerturbationKind::random_series && eps > 0.0) {
      double nv = 0.0, nd = 0.0, nq = 0.0;
      for (int n = 1; n <= kTerms; ++n) {
        a[n] = normal(rng);
        b[n] = normal(rng);
        const double rho = std::hypot(a[n], b[n]);
        nv += rho * sup_v[n];
        nd += rho * sup_d[n];
        nq += rho * sup_q[n];
      }
      const double scale = kNormFraction * eps / std::max({nv, nd, nq});
      for (int n = 1; n <= kTerms; ++n) {
        a[n] *= scale;
        b[n] *= scale;
      }
    } else if (kind == PerturbationKind::constant) {
      constant = eps;
    }

    auto field = [&](double r) {
      double v = bessel_j(0, r) + constant;
      for (int n = 1; n <= kTerms; ++n) v += (a[n] * std::cos(n * theta) + b[n] * std::sin(n * theta)) * bessel_j(n, r);
      return v;
    };
    try {
      const double root = find_root(field, annulus);
      rep.worst_offset = std::max(rep.worst_offset, std::fabs(root - j));
      const double slack = 1e-9;
      if (root < band.lo - slack || root > band.hi + slack) ++rep.failures;
    } catch (const NoSignChange&) {
      ++rep.failures;
    }
  }
  return rep;
}

}  // namespace nodal
