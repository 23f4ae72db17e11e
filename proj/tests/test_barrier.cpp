#include <doctest.h>

#include <cmath>
#include <numbers>

#include "nodal/barrier.hpp"
#include "nodal/specfun.hpp"
#include "oracles.hpp"

using nodal::Target;

namespace {

double brute_max(int n, double lo, double hi, int kind) {
  constexpr int kPoints = 20001;
  double best = 0.0;
  for (int i = 0; i < kPoints; ++i) {
    const double r = lo + (hi - lo) * i / (kPoints - 1);
    const double v = kind == 0 ? oracle::bessel_j(n, r) : kind == 1 ? oracle::bessel_j_prime(n, r) : oracle::bessel_j(n, r) / r;
    best = std::max(best, std::fabs(v));
  }
  return best;
}

// Sum over n of sup|J_n| + sup|J_n'| + n sup|J_n / r| on [lo, hi].
double brute_S(double lo, double hi) {
  double S = 0.0;
  for (int n = 1; n <= 40; ++n) S += brute_max(n, lo, hi, 0) + brute_max(n, lo, hi, 1) + n * brute_max(n, lo, hi, 2);
  return S;
}

double brute_gradient_margin(double delta, double j) {
  double inf = 1e300;
  for (int i = 0; i <= 20000; ++i) inf = std::min(inf, std::fabs(oracle::bessel_j_prime(0, j - delta + 2 * delta * i / 20000)));
  return std::sqrt(0.5) * delta / (1 + delta) * std::sqrt(1 - delta * delta / (j * j)) * inf;
}

}  // namespace

TEST_SUITE("barrier") {
  TEST_CASE("critical gap") { CHECK(std::fabs(nodal::critical_gap() - 1.42688) < 1e-5); }

  TEST_CASE("largest epsilon against a direct evaluation of its definition") {
    const double j01 = oracle::bessel_zero(0, 1), j02 = oracle::bessel_zero(0, 2);
    const double c1 = std::fabs(oracle::bessel_j(0, oracle::bessel_zero(1, 1)));
    const double c2 = std::fabs(oracle::bessel_j(0, oracle::bessel_zero(1, 2)));
    for (double delta : {0.1, 0.5, 1.0}) {
      const double g1 = brute_gradient_margin(delta, j01), g2 = brute_gradient_margin(delta, j02);
      CHECK(std::fabs(nodal::auto_epsilon(Target::mu0, delta) - std::min(g1, c1)) < 1e-8);
      CHECK(std::fabs(nodal::auto_epsilon(Target::mu1, delta) - std::min({g1, g2, c1, c2})) < 1e-8);
    }
  }

  TEST_CASE("mu0 inputs at delta = 1/2") {
    const auto cert = nodal::mu_lower_bound({Target::mu0, 0.5});
    CHECK(cert.epsilon_auto);
    CHECK(std::fabs(cert.epsilon - 0.086161) < 1e-5);
    REQUIRE(cert.bands.size() == 1);
    CHECK(std::fabs(cert.bands[0].lo - 2.243784) < 1e-5);
    CHECK(std::fabs(cert.bands[0].hi - 2.577540) < 1e-5);
    CHECK(std::fabs(cert.S.certified_S_upper - 3.729324) < 1e-4);
    CHECK(std::fabs(cert.S.per_order[0].s_n - 1.240843) < 1e-4);
    CHECK(std::fabs(cert.S.per_order[1].s_n - 1.076795) < 1e-4);
    CHECK(std::fabs(cert.S.per_order[2].s_n - 0.781099) < 1e-4);
    CHECK(std::fabs(cert.S.block_from(4) - 0.630586) < 1e-4);
    CHECK(cert.checklist.all_satisfied());
    CHECK(cert.S.tail_bound < 1e-100);
  }

  TEST_CASE("certified S against a dense-scan oracle") {
    for (Target t : {Target::mu0, Target::mu1}) {
      const auto a = nodal::barrier_annulus(t, 0.5);
      const auto S = nodal::compute_S(a.lo, a.hi, 100);
      const double ref = brute_S(a.lo, a.hi);
      // A scan can only undershoot a supremum.
      CHECK(S.certified_S_upper >= ref - 1e-12);
      CHECK(S.certified_S_upper - ref < 1e-6);
      CHECK(S.partial_sum + S.tail_bound == doctest::Approx(S.certified_S_upper).epsilon(1e-15));
    }
  }

  TEST_CASE("mu1 bands and hypotheses") {
    const double eps = nodal::auto_epsilon(Target::mu1, 0.5);
    CHECK(std::fabs(eps - 0.064008) < 1e-5);
    const auto bands = nodal::required_bands(Target::mu1, eps);
    REQUIRE(bands.size() == 3);
    CHECK(std::fabs(bands[0].lo - 2.284353) < 1e-5);
    CHECK(std::fabs(bands[0].hi - 2.531685) < 1e-5);
    CHECK(std::fabs(bands[1].lo - 5.334081) < 1e-5);
    CHECK(std::fabs(bands[1].hi - 5.712642) < 1e-5);
    CHECK(std::fabs(bands[2].lo - 8.418990) < 1e-5);
    const auto list = nodal::check_hypotheses({Target::mu1, 0.5}, eps, bands);
    CHECK(list.all_satisfied());
    CHECK(list.checks.size() == 11);
    for (const auto& c : list.checks) CHECK(c.margin == doctest::Approx(c.rhs - c.lhs));
  }

  TEST_CASE("violated hypotheses are reported by name") {
    // A large delta pushes the first band's ball into the second band.
    const double eps = nodal::auto_epsilon(Target::mu1, 0.5);
    const auto list = nodal::check_hypotheses({Target::mu1, 1.4}, eps, nodal::required_bands(Target::mu1, eps));
    CHECK_FALSE(list.all_satisfied());
    CHECK_FALSE(list.failed_names().empty());
    CHECK_THROWS_AS(nodal::mu_lower_bound({Target::mu0, 0.5, 0.2}), nodal::HypothesisFailure);
    try {
      nodal::mu_lower_bound({Target::mu0, 0.5, 0.2});
    } catch (const nodal::HypothesisFailure& f) {
      CHECK(f.checklist.find("eps_within_gradient_margin") != nullptr);
      CHECK_FALSE(f.checklist.find("eps_within_gradient_margin")->satisfied);
    }
    CHECK_THROWS_AS(nodal::mu_lower_bound({Target::mu0, 1.5}), nodal::HypothesisFailure);
  }

  TEST_CASE("probability bound is the deficit tail at sqrt(pi) S / eps") {
    for (Target t : {Target::mu0, Target::mu1}) {
      const auto cert = nodal::mu_lower_bound({t, 0.5});
      const double a = std::sqrt(std::numbers::pi) * cert.S.certified_S_upper / cert.epsilon;
      CHECK(cert.threshold == doctest::Approx(cert.S.certified_S_upper / cert.epsilon));
      CHECK(std::fabs(cert.probability.log10_abs() - oracle::log10_deficit_tail(a)) < 1e-9 * std::fabs(cert.probability.log10_abs()));
      const double R = cert.annulus.hi;
      CHECK(cert.mu_bound_kac_rice.log10_abs() ==
            doctest::Approx(cert.probability.log10_abs() + std::log10(std::numbers::pi / (R * R))).epsilon(1e-14));
      CHECK(cert.mu_bound_factor_ten.log10_abs() ==
            doctest::Approx(cert.probability.log10_abs() + std::log10(10.0 / (R * R * std::sqrt(12.0)))).epsilon(1e-14));
      CHECK(cert.mu_bound == cert.mu_bound_kac_rice);
    }
    const auto ten = nodal::mu_lower_bound({Target::mu0, 0.5, std::nullopt, 100, nodal::CnsConvention::paper_factor_ten});
    CHECK(ten.mu_bound == ten.mu_bound_factor_ten);
  }

  TEST_CASE("published table convention reproduces the tabulated cells") {
    const auto table = nodal::published_table_convention(0.5);
    // n, u, |J(u)|, v, |J(v)/v|, w, |J'(w)|, S_n; printed values are truncated to 4 digits.
    const double cells[6][8] = {{1, 1.9048, 0.5810, 5.1356, 0.0661, 3.5183, 0.4194, 1.0666},
                                {2, 3.0542, 0.4864, 2.2999, 0.1799, 4.8879, 0.3478, 1.0143},
                                {3, 4.2011, 0.4343, 3.6112, 0.1107, 6.0200, 0.3009, 0.8461},
                                {4, 5.3175, 0.3996, 4.8112, 0.0787, 3.6804, 0.1548, 0.6333},
                                {5, 6.0200, 0.3631, 5.9623, 0.0603, 4.7082, 0.1338, 0.5573},
                                {6, 6.0200, 0.2481, 6.0200, 0.0412, 5.7285, 0.1188, 0.4082}};
    REQUIRE(table.rows.size() == 6);
    for (int i = 0; i < 6; ++i) {
      const auto& r = table.rows[i];
      CAPTURE(i + 1);
      const double got[7] = {r.u, r.value_u, r.v, r.value_v, r.w, r.value_w, r.s_n};
      for (int c = 0; c < 7; ++c) CHECK(std::fabs(got[c] - cells[i][c + 1]) < 1e-3);
    }
    CHECK(std::fabs(table.tail - 0.689769) < 1e-4);
    CHECK(std::fabs(table.total - 5.215701) < 1e-4);
  }

  TEST_CASE("zero capture holds for admissible perturbations") {
    const double eps = nodal::auto_epsilon(Target::mu0, 0.5);
    const auto rep = nodal::verify_zero_capture(0.5, eps, 300, 7);
    CHECK(rep.hypotheses_hold);
    CHECK(rep.failures == 0);
    CHECK(rep.worst_offset <= 0.5);
    const auto c = nodal::verify_zero_capture(0.5, eps, 50, 7, nodal::PerturbationKind::constant);
    CHECK(c.failures == 0);
  }

  TEST_CASE("certificates are deterministic") {
    CHECK(nodal::mu_lower_bound({Target::mu1, 0.5}) == nodal::mu_lower_bound({Target::mu1, 0.5}));
  }
}
