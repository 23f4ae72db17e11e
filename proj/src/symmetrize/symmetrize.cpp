#include "nodal/symmetrize.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <numbers>

#include "nodal/rootfind.hpp"
#include "nodal/specfun.hpp"

namespace nodal {
namespace {

constexpr double kCancellationGuard = 1e-12;

void require_positive_T(double T) {
  if (!(T > 0.0) || !std::isfinite(T)) throw RangeError("symmetrization: T must be positive and finite");
}

}  // namespace

std::string to_string(TMode m) {
  switch (m) {
    case TMode::prop_formula:
      return "prop";
    case TMode::appendix_formula:
      return "appendix";
    case TMode::explicit_value:
      return "explicit";
  }
  return "unknown";
}

TMode parse_t_mode(const std::string& s) {
  if (s == "prop" || s == "prop_formula") return TMode::prop_formula;
  if (s == "appendix" || s == "appendix_formula") return TMode::appendix_formula;
  if (s == "explicit") return TMode::explicit_value;
  throw std::invalid_argument("unknown T mode '" + s + "' (expected prop or appendix)");
}

HypothesisChecklist validate_radii(const RadiiSchedule& radii, Target target) {
  HypothesisChecklist list;
  if (radii.empty()) {
    list.record_failure("radii_nonempty");
    return list;
  }
  for (std::size_t k = 0; k < radii.size(); ++k) {
    if (!(radii[k] > 0.0) || radii[k] > kBesselMaxArg) {
      list.record_failure("radius_" + std::to_string(k + 1) + "_in_range");
      return list;
    }
    if (bessel_j(0, radii[k]) == 0.0) list.record_failure("radius_" + std::to_string(k + 1) + "_off_nodal_circle");
    if (k > 0) list.require_less("radii_increasing_" + std::to_string(k + 1), radii[k - 1], radii[k]);
  }
  const double j1 = bessel_zero(0, 1);
  const double j2 = bessel_zero(0, 2);
  const double j3 = bessel_zero(0, 3);
  const double r1 = radii.front();
  const double rM = radii.back();

  if (target == Target::mu0) {
    if (radii.size() != 1) list.record_failure("single_radius");
    list.require_less("radius_above_first_zero", j1, r1, true, true);
    list.require_less("radius_below_second_zero", r1, j2, true, true);
    return list;
  }
  list.require_less("first_radius_above_first_zero", j1, r1, true, true);
  list.require_less("first_radius_below_sqrt2_first_zero", r1, std::numbers::sqrt2 * j1, true, true);
  list.require_less("last_radius_above_second_zero", j2, rM, true, true);
  list.require_less("last_radius_below_third_zero", rM, j3, true, true);
  for (std::size_t k = 1; k < radii.size(); ++k)
    list.require_less("area_step_" + std::to_string(k + 1), radii[k] * radii[k] - radii[k - 1] * radii[k - 1], j1 * j1,
                      true, true);
  return list;
}

double kac_rice_expected_crossings(double r, double xi0) {
  const double J = bessel_j(0, r);
  const double s2 = 1.0 - J * J;
  if (!(s2 > 0.0)) throw RangeError("kac_rice_expected_crossings: |J_0(r)| = 1 (r = 0)");
  return std::numbers::sqrt2 * r / std::sqrt(s2) * std::exp(-xi0 * xi0 * J * J / (2.0 * s2));
}

double optimal_T(const RadiiSchedule& radii, TMode mode) {
  if (radii.empty()) throw RangeError("optimal_T: empty schedule");
  if (mode == TMode::explicit_value) throw std::invalid_argument("optimal_T: explicit mode has no equation to solve");
  std::vector<double> J(radii.size());
  double min_abs = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < radii.size(); ++k) {
    J[k] = bessel_j(0, radii[k]);
    min_abs = std::min(min_abs, std::fabs(J[k]));
  }
  if (!(min_abs > 0.0)) throw NoSolution("optimal_T: a radius lies on a zero of J_0");
  auto f = [&](double T) {
    double sum = 0.0;
    for (std::size_t k = 0; k < radii.size(); ++k) {
      const double s2 = 1.0 - J[k] * J[k];
      const double amp = mode == TMode::prop_formula ? radii[k] / std::sqrt(s2) : radii[k];
      sum += amp * std::exp(-T * T * J[k] * J[k] / (2.0 * s2));
    }
    return 1.0 - std::numbers::sqrt2 / 2.0 * sum;
  };
  try {
    return find_root(f, {0.0, 5.0 / min_abs});
  } catch (const NoSignChange&) {
    throw NoSolution("optimal_T: the stationarity equation has no zero in [0, " + std::to_string(5.0 / min_abs) + "]");
  }
}

double closed_form_T(double r) {
  const double J = bessel_j(0, r);
  const double s2 = 1.0 - J * J;
  const double L = std::log(r * r / (2.0 * s2));
  if (!(J != 0.0) || !(L > 0.0)) throw NoSolution("closed_form_T: no positive solution for this radius");
  return std::sqrt((1.0 / (J * J) - 1.0) * L);
}

LogMagnitude symmetrization_q_quadrature(const RadiiSchedule& radii, double T) {
  require_positive_T(T);
  using ld = long double;
  std::vector<ld> inv_s2(radii.size());
  for (std::size_t k = 0; k < radii.size(); ++k) {
    const ld J = bessel_j(0, radii[k]);
    inv_s2[k] = 1.0L / (1.0L - J * J);
  }
  const ld LT = T;
  // integral_T^inf (1 - (sqrt2/2) sum_k r_k/sqrt(1-J^2) e^{-t^2 J^2/(2(1-J^2))}) e^{-t^2/2} dt
  // with t = T + u and e^{-T^2/2} taken out.
  auto g = [&](ld u) {
    const ld t = LT + u;
    const ld base = -LT * u - 0.5L * u * u;
    ld v = std::exp(base);
    for (std::size_t k = 0; k < radii.size(); ++k) {
      const ld e = -0.5L * t * t * inv_s2[k] + 0.5L * LT * LT;
      v -= 0.5L * std::sqrt(2.0L) * static_cast<ld>(radii[k]) * std::sqrt(inv_s2[k]) * std::exp(e);
    }
    return v;
  };
  const ld I = boost::math::quadrature::gauss_kronrod<ld, 61>::integrate(g, 0.0L, std::numeric_limits<ld>::infinity(),
                                                                           15, 1e-15L);
  // q = sqrt2 * integral.
  const double mag = static_cast<double>(std::sqrt(2.0L) * I);
  return LogMagnitude::from_double(mag) * LogMagnitude::from_ln(-0.5 * T * T);
}

QValue symmetrization_q(const RadiiSchedule& radii, double T) {
  require_positive_T(T);
  const LogMagnitude A = log_upper_gamma(0.5, 0.5 * T * T);
  LogMagnitude B;
  for (double r : radii) {
    const double J = bessel_j(0, r);
    B = B + log_upper_gamma(0.5, T * T / (2.0 * (1.0 - J * J))).scaled(r);
  }
  B = B.scaled(std::sqrt(0.5));
  const LogMagnitude q = A - B;
  const bool cancelled = q.is_zero() || (q / A).log10_abs() < std::log10(kCancellationGuard);
  if (cancelled) return {symmetrization_q_quadrature(radii, T), true};
  return {q, false};
}

SymmetrizationCertificate symmetrization_bound(const RadiiSchedule& radii, double T, Target target,
                                               TMode recorded_mode) {
  require_positive_T(T);
  SymmetrizationCertificate cert;
  cert.target = target;
  cert.radii = radii;
  cert.T = T;
  cert.t_mode = recorded_mode;
  cert.validation = validate_radii(radii, target);
  if (!cert.validation.all_satisfied()) throw HypothesisFailure(cert.validation);
  const QValue q = symmetrization_q(radii, T);
  cert.q = q.q;
  cert.used_quadrature = q.used_quadrature;
  cert.vacuous = q.q.sign() <= 0;
  const double rM2 = radii.back() * radii.back();
  cert.mu_bound = q.q.scaled(std::sqrt(std::numbers::pi) / rM2);
  cert.mu_bound_factor_ten = q.q.scaled(10.0 / (std::sqrt(12.0 * std::numbers::pi) * rM2));
  return cert;
}

SymmetrizationCertificate symmetrization_run(const RadiiSchedule& radii, Target target, TMode mode) {
  const HypothesisChecklist v = validate_radii(radii, target);
  if (!v.all_satisfied()) throw HypothesisFailure(v);
  return symmetrization_bound(radii, optimal_T(radii, mode), target, mode);
}

RadiiSchedule limiting_schedule() {
  RadiiSchedule r;
  const double j1 = bessel_zero(0, 1);
  for (int k = 1; k <= 5; ++k) r.push_back(std::sqrt(k + 1.0) * j1);
  return r;
}

}  // namespace nodal
