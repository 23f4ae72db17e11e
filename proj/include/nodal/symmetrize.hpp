#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "nodal/barrier.hpp"
#include "nodal/checklist.hpp"
#include "nodal/log_magnitude.hpp"

namespace nodal {

/// prop_formula keeps the 1/sqrt(1 - J_0^2) factor in the stationarity
/// equation for T; appendix_formula drops it; explicit means T was given.
enum class TMode { prop_formula, appendix_formula, explicit_value };

std::string to_string(TMode m);
TMode parse_t_mode(const std::string& s);

struct NoSolution : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using RadiiSchedule = std::vector<double>;

/// mu0: a single radius with j_{0,1} < r < j_{0,2}. mu1: j_{0,1} < r_1 <
/// sqrt2 j_{0,1}, j_{0,2} < r_M < j_{0,3} and r_k^2 - r_{k-1}^2 < j_{0,1}^2.
/// Equalities within rounding pass as limiting cases.
HypothesisChecklist validate_radii(const RadiiSchedule& radii, Target target);

/// Expected zero count of F on the circle |x| = r with xi_0 fixed:
/// sqrt2 r / sqrt(1 - J_0^2) exp(-xi0^2 J_0^2 / (2 (1 - J_0^2))).
double kac_rice_expected_crossings(double r, double xi0);

/// Zero of 1 - (sqrt2/2) sum_k r_k / sqrt(1 - J_0(r_k)^2) exp(-T^2 J_0^2 / (2 (1 - J_0^2)))
/// (the square root is dropped in appendix mode), bracketed by
/// [0, 5 / min_k |J_0(r_k)|].
double optimal_T(const RadiiSchedule& radii, TMode mode);

/// T^2 = (1/J_0^2 - 1) log(r^2 / (2 (1 - J_0^2))) for a single radius.
double closed_form_T(double r);

/// q = Gamma(1/2, T^2/2) - sqrt(1/2) sum_k r_k Gamma(1/2, T^2 / (2 (1 - J_0(r_k)^2))).
struct QValue {
  LogMagnitude q;
  bool used_quadrature = false;
};

QValue symmetrization_q(const RadiiSchedule& radii, double T);

/// The same q by long-double Gauss-Kronrod quadrature of the integrand,
/// with e^{-T^2/2} factored out.
LogMagnitude symmetrization_q_quadrature(const RadiiSchedule& radii, double T);

struct SymmetrizationCertificate {
  Target target = Target::mu0;
  RadiiSchedule radii;
  double T = 0.0;
  TMode t_mode = TMode::explicit_value;
  LogMagnitude q;
  bool vacuous = false;
  bool used_quadrature = false;
  LogMagnitude mu_bound;             // sqrt(pi) q / r_M^2
  LogMagnitude mu_bound_factor_ten;  // 10 q / (sqrt(12 pi) r_M^2)
  HypothesisChecklist validation;

  friend bool operator==(const SymmetrizationCertificate&, const SymmetrizationCertificate&) = default;
};

/// Throws HypothesisFailure if the schedule is invalid.
SymmetrizationCertificate symmetrization_bound(const RadiiSchedule& radii, double T, Target target,
                                               TMode recorded_mode = TMode::explicit_value);

/// Solves T in the given mode and evaluates the bound there.
SymmetrizationCertificate symmetrization_run(const RadiiSchedule& radii, Target target, TMode mode);

/// r_k = sqrt(k + 1) j_{0,1}, k = 1..5.
RadiiSchedule limiting_schedule();

}  // namespace nodal
