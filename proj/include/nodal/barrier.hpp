#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nodal/checklist.hpp"
#include "nodal/log_magnitude.hpp"
#include "nodal/rootfind.hpp"

namespace nodal {

enum class Target { mu0, mu1 };
enum class CnsConvention { kac_rice_exact, paper_factor_ten };

std::string to_string(Target t);
std::string to_string(CnsConvention c);
Target parse_target(const std::string& s);
CnsConvention parse_cns_convention(const std::string& s);

struct BarrierConfig {
  Target target = Target::mu0;
  double delta = 0.5;
  std::optional<double> epsilon;  // empty means the largest admissible value
  int truncation_order = 100;
  CnsConvention cns_convention = CnsConvention::kac_rice_exact;

  friend bool operator==(const BarrierConfig&, const BarrierConfig&) = default;
};

struct OrderContribution {
  int n = 0;
  double sup_value = 0.0;       // sup |J_n|
  double sup_deriv = 0.0;       // sup |J_n'|
  double sup_over_r = 0.0;      // sup |J_n / r|
  double arg_value = 0.0;
  double arg_deriv = 0.0;
  double arg_over_r = 0.0;
  double s_n = 0.0;             // sup|J_n| + sup|J_n'| + n sup|J_n / r|

  friend bool operator==(const OrderContribution&, const OrderContribution&) = default;
};

struct SAccumulation {
  Interval radii;
  int truncation_order = 0;
  std::vector<OrderContribution> per_order;
  double partial_sum = 0.0;
  double tail_bound = 0.0;
  double certified_S_upper = 0.0;

  /// Sum of s_n for n >= from, plus the tail bound.
  double block_from(int from) const;

  friend bool operator==(const SAccumulation&, const SAccumulation&) = default;
};

struct BarrierCertificate {
  BarrierConfig config;
  double epsilon = 0.0;
  bool epsilon_auto = false;
  std::vector<Interval> bands;
  Interval annulus;
  SAccumulation S;
  HypothesisChecklist checklist;
  double threshold = 0.0;  // S / eps
  LogMagnitude probability;
  LogMagnitude probability_appendix_form;
  LogMagnitude mu_bound_kac_rice;
  LogMagnitude mu_bound_factor_ten;
  LogMagnitude mu_bound;  // the one selected by config.cns_convention

  friend bool operator==(const BarrierCertificate&, const BarrierCertificate&) = default;
};

/// j_{1,1} - j_{0,1}: the largest admissible delta.
double critical_gap();

/// (1/sqrt2) (delta/(1+delta)) sqrt(1 - delta^2/j^2) inf_{|r-j|<=delta} |J_0'(r)|
/// with j = j_{0,k}. No range check; zero once delta >= j.
double gradient_margin(double delta, int root_index);

/// gradient_margin capped just below the critical value |J_0(j_{1,k})|.
double max_epsilon(double delta, int root_index);

/// Largest admissible epsilon for the target.
double auto_epsilon(Target target, double delta);

/// [j_{0,1} - delta, j_{0,1} + delta] for mu0, [j_{0,1} - delta, j_{0,2} + delta] for mu1.
Interval barrier_annulus(Target target, double delta);

/// Bands k = 1 (mu0) or k = 1, 2, 3 (mu1). Throws BandUnbounded.
std::vector<Interval> required_bands(Target target, double eps);

HypothesisChecklist check_hypotheses(const BarrierConfig& config, double eps, const std::vector<Interval>& bands);

SAccumulation compute_S(double inner, double outer, int truncation_order);

/// gaussian_deficit_tail(sqrt(pi) S / eps).
LogMagnitude probability_lower_bound(double S, double eps);

/// log10 of the packing prefactor; (j + delta) is the outer barrier radius.
double log10_prefactor(CnsConvention convention, double outer_radius);

BarrierCertificate mu_lower_bound(const BarrierConfig& config);

/// Reproduces the tabulated per-order sums for the mu1 annulus the way the
/// published table states them: the J_n / r column is not multiplied by n,
/// and for n = 1 it is taken at the interior critical point of J_1 / r
/// rather than the supremum. Diagnostic only; not a certified bound.
struct PublishedTableRow {
  int n = 0;
  double u = 0.0, value_u = 0.0;
  double v = 0.0, value_v = 0.0;
  double w = 0.0, value_w = 0.0;
  double s_n = 0.0;
};

struct PublishedTable {
  std::vector<PublishedTableRow> rows;  // n = 1..6
  double tail = 0.0;                    // n = 7..100 at the outer radius
  double total = 0.0;
};

PublishedTable published_table_convention(double delta);

enum class PerturbationKind { random_series, constant };

struct ZeroCaptureReport {
  double delta = 0.0;
  double eps = 0.0;
  int trials = 0;
  std::uint64_t seed = 0;
  PerturbationKind kind = PerturbationKind::random_series;
  bool hypotheses_hold = false;
  int failures = 0;            // no sign change on the ray, or a root outside the band
  double worst_offset = 0.0;   // max |root - j_{0,1}| over trials
};

/// Draws perturbations p = sum_{n<=20} (a_n cos n theta + b_n sin n theta) J_n
/// scaled so a certified bound on the polar C^1 norm over the delta-annulus
/// equals 0.999 eps (or p = eps for the constant kind), and checks that
/// J_0 + p changes sign along a random ray inside [a_1(eps), b_1(eps)].
ZeroCaptureReport verify_zero_capture(double delta, double eps, int trials, std::uint64_t seed,
                                      PerturbationKind kind = PerturbationKind::random_series);

}  // namespace nodal
