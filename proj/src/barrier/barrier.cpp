#include "nodal/barrier.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "nodal/numeric.hpp"
#include "nodal/specfun.hpp"

namespace nodal {
namespace {

double j0k(int k) { return bessel_zero(0, k); }
double j1k(int k) { return bessel_zero(1, k); }

// |J_0| at the k-th positive critical point.
double critical_value(int k) { return std::fabs(bessel_j(0, j1k(k))); }

double log_taylor_bound(int n, double r) { return n * std::log(0.5 * r) - std::lgamma(n + 1.0); }

}  // namespace

std::string to_string(Target t) { return t == Target::mu0 ? "mu0" : "mu1"; }

std::string to_string(CnsConvention c) {
  return c == CnsConvention::kac_rice_exact ? "kac_rice_exact" : "paper_factor_ten";
}

Target parse_target(const std::string& s) {
  if (s == "mu0") return Target::mu0;
  if (s == "mu1") return Target::mu1;
  throw std::invalid_argument("unknown target '" + s + "' (expected mu0 or mu1)");
}

CnsConvention parse_cns_convention(const std::string& s) {
  if (s == "kac_rice_exact") return CnsConvention::kac_rice_exact;
  if (s == "paper_factor_ten") return CnsConvention::paper_factor_ten;
  throw std::invalid_argument("unknown c_NS convention '" + s + "'");
}

double SAccumulation::block_from(int from) const {
  CompensatedSum sum;
  for (const auto& c : per_order)
    if (c.n >= from) sum.add(c.s_n);
  sum.add(tail_bound);
  return sum.value();
}

double critical_gap() { return j1k(1) - j0k(1); }

double gradient_margin(double delta, int root_index) {
  if (root_index != 1 && root_index != 2) throw RangeError("gradient_margin: root index must be 1 or 2");
  const double j = j0k(root_index);
  if (!(delta > 0.0) || delta >= j) return 0.0;
  const double inf_slope = interval_min(ExtremumKind::abs_deriv, 0, {j - delta, j + delta}).min_value;
  return std::numbers::sqrt2 / 2.0 * (delta / (1.0 + delta)) * std::sqrt(1.0 - delta * delta / (j * j)) * inf_slope;
}

double max_epsilon(double delta, int root_index) {
  if (!(delta > 0.0) || delta >= critical_gap())
    throw RangeError("max_epsilon: delta must lie in (0, " + std::to_string(critical_gap()) + ")");
  const double cap = std::nextafter(critical_value(root_index), 0.0);
  return std::min(gradient_margin(delta, root_index), cap);
}

double auto_epsilon(Target target, double delta) {
  const double e1 = max_epsilon(delta, 1);
  return target == Target::mu0 ? e1 : std::min(e1, max_epsilon(delta, 2));
}

Interval barrier_annulus(Target target, double delta) {
  return {j0k(1) - delta, (target == Target::mu0 ? j0k(1) : j0k(2)) + delta};
}

std::vector<Interval> required_bands(Target target, double eps) {
  std::vector<Interval> bands{level_band(eps, 1)};
  if (target == Target::mu1) {
    bands.push_back(level_band(eps, 2));
    bands.push_back(level_band(eps, 3));
  }
  return bands;
}

HypothesisChecklist check_hypotheses(const BarrierConfig& config, double eps, const std::vector<Interval>& bands) {
  HypothesisChecklist list;
  const double delta = config.delta;
  const double j1 = j0k(1);
  list.require_less("delta_below_critical_gap", delta, critical_gap());

  if (config.target == Target::mu0) {
    list.require_less("eps_below_first_critical_value", eps, critical_value(1));
    list.require_less("eps_within_gradient_margin", eps, gradient_margin(delta, 1), false);
    if (bands.size() < 1) {
      list.record_failure("bands_bounded");
      return list;
    }
    list.require_less("band_inside_annulus_left", j1 - delta, bands[0].lo);
    list.require_less("band_inside_annulus_right", bands[0].hi, j1 + delta);
    return list;
  }

  const double j2 = j0k(2);
  list.require_less("eps_below_critical_values", eps, std::min(critical_value(1), critical_value(2)));
  list.require_less("eps_within_gradient_margin_first_root", eps, gradient_margin(delta, 1), false);
  list.require_less("eps_within_gradient_margin_second_root", eps, gradient_margin(delta, 2), false);
  if (bands.size() < 3) {
    list.record_failure("bands_bounded");
    return list;
  }
  const Interval& b1 = bands[0];
  const Interval& b2 = bands[1];
  const Interval& b3 = bands[2];
  list.require_less("delta_below_gap_to_second_band", delta, b2.lo - j1);
  list.require_less("delta_below_gap_from_first_band", delta, j2 - b1.hi);
  list.require_less("delta_below_gap_to_third_band", delta, b3.lo - j2);
  list.require_less("first_band_area_below_minimal_domain", b1.hi * b1.hi - b1.lo * b1.lo, j1 * j1);
  list.require_less("second_band_area_below_minimal_domain", b2.hi * b2.hi - b2.lo * b2.lo, j1 * j1);
  list.require_less("bands_inside_annulus_left", j1 - delta, b1.lo);
  list.require_less("bands_inside_annulus_right", b2.hi, j2 + delta);
  return list;
}

SAccumulation compute_S(double inner, double outer, int truncation_order) {
  if (!(inner > 0.0) || !(outer > inner) || outer > kBesselMaxArg)
    throw RangeError("compute_S: need 0 < inner < outer <= 100");
  if (truncation_order < 10 || truncation_order + 1 > kBesselMaxOrder)
    throw RangeError("compute_S: truncation order must be in 10..511");
  SAccumulation acc;
  acc.radii = {inner, outer};
  acc.truncation_order = truncation_order;
  CompensatedSum partial;
  for (int n = 1; n <= truncation_order; ++n) {
    const ExtremumRecord v = interval_max(ExtremumKind::abs_value, n, acc.radii);
    const ExtremumRecord d = interval_max(ExtremumKind::abs_deriv, n, acc.radii);
    const ExtremumRecord q = interval_max(ExtremumKind::abs_over_r, n, acc.radii);
    OrderContribution c;
    c.n = n;
    c.sup_value = v.max_value;
    c.sup_deriv = d.max_value;
    c.sup_over_r = q.max_value;
    c.arg_value = v.argmax;
    c.arg_deriv = d.argmax;
    c.arg_over_r = q.argmax;
    c.s_n = c.sup_value + c.sup_deriv + n * c.sup_over_r;
    partial.add(c.s_n);
    acc.per_order.push_back(c);
  }
  // For n > N every term is bounded through B_m = (R/2)^m / m! at the outer
  // radius: S_n <= B_{n-1} + B_n + B_{n+1}. Summing and bounding the
  // geometric remainder by the ratio at m = N + 2 gives the tail.
  const int N = truncation_order;
  auto B = [outer](int m) { return std::exp(log_taylor_bound(m, outer)); };
  const double rho = 0.5 * outer / (N + 3);
  if (rho >= 1.0) throw RangeError("compute_S: truncation order too small for the outer radius");
  acc.partial_sum = partial.value();
  acc.tail_bound = B(N) + 2.0 * B(N + 1) + 3.0 * B(N + 2) / (1.0 - rho);
  acc.certified_S_upper = acc.partial_sum + acc.tail_bound;
  return acc;
}

LogMagnitude probability_lower_bound(double S, double eps) {
  if (!(S > 0.0) || !(eps > 0.0)) throw RangeError("probability_lower_bound: S and eps must be positive");
  return gaussian_deficit_tail(std::sqrt(std::numbers::pi) * S / eps);
}

double log10_prefactor(CnsConvention convention, double outer_radius) {
  const double r2 = outer_radius * outer_radius;
  // mu >= (1/c_NS) / (sqrt12 (j + delta)^2) P. With 1/c_NS >= 2 pi sqrt3 the
  // constant is pi; the factor-ten chain uses 1/c_NS > 10.
  if (convention == CnsConvention::kac_rice_exact) return std::log10(std::numbers::pi / r2);
  return std::log10(10.0 / (r2 * std::sqrt(12.0)));
}

BarrierCertificate mu_lower_bound(const BarrierConfig& config) {
  if (!(config.delta > 0.0)) throw RangeError("mu_lower_bound: delta must be positive");
  BarrierCertificate cert;
  cert.config = config;
  cert.epsilon_auto = !config.epsilon.has_value();
  if (cert.epsilon_auto) {
    if (config.delta >= critical_gap()) {
      HypothesisChecklist list;
      list.require_less("delta_below_critical_gap", config.delta, critical_gap());
      throw HypothesisFailure(std::move(list));
    }
    cert.epsilon = auto_epsilon(config.target, config.delta);
  } else {
    cert.epsilon = *config.epsilon;
    if (!(cert.epsilon > 0.0)) throw RangeError("mu_lower_bound: epsilon must be positive");
  }

  try {
    cert.bands = required_bands(config.target, cert.epsilon);
  } catch (const BandUnbounded&) {
    cert.bands.clear();
  }
  cert.checklist = check_hypotheses(config, cert.epsilon, cert.bands);
  if (!cert.checklist.all_satisfied()) throw HypothesisFailure(cert.checklist);

  cert.annulus = barrier_annulus(config.target, config.delta);
  cert.S = compute_S(cert.annulus.lo, cert.annulus.hi, config.truncation_order);
  cert.threshold = cert.S.certified_S_upper / cert.epsilon;
  const double a = std::sqrt(std::numbers::pi) * cert.threshold;
  cert.probability = gaussian_deficit_tail(a);
  cert.probability_appendix_form = gaussian_deficit_tail_appendix(a);

  const double outer = cert.annulus.hi;
  cert.mu_bound_kac_rice =
      cert.probability * LogMagnitude::from_log10(log10_prefactor(CnsConvention::kac_rice_exact, outer));
  cert.mu_bound_factor_ten =
      cert.probability * LogMagnitude::from_log10(log10_prefactor(CnsConvention::paper_factor_ten, outer));
  cert.mu_bound = config.cns_convention == CnsConvention::kac_rice_exact ? cert.mu_bound_kac_rice
                                                                         : cert.mu_bound_factor_ten;
  return cert;
}

PublishedTable published_table_convention(double delta) {
  const Interval iv = barrier_annulus(Target::mu1, delta);
  PublishedTable table;
  CompensatedSum total;
  for (int n = 1; n <= 6; ++n) {
    PublishedTableRow row;
    row.n = n;
    const ExtremumRecord u = interval_max(ExtremumKind::abs_value, n, iv);
    const ExtremumRecord w = interval_max(ExtremumKind::abs_deriv, n, iv);
    row.u = u.argmax;
    row.value_u = u.max_value;
    row.w = w.argmax;
    row.value_w = w.max_value;
    if (n == 1) {
      // The interior critical point of J_1 / r, which is a local maximum of
      // |J_1 / r| but not the supremum over the interval.
      row.v = find_root([](double r) { return bessel_j_over_r_deriv(1, r); }, {j0k(2) - 1.0, iv.hi});
    } else {
      row.v = interval_max(ExtremumKind::abs_over_r, n, iv).argmax;
    }
    row.value_v = std::fabs(bessel_j(n, row.v) / row.v);
    row.s_n = row.value_u + row.value_v + row.value_w;
    total.add(row.s_n);
    table.rows.push_back(row);
  }
  const double R = iv.hi;
  CompensatedSum tail;
  for (int n = 7; n <= 100; ++n)
    tail.add((1.0 + n / R) * std::fabs(bessel_j(n, R)) + std::fabs(bessel_j_deriv(n, R)));
  table.tail = tail.value();
  total.add(table.tail);
  table.total = total.value();
  return table;
}

}  // namespace nodal
