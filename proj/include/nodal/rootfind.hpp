#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace nodal {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double width() const { return hi - lo; }
  bool contains(double x) const { return lo <= x && x <= hi; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

struct NoSignChange : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The requested component of {|J_0| <= eps} is not separated from its
/// neighbours by a critical value larger than eps.
struct BandUnbounded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class ExtremumKind { abs_value, abs_deriv, abs_over_r };

std::string to_string(ExtremumKind kind);

struct ExtremumRecord {
  int order = 0;
  ExtremumKind kind = ExtremumKind::abs_value;
  double argmax = 0.0;
  double max_value = 0.0;
};

struct MinimumRecord {
  double argmin = 0.0;
  double min_value = 0.0;
};

inline constexpr double kDefaultRootTol = 1e-12;
inline constexpr int kExtremumScanPoints = 2048;

/// Brent's method: inverse quadratic interpolation with a bisection
/// fallback. The bracket stays valid at every step.
double find_root(const std::function<double(double)>& f, Interval bracket, double tol = kDefaultRootTol);

/// k-th positive zero of J_0 or J_1, k = 1..20.
double bessel_zero(int order, int k);

/// [a_k(eps), b_k(eps)]: the component of {|J_0| <= eps} around j_{0,k}.
Interval level_band(double eps, int k);

/// The signed function whose magnitude the extremum search works on:
/// J_n, J_n', or J_n / r.
double extremum_profile(ExtremumKind kind, int n, double r);

/// Supremum over the closed interval of |J_n|, |J_n'| or |J_n / r|.
ExtremumRecord interval_max(ExtremumKind kind, int n, Interval interval);

/// Infimum over the closed interval of the same magnitudes.
MinimumRecord interval_min(ExtremumKind kind, int n, Interval interval);

}  // namespace nodal
