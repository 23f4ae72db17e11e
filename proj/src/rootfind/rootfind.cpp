#include "nodal/rootfind.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "nodal/specfun.hpp"

namespace nodal {
namespace {

constexpr int kMaxZeroIndex = 20;
constexpr int kRefineCandidates = 4;

std::array<double, kMaxZeroIndex> tabulate_zeros(int order) {
  std::array<double, kMaxZeroIndex> zeros{};
  const double shift = order == 0 ? -0.25 : 0.25;
  for (int k = 1; k <= kMaxZeroIndex; ++k) {
    // McMahon's leading term; the true zero lies well within 0.6 of it.
    const double guess = (k + shift) * std::numbers::pi;
    zeros[k - 1] = find_root([order](double r) { return bessel_j(order, r); }, {guess - 0.6, guess + 0.6});
  }
  return zeros;
}

double profile_slope(ExtremumKind kind, int n, double r) {
  switch (kind) {
    case ExtremumKind::abs_value:
      return bessel_j_deriv(n, r);
    case ExtremumKind::abs_deriv:
      return bessel_j_deriv2(n, r);
    case ExtremumKind::abs_over_r:
      return bessel_j_over_r_deriv(n, r);
  }
  return 0.0;
}

void check_interval(ExtremumKind kind, Interval iv) {
  if (!(iv.lo < iv.hi)) throw RangeError("extremum search: interval must satisfy lo < hi");
  if (iv.lo < 0.0) throw RangeError("extremum search: interval must be nonnegative");
  if (kind == ExtremumKind::abs_over_r && iv.lo <= 0.0)
    throw RangeError("extremum search: J_n / r needs a positive interval");
}

struct Scan {
  std::vector<double> r;
  std::vector<double> g;
};

Scan scan(ExtremumKind kind, int n, Interval iv) {
  Scan s;
  s.r.resize(kExtremumScanPoints);
  s.g.resize(kExtremumScanPoints);
  for (int i = 0; i < kExtremumScanPoints; ++i) {
    s.r[i] = i + 1 == kExtremumScanPoints ? iv.hi : iv.lo + iv.width() * i / (kExtremumScanPoints - 1);
    s.g[i] = extremum_profile(kind, n, s.r[i]);
  }
  return s;
}

// Polishes an interior sample extremum of |g| by solving g' = 0 between its
// neighbours. Falls back to the sample when g' does not change sign there.
std::pair<double, double> polish(ExtremumKind kind, int n, const Scan& s, int i) {
  const double lo = s.r[i - 1];
  const double hi = s.r[i + 1];
  auto slope = [kind, n](double r) { return profile_slope(kind, n, r); };
  const double slo = slope(lo);
  const double shi = slope(hi);
  if (slo == 0.0) return {lo, std::fabs(extremum_profile(kind, n, lo))};
  if (shi == 0.0) return {hi, std::fabs(extremum_profile(kind, n, hi))};
  if ((slo < 0.0) == (shi < 0.0)) return {s.r[i], std::fabs(s.g[i])};
  const double x = find_root(slope, {lo, hi});
  return {x, std::fabs(extremum_profile(kind, n, x))};
}

std::vector<int> top_interior(const Scan& s, bool maxima) {
  std::vector<int> idx;
  for (int i = 1; i + 1 < kExtremumScanPoints; ++i) {
    const double a = std::fabs(s.g[i - 1]);
    const double b = std::fabs(s.g[i]);
    const double c = std::fabs(s.g[i + 1]);
    if (maxima ? (b >= a && b >= c) : (b <= a && b <= c)) idx.push_back(i);
  }
  std::stable_sort(idx.begin(), idx.end(), [&](int x, int y) {
    return maxima ? std::fabs(s.g[x]) > std::fabs(s.g[y]) : std::fabs(s.g[x]) < std::fabs(s.g[y]);
  });
  if (idx.size() > kRefineCandidates) idx.resize(kRefineCandidates);
  return idx;
}

}  // namespace

std::string to_string(ExtremumKind kind) {
  switch (kind) {
    case ExtremumKind::abs_value:
      return "abs_value";
    case ExtremumKind::abs_deriv:
      return "abs_deriv";
    case ExtremumKind::abs_over_r:
      return "abs_over_r";
  }
  return "unknown";
}

double find_root(const std::function<double(double)>& f, Interval bracket, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("find_root: tol must be positive");
  constexpr double eps = std::numeric_limits<double>::epsilon();
  double a = bracket.lo, b = bracket.hi, c = bracket.hi;
  double fa = f(a), fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa > 0.0) == (fb > 0.0) || std::isnan(fa) || std::isnan(fb))
    throw NoSignChange("find_root: f has the same sign at both ends of [" + std::to_string(a) + ", " +
                       std::to_string(b) + "]");
  double fc = fb;
  double d = 0.0, e = 0.0;
  for (int iter = 0; iter < 1000; ++iter) {
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      e = d = b - a;
    }
    if (std::fabs(fc) < std::fabs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    const double tol1 = 2.0 * eps * std::fabs(b) + 0.5 * tol;
    const double xm = 0.5 * (c - b);
    if (std::fabs(xm) <= tol1 || fb == 0.0) return b;
    if (std::fabs(e) >= tol1 && std::fabs(fa) > std::fabs(fb)) {
      const double s = fb / fa;
      double p, q;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        const double qa = fa / fc;
        const double r = fb / fc;
        p = s * (2.0 * xm * qa * (qa - r) - (b - a) * (r - 1.0));
        q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::fabs(p);
      const double min1 = 3.0 * xm * q - std::fabs(tol1 * q);
      const double min2 = std::fabs(e * q);
      if (2.0 * p < std::min(min1, min2)) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    b += std::fabs(d) > tol1 ? d : std::copysign(tol1, xm);
    fb = f(b);
  }
  return b;
}

double bessel_zero(int order, int k) {
  if (order != 0 && order != 1) throw RangeError("bessel_zero: order must be 0 or 1");
  if (k < 1 || k > kMaxZeroIndex) throw RangeError("bessel_zero: index must be in 1..20");
  static const std::array<double, kMaxZeroIndex> zeros0 = tabulate_zeros(0);
  static const std::array<double, kMaxZeroIndex> zeros1 = tabulate_zeros(1);
  return order == 0 ? zeros0[k - 1] : zeros1[k - 1];
}

Interval level_band(double eps, int k) {
  if (!(eps > 0.0)) throw RangeError("level_band: eps must be positive");
  const double left_crit = k == 1 ? 0.0 : bessel_zero(1, k - 1);
  const double right_crit = bessel_zero(1, k);
  const double zero = bessel_zero(0, k);
  const double left_val = bessel_j(0, left_crit);
  const double right_val = bessel_j(0, right_crit);
  if (std::fabs(left_val) <= eps || std::fabs(right_val) <= eps)
    throw BandUnbounded("level_band: eps=" + std::to_string(eps) + " reaches the critical value " +
                        std::to_string(std::min(std::fabs(left_val), std::fabs(right_val))) +
                        " next to the zero j_0," + std::to_string(k));
  // J_0 is monotone between the neighbouring critical points.
  const double sl = left_val > 0.0 ? 1.0 : -1.0;
  const double sr = right_val > 0.0 ? 1.0 : -1.0;
  const double a = find_root([&](double r) { return sl * bessel_j(0, r) - eps; }, {left_crit, zero});
  const double b = find_root([&](double r) { return sr * bessel_j(0, r) - eps; }, {zero, right_crit});
  return {a, b};
}

double extremum_profile(ExtremumKind kind, int n, double r) {
  switch (kind) {
    case ExtremumKind::abs_value:
      return bessel_j(n, r);
    case ExtremumKind::abs_deriv:
      return bessel_j_deriv(n, r);
    case ExtremumKind::abs_over_r:
      return bessel_j(n, r) / r;
  }
  return 0.0;
}

ExtremumRecord interval_max(ExtremumKind kind, int n, Interval interval) {
  check_interval(kind, interval);
  const Scan s = scan(kind, n, interval);
  ExtremumRecord rec{n, kind, s.r.front(), std::fabs(s.g.front())};
  if (std::fabs(s.g.back()) > rec.max_value) {
    rec.argmax = s.r.back();
    rec.max_value = std::fabs(s.g.back());
  }
  for (int i : top_interior(s, true)) {
    const auto [x, v] = polish(kind, n, s, i);
    if (v > rec.max_value) {
      rec.argmax = x;
      rec.max_value = v;
    }
  }
  return rec;
}

MinimumRecord interval_min(ExtremumKind kind, int n, Interval interval) {
  check_interval(kind, interval);
  const Scan s = scan(kind, n, interval);
  for (int i = 0; i + 1 < kExtremumScanPoints; ++i) {
    if (s.g[i] == 0.0) return {s.r[i], 0.0};
    if ((s.g[i] > 0.0) != (s.g[i + 1] > 0.0) && s.g[i + 1] != 0.0) {
      const double x = find_root([&](double r) { return extremum_profile(kind, n, r); }, {s.r[i], s.r[i + 1]});
      return {x, 0.0};
    }
  }
  if (s.g.back() == 0.0) return {s.r.back(), 0.0};
  MinimumRecord rec{s.r.front(), std::fabs(s.g.front())};
  if (std::fabs(s.g.back()) < rec.min_value) rec = {s.r.back(), std::fabs(s.g.back())};
  for (int i : top_interior(s, false)) {
    const auto [x, v] = polish(kind, n, s, i);
    if (v < rec.min_value) rec = {x, v};
  }
  return rec;
}

}  // namespace nodal
