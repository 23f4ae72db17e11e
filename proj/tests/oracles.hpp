#pragma once

// Reference values computed independently of the library: Boost special
// functions, 50-digit arithmetic, direct quadrature, and a plain flood fill.

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/erf.hpp>
#include <boost/math/special_functions/bessel_prime.hpp>
#include <boost/math/special_functions/expint.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <deque>
#include <limits>
#include <numbers>
#include <vector>

#include "nodal/simulate.hpp"

namespace oracle {

using big = boost::multiprecision::cpp_bin_float_50;

inline double bessel_j(int n, double r) { return boost::math::cyl_bessel_j(n, r); }
inline double bessel_j_prime(int n, double r) { return boost::math::cyl_bessel_j_prime(n, r); }
inline double bessel_zero(int n, int k) { return boost::math::cyl_bessel_j_zero(static_cast<double>(n), k); }

/// log10 Gamma(s, x) for s in {-1/2, 0, 1/2, 1} in 50-digit arithmetic.
inline double log10_upper_gamma(double s, double x) {
  const big X(x);
  big v;
  if (s == 1.0) {
    v = exp(-X);
  } else if (s == 0.5) {
    v = boost::math::tgamma(big(0.5), X);
  } else if (s == 0.0) {
    v = boost::math::expint(1, X);
  } else if (s == -0.5) {
    // Gamma(s + 1, x) = s Gamma(s, x) + x^s e^{-x}
    v = -2 * (boost::math::tgamma(big(0.5), X) - exp(-X) / sqrt(X));
  } else {
    throw std::invalid_argument("oracle: unsupported s");
  }
  return static_cast<double>(log10(v));
}

/// log10 of (2/sqrt(2 pi)) int_a^inf (1 - a/x) e^{-x^2/2} dx, with x = a + u
/// so that e^{-a^2/2} comes out analytically.
inline double log10_deficit_tail(double a) {
  boost::math::quadrature::exp_sinh<double> integrator;
  const double I = integrator.integrate([a](double u) { return u / (a + u) * std::exp(-a * u - 0.5 * u * u); });
  return std::log10(2.0 / std::sqrt(2.0 * std::numbers::pi) * I) - 0.5 * a * a / std::numbers::ln10;
}

/// F at (x, y) straight from the series, with oracle Bessel values.
inline double field_at(const nodal::WaveSample& w, double x, double y, int nmax) {
  const double r = std::hypot(x, y), t = std::atan2(y, x);
  double f = w.xi0 * bessel_j(0, r);
  for (int n = 1; n <= nmax; ++n)
    f += std::sqrt(2.0) * (w.xi[n] * std::cos(n * t) + w.eta[n] * std::sin(n * t)) * bessel_j(n, r);
  return f;
}

/// q = Gamma(1/2, T^2/2) - sqrt(1/2) sum_k r_k Gamma(1/2, T^2 / (2 (1 - J_0(r_k)^2)))
/// in 50-digit arithmetic, with Gamma(1/2, x) = sqrt(pi) erfc(sqrt x).
/// Returns log10 |q| and sets sign.
inline double log10_symmetrization_q(const std::vector<double>& radii, double T, int& sign) {
  const big half_gamma_scale = sqrt(boost::math::constants::pi<big>());
  auto G = [&](const big& x) { return half_gamma_scale * boost::math::erfc(sqrt(x)); };
  const big t2 = big(T) * big(T);
  big q = G(t2 / 2);
  for (double r : radii) {
    const big j = big(bessel_j(0, r));
    q -= sqrt(big(0.5)) * big(r) * G(t2 / (2 * (1 - j * j)));
  }
  sign = q > 0 ? 1 : (q < 0 ? -1 : 0);
  return sign == 0 ? -std::numeric_limits<double>::infinity() : static_cast<double>(log10(abs(q)));
}

/// Components by breadth-first flood fill: positive cells 4-connected,
/// non-positive cells 8-connected. Returns per-cell labels and the count.
inline std::vector<int> flood_labels(const nodal::FieldGrid& f, int& count) {
  const int n = f.grid.resolution;
  std::vector<int> lab(static_cast<std::size_t>(n) * n, -1);
  count = 0;
  for (int si = 0; si < n; ++si) {
    for (int sj = 0; sj < n; ++sj) {
      if (lab[si * n + sj] >= 0) continue;
      const bool p = f.at(si, sj) > 0.0;
      std::deque<std::pair<int, int>> q{{si, sj}};
      lab[si * n + sj] = count;
      while (!q.empty()) {
        auto [i, j] = q.front();
        q.pop_front();
        for (int di = -1; di <= 1; ++di) {
          for (int dj = -1; dj <= 1; ++dj) {
            if (di == 0 && dj == 0) continue;
            if (p && di != 0 && dj != 0) continue;
            const int a = i + di, b = j + dj;
            if (a < 0 || b < 0 || a >= n || b >= n) continue;
            if (lab[a * n + b] >= 0 || (f.at(a, b) > 0.0) != p) continue;
            lab[a * n + b] = count;
            q.emplace_back(a, b);
          }
        }
      }
      ++count;
    }
  }
  return lab;
}

/// Holes of the component `target` (sign `positive`): components of its
/// complement, padded by one ring, under the dual connectivity, minus one.
inline int flood_holes(const std::vector<int>& lab, int n, int target, bool positive) {
  const int m = n + 2;
  std::vector<char> in(static_cast<std::size_t>(m) * m, 0), seen(in.size(), 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) in[(i + 1) * m + j + 1] = lab[i * n + j] == target;
  const bool eight = positive;  // complement of a 4-connected set is 8-connected
  int parts = 0;
  for (int s = 0; s < m * m; ++s) {
    if (in[s] || seen[s]) continue;
    ++parts;
    std::deque<int> q{s};
    seen[s] = 1;
    while (!q.empty()) {
      const int c = q.front();
      q.pop_front();
      const int i = c / m, j = c % m;
      for (int di = -1; di <= 1; ++di) {
        for (int dj = -1; dj <= 1; ++dj) {
          if ((di == 0 && dj == 0) || (!eight && di != 0 && dj != 0)) continue;
          const int a = i + di, b = j + dj;
          if (a < 0 || b < 0 || a >= m || b >= m) continue;
          const int t = a * m + b;
          if (in[t] || seen[t]) continue;
          seen[t] = 1;
          q.push_back(t);
        }
      }
    }
  }
  return parts - 1;
}

}  // namespace oracle
