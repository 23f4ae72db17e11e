#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>
#include <vector>

#include "nodal/census.hpp"
#include "nodal/kernels.hpp"
#include "nodal/numeric.hpp"
#include "nodal/simulate.hpp"
#include "nodal/specfun.hpp"

namespace nodal {
namespace {

constexpr int kMaxBatches = 20;

// Runs body(index) for index in [0, count) on `workers` threads, each taking
// a strided share. Results must be written to per-index slots.
template <class Body>
void parallel_for(int count, int workers, Body body) {
  workers = std::max(1, std::min(workers, count));
  if (workers == 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (int i = w; i < count; i += workers) body(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

struct SampleCounts {
  std::vector<long> by_holes;  // h = 0..h_max
  long domains = 0;
  long nodal_components = 0;
  long fk_flags = 0;
  long euler_violations = 0;
  bool mass_ok = true;
  std::map<std::string, long> histogram;
};

double mean_and_se(const std::vector<double>& xs, double& se) {
  CompensatedSum sum;
  for (double x : xs) sum.add(x);
  const double mean = sum.value() / xs.size();
  se = 0.0;
  if (xs.size() < 2) return mean;
  CompensatedSum ss;
  for (double x : xs) ss.add((x - mean) * (x - mean));
  se = std::sqrt(ss.value() / (xs.size() - 1) / xs.size());
  return mean;
}

}  // namespace

EnsembleStats estimate_mu(const EnsembleOptions& opt) {
  if (opt.n_samples < 1) throw std::invalid_argument("estimate_mu: n_samples must be >= 1");
  if (opt.h_max < 0) throw std::invalid_argument("estimate_mu: h_max must be >= 0");
  const FieldEvaluator evaluator(opt.grid, opt.n_terms);
  std::vector<SampleCounts> per(opt.n_samples);

  parallel_for(opt.n_samples, opt.workers, [&](int s) {
    const WaveSample w = sample_wave(opt.n_terms, opt.seed, static_cast<std::uint64_t>(s), opt.xi0_override);
    const NodalCensus c = nodal_census(evaluator.evaluate(w));
    SampleCounts& out = per[s];
    out.by_holes.assign(opt.h_max + 1, 0);
    for (int h = 0; h <= opt.h_max; ++h) out.by_holes[h] = c.count_with_holes(h);
    out.domains = c.n_interior_domains;
    out.nodal_components = c.n_interior_nodal_components;
    out.fk_flags = c.faber_krahn_flags;
    out.euler_violations = c.euler_violations;
    long mass = 0;
    for (const auto& [shape, count] : c.tree_end_histogram) mass += count;
    out.mass_ok = mass == c.n_interior_nodal_components;
    out.histogram = c.tree_end_histogram;
  });

  EnsembleStats st;
  st.n_samples = opt.n_samples;
  st.grid = opt.grid;
  st.n_terms = opt.n_terms;
  st.seed = opt.seed;
  std::vector<long> totals(opt.h_max + 1, 0);
  for (const auto& p : per) {
    for (int h = 0; h <= opt.h_max; ++h) totals[h] += p.by_holes[h];
    st.total_interior_domains += p.domains;
    st.total_interior_nodal_components += p.nodal_components;
    st.faber_krahn_flags += p.fk_flags;
    st.euler_violations += p.euler_violations;
    if (!p.mass_ok) ++st.histogram_mass_mismatches;
    for (const auto& [shape, count] : p.histogram) st.tree_end_histogram[shape] += count;
  }

  // Ratio estimator; standard errors from contiguous batch ratios.
  const int batches = std::min(kMaxBatches, opt.n_samples);
  st.mu_hat.assign(opt.h_max + 1, 0.0);
  st.mu_se.assign(opt.h_max + 1, 0.0);
  for (int h = 0; h <= opt.h_max; ++h) {
    if (st.total_interior_domains > 0) st.mu_hat[h] = static_cast<double>(totals[h]) / st.total_interior_domains;
    if (batches < 2) continue;
    std::vector<double> ratios;
    for (int b = 0; b < batches; ++b) {
      const int lo = static_cast<int>(static_cast<long>(b) * opt.n_samples / batches);
      const int hi = static_cast<int>(static_cast<long>(b + 1) * opt.n_samples / batches);
      long num = 0, den = 0;
      for (int s = lo; s < hi; ++s) {
        num += per[s].by_holes[h];
        den += per[s].domains;
      }
      if (den > 0) ratios.push_back(static_cast<double>(num) / den);
    }
    if (ratios.size() >= 2) mean_and_se(ratios, st.mu_se[h]);
  }

  const double area = std::numbers::pi * opt.grid.counting_radius * opt.grid.counting_radius;
  std::vector<double> density(opt.n_samples);
  for (int s = 0; s < opt.n_samples; ++s) density[s] = per[s].nodal_components / area;
  st.cns_hat = mean_and_se(density, st.cns_se);
  return st;
}

CrossingStats circle_crossings(double radius, double xi0, int n_samples, int n_terms, std::uint64_t seed,
                               int n_angles, int workers) {
  if (n_samples < 1) throw std::invalid_argument("circle_crossings: n_samples must be >= 1");
  if (n_angles < 4096) throw std::invalid_argument("circle_crossings: need at least 4096 angles");
  if (!(radius > 0.0) || radius > kBesselMaxArg) throw RangeError("circle_crossings: radius outside (0, 100]");
  std::vector<double> J(n_terms + 1);
  bessel_j_sequence(n_terms, radius, J.data());
  // Orders whose J_n is below 1e-18 cannot move the sign of an O(1) field.
  int nmax = n_terms;
  while (nmax > 1 && std::fabs(J[nmax]) < 1e-18) --nmax;

  std::vector<double> c1(n_angles), s1(n_angles);
  const std::vector<std::int32_t> col(n_angles, 0);
  for (int k = 0; k < n_angles; ++k) {
    const double t = 2.0 * std::numbers::pi * k / n_angles;
    c1[k] = std::cos(t);
    s1[k] = std::sin(t);
  }

  std::vector<int> counts(n_samples);
  parallel_for(n_samples, workers, [&](int s) {
    const WaveSample w = sample_wave(n_terms, seed, static_cast<std::uint64_t>(s), xi0);
    kernels::HarmonicArgs a{c1.data(), s1.data(), col.data(), static_cast<std::size_t>(n_angles), J.data(), 1,
                            nmax, w.xi0, w.xi.data(), w.eta.data()};
    std::vector<double> v(n_angles);
    kernels::harmonic_sum(a, v.data());
    int changes = 0;
    for (int k = 0; k < n_angles; ++k) changes += (v[k] > 0.0) != (v[(k + 1) % n_angles] > 0.0);
    counts[s] = changes;
  });

  CrossingStats st;
  st.radius = radius;
  st.xi0 = xi0;
  st.n_samples = n_samples;
  st.n_angles = n_angles;
  std::vector<double> xs(counts.begin(), counts.end());
  st.mean = mean_and_se(xs, st.standard_error);
  long even = 0;
  for (int c : counts) even += c % 2 == 0;
  st.fraction_even = static_cast<double>(even) / n_samples;
  return st;
}

}  // namespace nodal
