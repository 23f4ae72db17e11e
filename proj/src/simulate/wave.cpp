#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "nodal/kernels.hpp"
#include "nodal/simulate.hpp"
#include "nodal/specfun.hpp"

namespace nodal {
namespace {

std::int32_t fold(int i, int n) { return std::min(i, n - 1 - i); }

}  // namespace

WaveSample sample_wave(int n_terms, std::uint64_t seed, std::uint64_t index, std::optional<double> xi0_override) {
  if (n_terms < 1) throw std::invalid_argument("sample_wave: n_terms must be >= 1");
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> normal;
  WaveSample s;
  s.n_terms = n_terms;
  s.seed = seed;
  s.index = index;
  s.xi0_override = xi0_override;
  s.xi.assign(n_terms + 1, 0.0);
  s.eta.assign(n_terms + 1, 0.0);
  s.xi0 = normal(rng);
  for (int n = 1; n <= n_terms; ++n) {
    s.xi[n] = normal(rng);
    s.eta[n] = normal(rng);
  }
  if (xi0_override) s.xi0 = *xi0_override;
  return s;
}

void GridSpec::validate() const {
  if (resolution < 64) throw std::invalid_argument("grid: resolution must be >= 64");
  if (!(half_width > 0.0) || half_width > kBesselMaxArg)
    throw RangeError("grid: half width must lie in (0, 100]");
  if (!(counting_radius > 0.0) || !(counting_radius < half_width))
    throw std::invalid_argument("grid: counting radius must satisfy 0 < R < L");
}

FieldEvaluator::FieldEvaluator(const GridSpec& grid, int n_terms, std::size_t max_cache_bytes)
    : grid_(grid), n_terms_(n_terms) {
  grid_.validate();
  if (n_terms < 1 || n_terms > kBesselMaxOrder) throw RangeError("field: n_terms must lie in 1..512");
  const int n = grid_.resolution;
  const std::size_t points = static_cast<std::size_t>(n) * n;
  cos1_.resize(points);
  sin1_.resize(points);
  col_.resize(points);
  const std::size_t half = (n + 1) / 2;
  columns_ = half * (half + 1) / 2;
  cached_ = columns_ * (n_terms_ + 1) * sizeof(double) <= max_cache_bytes;

  for (int i = 0; i < n; ++i) {
    const double y = grid_.coord(i);
    for (int j = 0; j < n; ++j) {
      const double x = grid_.coord(j);
      const double r = std::hypot(x, y);
      const std::size_t p = static_cast<std::size_t>(i) * n + j;
      cos1_[p] = r > 0.0 ? x / r : 1.0;
      sin1_[p] = r > 0.0 ? y / r : 0.0;
      if (cached_) {
        const std::int32_t a = std::min(fold(i, n), fold(j, n));
        const std::int32_t b = std::max(fold(i, n), fold(j, n));
        col_[p] = b * (b + 1) / 2 + a;
      } else {
        col_[p] = j;
      }
    }
  }
  if (!cached_) return;
  std::vector<double> radii(columns_);
  for (std::int32_t b = 0; b < static_cast<std::int32_t>(half); ++b)
    for (std::int32_t a = 0; a <= b; ++a) radii[b * (b + 1) / 2 + a] = std::hypot(grid_.coord(a), grid_.coord(b));
  table_.resize(columns_ * (n_terms_ + 1));
  kernels::bessel_table(radii.data(), columns_, n_terms_, table_.data());
}

void FieldEvaluator::evaluate(const WaveSample& sample, double* out) const {
  if (sample.n_terms < n_terms_) throw std::invalid_argument("field: sample has fewer terms than the evaluator");
  const int n = grid_.resolution;
  kernels::HarmonicArgs args{};
  args.nmax = n_terms_;
  args.xi0 = sample.xi0;
  args.xi = sample.xi.data();
  args.eta = sample.eta.data();
  if (cached_) {
    args.cos1 = cos1_.data();
    args.sin1 = sin1_.data();
    args.col = col_.data();
    args.count = cos1_.size();
    args.table = table_.data();
    args.stride = columns_;
    kernels::harmonic_sum(args, out);
    return;
  }
  std::vector<double> radii(n);
  std::vector<double> row_table(static_cast<std::size_t>(n) * (n_terms_ + 1));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) radii[j] = std::hypot(grid_.coord(j), grid_.coord(i));
    kernels::bessel_table(radii.data(), n, n_terms_, row_table.data());
    const std::size_t off = static_cast<std::size_t>(i) * n;
    args.cos1 = cos1_.data() + off;
    args.sin1 = sin1_.data() + off;
    args.col = col_.data() + off;
    args.count = n;
    args.table = row_table.data();
    args.stride = n;
    kernels::harmonic_sum(args, out + off);
  }
}

FieldGrid FieldEvaluator::evaluate(const WaveSample& sample) const {
  FieldGrid f;
  f.grid = grid_;
  f.values.resize(static_cast<std::size_t>(grid_.resolution) * grid_.resolution);
  evaluate(sample, f.values.data());
  return f;
}

FieldGrid evaluate_field(const WaveSample& sample, const GridSpec& grid) {
  return FieldEvaluator(grid, sample.n_terms).evaluate(sample);
}

}  // namespace nodal
