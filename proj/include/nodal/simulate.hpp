#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace nodal {

/// One draw of F = xi0 J_0(r) + sqrt2 sum_{n=1}^N (xi_n cos n theta + eta_n sin n theta) J_n(r).
struct WaveSample {
  double xi0 = 0.0;
  std::vector<double> xi;   // xi[1..N]; xi[0] unused
  std::vector<double> eta;  // eta[1..N]; eta[0] unused
  int n_terms = 0;
  std::uint64_t seed = 0;
  std::uint64_t index = 0;
  std::optional<double> xi0_override;

  friend bool operator==(const WaveSample&, const WaveSample&) = default;
};

/// Coefficients are standard normals drawn from a stream keyed by
/// (seed, index) in the order xi0, xi1, eta1, xi2, eta2, ... The override
/// replaces xi0 after the draw, so the other coefficients do not move.
WaveSample sample_wave(int n_terms, std::uint64_t seed, std::uint64_t index = 0,
                       std::optional<double> xi0_override = std::nullopt);

struct GridSpec {
  double half_width = 20.0;      // box [-L, L]^2
  int resolution = 500;          // points per axis
  double counting_radius = 18.0;

  double coord(int i) const { return -half_width + 2.0 * half_width * i / (resolution - 1); }
  double spacing() const { return 2.0 * half_width / (resolution - 1); }
  double cell_area() const { return spacing() * spacing(); }
  void validate() const;

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

/// values[i * n + j] is F at (x, y) = (coord(j), coord(i)).
struct FieldGrid {
  GridSpec grid;
  std::vector<double> values;

  double at(int i, int j) const { return values[static_cast<std::size_t>(i) * grid.resolution + j]; }
};

/// Caches J_n over the distinct radii of a grid (the grid is symmetric under
/// x -> -x, y -> -y and x <-> y) so repeated samples only pay for the angular
/// sum. Falls back to per-row tables when the cache would be too large.
class FieldEvaluator {
 public:
  static constexpr std::size_t kDefaultCacheBytes = std::size_t{512} << 20;

  FieldEvaluator(const GridSpec& grid, int n_terms, std::size_t max_cache_bytes = kDefaultCacheBytes);

  const GridSpec& grid() const { return grid_; }
  int n_terms() const { return n_terms_; }
  bool cached() const { return cached_; }

  void evaluate(const WaveSample& sample, double* out) const;
  FieldGrid evaluate(const WaveSample& sample) const;

 private:
  GridSpec grid_;
  int n_terms_;
  bool cached_ = false;
  std::vector<double> cos1_, sin1_;
  std::vector<std::int32_t> col_;   // column of each grid point in table_
  std::vector<double> table_;       // n-major, stride columns_
  std::size_t columns_ = 0;
};

FieldGrid evaluate_field(const WaveSample& sample, const GridSpec& grid);

struct EnsembleOptions {
  GridSpec grid;
  int n_terms = 100;
  int n_samples = 200;
  std::uint64_t seed = 1;
  int workers = 1;
  int h_max = 8;
  std::optional<double> xi0_override;
};

struct EnsembleStats {
  int n_samples = 0;
  GridSpec grid;
  int n_terms = 0;
  std::uint64_t seed = 0;
  std::vector<double> mu_hat;     // h = 0..h_max
  std::vector<double> mu_se;
  double cns_hat = 0.0;
  double cns_se = 0.0;
  long total_interior_domains = 0;
  long total_interior_nodal_components = 0;
  long faber_krahn_flags = 0;
  long euler_violations = 0;
  long histogram_mass_mismatches = 0;
  std::map<std::string, long> tree_end_histogram;

  friend bool operator==(const EnsembleStats&, const EnsembleStats&) = default;
};

/// Results are identical for any worker count.
EnsembleStats estimate_mu(const EnsembleOptions& options);

struct CrossingStats {
  double radius = 0.0;
  double xi0 = 0.0;
  int n_samples = 0;
  int n_angles = 0;
  double mean = 0.0;
  double standard_error = 0.0;
  double fraction_even = 0.0;
};

/// Sign changes of F around |x| = r at n_angles equally spaced angles, with
/// xi0 fixed and the other coefficients random.
CrossingStats circle_crossings(double radius, double xi0, int n_samples, int n_terms, std::uint64_t seed,
                               int n_angles = 4096, int workers = 1);

/// Writes the grid as CSV (x, y, value) or as an 8-bit binary PGM with a
/// comment header carrying the metadata.
void write_field_csv(const std::string& path, const FieldGrid& field, const WaveSample& sample);
void write_field_pgm(const std::string& path, const FieldGrid& field, const WaveSample& sample);

}  // namespace nodal
