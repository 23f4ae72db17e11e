#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "nodal/simulate.hpp"

namespace nodal {
namespace {

std::ofstream open_or_throw(const std::string& path, std::ios::openmode mode = std::ios::out) {
  std::ofstream out(path, mode);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  return out;
}

std::string metadata(const FieldGrid& f, const WaveSample& s) {
  return "seed=" + std::to_string(s.seed) + " index=" + std::to_string(s.index) + " terms=" +
         std::to_string(s.n_terms) + " xi0=" + std::to_string(s.xi0) + " resolution=" +
         std::to_string(f.grid.resolution) + " half_width=" + std::to_string(f.grid.half_width) +
         " counting_radius=" + std::to_string(f.grid.counting_radius);
}

}  // namespace

void write_field_csv(const std::string& path, const FieldGrid& field, const WaveSample& sample) {
  auto out = open_or_throw(path);
  out << "# " << metadata(field, sample) << "\n";
  out << "x,y,value\n";
  out.precision(17);
  const int n = field.grid.resolution;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out << field.grid.coord(j) << ',' << field.grid.coord(i) << ',' << field.at(i, j) << '\n';
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

void write_field_pgm(const std::string& path, const FieldGrid& field, const WaveSample& sample) {
  auto out = open_or_throw(path, std::ios::out | std::ios::binary);
  const int n = field.grid.resolution;
  double peak = 0.0;
  for (double v : field.values) peak = std::max(peak, std::fabs(v));
  if (peak == 0.0) peak = 1.0;
  out << "P5\n# " << metadata(field, sample) << "\n" << n << ' ' << n << "\n255\n";
  // Top row is y = +L.
  for (int i = n - 1; i >= 0; --i) {
    for (int j = 0; j < n; ++j) {
      const double v = 127.5 + 127.5 * field.at(i, j) / peak;
      out.put(static_cast<char>(static_cast<unsigned char>(std::clamp(v, 0.0, 255.0))));
    }
  }
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

}  // namespace nodal
