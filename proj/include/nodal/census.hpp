#pragma once

#include <map>
#include <string>
#include <vector>

#include "nodal/simulate.hpp"

namespace nodal {

struct ComponentRecord {
  int id = 0;
  int sign = 0;  // +1 for F > 0, -1 for F <= 0
  long cells = 0;
  double area = 0.0;
  bool touches_counting_boundary = false;  // some cell lies outside the counting disk
  bool is_frame = false;                   // merged with everything outside the box
  int parent = -1;
  std::vector<int> children;
  int hole_count = 0;
  int adjacent_count = 0;
  bool faber_krahn_flag = false;

  bool interior() const { return !touches_counting_boundary && !is_frame; }
};

/// Connected components of {F > 0} (4-connected) and {F <= 0} (8-connected)
/// on a grid, with the containment tree rooted at the region outside the box.
struct NodalCensus {
  std::vector<ComponentRecord> components;  // components[0] is the frame
  std::vector<int> labels;                  // per cell; row-major like FieldGrid
  std::map<std::string, long> tree_end_histogram;
  int n_interior_domains = 0;
  int n_interior_nodal_components = 0;
  int faber_krahn_flags = 0;
  int euler_violations = 0;
  bool adjacency_is_tree = true;

  /// Interior domains with exactly h holes.
  int count_with_holes(int h) const;
};

/// Areas below this fraction of pi j_{0,1}^2 are flagged as grid artifacts.
inline constexpr double kFaberKrahnFraction = 0.8;

NodalCensus nodal_census(const FieldGrid& field);

/// Canonical (AHU) string of the subtree rooted at node.
std::string canonical_subtree(const NodalCensus& census, int node);

}  // namespace nodal
