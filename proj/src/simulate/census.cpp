#include "nodal/census.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>
#include <numeric>
#include <utility>

#include "nodal/rootfind.hpp"

namespace nodal {
namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a < b)
      parent_[b] = a;
    else
      parent_[a] = b;
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

int NodalCensus::count_with_holes(int h) const {
  int count = 0;
  for (const auto& c : components)
    if (c.interior() && c.hole_count == h) ++count;
  return count;
}

std::string canonical_subtree(const NodalCensus& census, int node) {
  std::vector<std::string> parts;
  for (int child : census.components[node].children) parts.push_back(canonical_subtree(census, child));
  std::sort(parts.begin(), parts.end());
  std::string out = "(";
  for (const auto& p : parts) out += p;
  return out + ")";
}

NodalCensus nodal_census(const FieldGrid& field) {
  const GridSpec& g = field.grid;
  const int n = g.resolution;
  const std::size_t cells = static_cast<std::size_t>(n) * n;
  const std::size_t frame = cells;
  auto pos = [&](int i, int j) { return field.at(i, j) > 0.0; };
  auto id = [n](int i, int j) { return static_cast<std::size_t>(i) * n + j; };

  DisjointSets ds(cells + 1);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const bool p = pos(i, j);
      if (j + 1 < n && pos(i, j + 1) == p) ds.unite(id(i, j), id(i, j + 1));
      if (i + 1 < n && pos(i + 1, j) == p) ds.unite(id(i, j), id(i + 1, j));
      if (!p && i + 1 < n) {
        if (j + 1 < n && !pos(i + 1, j + 1)) ds.unite(id(i, j), id(i + 1, j + 1));
        if (j > 0 && !pos(i + 1, j - 1)) ds.unite(id(i, j), id(i + 1, j - 1));
      }
      const bool border = i == 0 || j == 0 || i == n - 1 || j == n - 1;
      if (border && !p) ds.unite(id(i, j), frame);
    }
  }

  NodalCensus census;
  census.labels.assign(cells, -1);
  std::vector<int> root_label(cells + 1, -1);
  ComponentRecord frame_rec;
  frame_rec.id = 0;
  frame_rec.sign = -1;
  frame_rec.is_frame = true;
  frame_rec.touches_counting_boundary = true;
  census.components.push_back(frame_rec);
  root_label[ds.find(frame)] = 0;

  const double R2 = g.counting_radius * g.counting_radius;
  for (int i = 0; i < n; ++i) {
    const double y = g.coord(i);
    for (int j = 0; j < n; ++j) {
      const std::size_t root = ds.find(id(i, j));
      int& lab = root_label[root];
      if (lab < 0) {
        lab = static_cast<int>(census.components.size());
        ComponentRecord rec;
        rec.id = lab;
        rec.sign = pos(i, j) ? 1 : -1;
        census.components.push_back(rec);
      }
      census.labels[id(i, j)] = lab;
      ComponentRecord& rec = census.components[lab];
      ++rec.cells;
      const double x = g.coord(j);
      if (x * x + y * y > R2) rec.touches_counting_boundary = true;
    }
  }

  // Region adjacency across 4-neighbour pairs, plus positive border cells
  // against the frame.
  std::vector<std::pair<int, int>> edges;
  auto add_edge = [&](int a, int b) {
    if (a != b) edges.emplace_back(std::min(a, b), std::max(a, b));
  };
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const int a = census.labels[id(i, j)];
      if (j + 1 < n) add_edge(a, census.labels[id(i, j + 1)]);
      if (i + 1 < n) add_edge(a, census.labels[id(i + 1, j)]);
      const bool border = i == 0 || j == 0 || i == n - 1 || j == n - 1;
      if (border && pos(i, j)) add_edge(a, 0);
    }
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  const int m = static_cast<int>(census.components.size());
  std::vector<std::vector<int>> adj(m);
  for (const auto& [a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }

  std::vector<bool> seen(m, false);
  std::deque<int> queue{0};
  seen[0] = true;
  std::vector<int> order;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    order.push_back(v);
    for (int w : adj[v]) {
      if (seen[w]) continue;
      seen[w] = true;
      census.components[w].parent = v;
      census.components[v].children.push_back(w);
      queue.push_back(w);
    }
  }
  census.adjacency_is_tree = static_cast<int>(order.size()) == m && static_cast<int>(edges.size()) == m - 1;

  const double j01 = bessel_zero(0, 1);
  const double fk_floor = kFaberKrahnFraction * std::numbers::pi * j01 * j01;
  const double cell_area = g.cell_area();
  for (auto& c : census.components) {
    c.area = c.cells * cell_area;
    c.hole_count = static_cast<int>(c.children.size());
    c.adjacent_count = static_cast<int>(adj[c.id].size());
    if (!c.interior()) continue;
    ++census.n_interior_domains;
    // Every interior domain has one outer boundary curve, the edge to its parent.
    ++census.n_interior_nodal_components;
    if (c.adjacent_count != c.hole_count + 1) ++census.euler_violations;
    if (c.area < fk_floor) {
      c.faber_krahn_flag = true;
      ++census.faber_krahn_flags;
    }
  }

  // Cutting the edge above an interior domain c leaves the subtree under c
  // and a side holding the frame, which continues past the window and is
  // therefore the larger one. The tree end is always the subtree under c.
  std::vector<std::string> canon(m);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const int v = *it;
    if (!census.components[v].interior()) continue;
    std::vector<std::string> parts;
    for (int child : census.components[v].children) parts.push_back(canon[child]);
    std::sort(parts.begin(), parts.end());
    std::string s = "(";
    for (const auto& p : parts) s += p;
    canon[v] = s + ")";
    ++census.tree_end_histogram[canon[v]];
  }
  return census;
}

}  // namespace nodal
