#pragma once

#include <array>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "evendt/triangulation.hpp"

namespace support {

using evendt::Point;

inline std::vector<Point> random_points(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(0.0, 1.0);
  std::vector<Point> out;
  std::set<std::pair<double, double>> seen;
  while (out.size() < n) {
    const Point p{coord(rng), coord(rng)};
    if (seen.emplace(p.x, p.y).second) out.push_back(p);
  }
  return out;
}

// Regular pentagon around a center; the plain triangulation gives the center degree 5.
inline std::vector<Point> pentagon_center() {
  std::vector<Point> out{{0.0, 0.0}};
  for (int k = 0; k < 5; ++k) {
    const double a = 2.0 * M_PI * k / 5.0 + 0.3;
    out.push_back({std::cos(a), std::sin(a)});
  }
  return out;
}

// Mesh triangles as sorted triples of indices into `points`, matched by position.
inline std::set<std::array<std::size_t, 3>> triples_by_position(const evendt::Pseudotriangulation& mesh,
                                                                const std::vector<Point>& points) {
  std::map<std::pair<double, double>, std::size_t> index;
  for (std::size_t i = 0; i < points.size(); ++i) index[{points[i].x, points[i].y}] = i;
  std::set<std::array<std::size_t, 3>> out;
  for (evendt::TriangleId t : mesh.triangle_ids()) {
    std::array<std::size_t, 3> key{};
    for (std::size_t k = 0; k < 3; ++k) {
      const Point& p = mesh.position(mesh.triangle(t).corners[k]);
      key[k] = index.at({p.x, p.y});
    }
    std::sort(key.begin(), key.end());
    out.insert(key);
  }
  return out;
}

// Same identifiers, positions, origins, edges and triangle corners.
inline bool same_structure(const evendt::Pseudotriangulation& a, const evendt::Pseudotriangulation& b) {
  if (a.vertex_ids() != b.vertex_ids() || a.edge_ids() != b.edge_ids() || a.triangle_ids() != b.triangle_ids()) {
    return false;
  }
  for (evendt::VertexId v : a.vertex_ids()) {
    if (a.position(v) != b.position(v) || a.vertex(v).origin != b.vertex(v).origin) return false;
  }
  for (evendt::EdgeId e : a.edge_ids()) {
    if (a.edge(e).endpoints != b.edge(e).endpoints) return false;
  }
  for (evendt::TriangleId t : a.triangle_ids()) {
    if (a.triangle(t).corners != b.triangle(t).corners) return false;
  }
  return true;
}

}  // namespace support
