#pragma once

// Brute-force checks that share nothing with the construction path beyond
// the exact predicates.

#include <array>
#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "evendt/color_gem.hpp"
#include "evendt/triangulation.hpp"

namespace evendt {

struct CircleWitness {
  TriangleId triangle;
  VertexId vertex;  // strictly inside the triangle's circumcircle
};

struct DelaunayCheck {
  bool ok = true;
  std::vector<CircleWitness> witnesses;
};

struct LocalCheck {
  bool ok = true;
  std::vector<EdgeId> witnesses;
};

struct VerificationReport {
  bool delaunay_ok = false;
  bool locally_delaunay_ok = false;
  std::vector<VertexId> odd_interior_vertices;
  bool hull_ok = false;
  bool euler_ok = false;
  bool structure_ok = false;
  std::optional<bool> coloring_ok;
  std::vector<std::string> details;

  /// Every applicable check passed; parity counts only when `require_even`.
  bool passed(bool require_even) const;
};

/// Every (triangle, vertex) pair through the exact incircle test.
DelaunayCheck check_delaunay(const Pseudotriangulation& mesh);

/// Every interior edge: neither opposite vertex strictly inside the other triangle's circle.
LocalCheck check_locally_delaunay(const Pseudotriangulation& mesh);

/// Interior vertices of odd degree, in id order.
std::vector<VertexId> check_parity(const Pseudotriangulation& mesh);

/// The border cycle, with straight-through vertices skipped, is the convex
/// hull of all vertex positions (monotone chain over exact orientation).
bool check_hull(const Pseudotriangulation& mesh);

/// V - E + T = 1 for a triangulated disk; for a mesh without triangles, the
/// edges form a tree over the vertices.
bool check_euler(const Pseudotriangulation& mesh);

/// Sorted index triples (a < b < c) of every non-collinear triple whose
/// circumcircle holds no other point strictly inside. Quartic; meant for tiny inputs.
std::set<std::array<std::size_t, 3>> brute_force_delaunay(std::span<const Point> points);

/// Triangle sets compared up to retriangulation of cocircular polygons: each
/// triangle is replaced by the set of points on its circumcircle.
bool same_delaunay_cells(const std::set<std::array<std::size_t, 3>>& a, const std::set<std::array<std::size_t, 3>>& b,
                         std::span<const Point> points);

/// Triangles of the mesh as sorted vertex id triples.
std::set<std::array<std::size_t, 3>> triangle_triples(const Pseudotriangulation& mesh);

/// All checks; coloring and GEM checks only when given.
VerificationReport verify(const Pseudotriangulation& mesh, const Coloring* coloring = nullptr,
                          const GemMap* gem = nullptr);

}  // namespace evendt
