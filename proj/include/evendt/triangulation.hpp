#pragma once

// Pseudo-triangulation model: vertices with angularly ordered incidence rings,
// edges that know their one or two incident triangles, and counterclockwise
// triangle records. Identifiers are indices that are never reused; removed
// elements stay behind as dead slots until compacted().

#include <array>
#include <compare>
#include <concepts>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "evendt/geometry.hpp"

namespace evendt {

struct PointHash {
  std::size_t operator()(const Point& p) const noexcept;
};

template <class Tag>
class Id {
 public:
  static constexpr std::uint32_t kInvalid = std::numeric_limits<std::uint32_t>::max();

  constexpr Id() = default;
  template <std::integral T>
  constexpr explicit Id(T value) : value_(static_cast<std::uint32_t>(value)) {}

  constexpr std::uint32_t value() const { return value_; }
  constexpr bool valid() const { return value_ != kInvalid; }

  friend constexpr auto operator<=>(Id, Id) = default;

 private:
  std::uint32_t value_ = kInvalid;
};

using VertexId = Id<struct VertexTag>;
using EdgeId = Id<struct EdgeTag>;
using TriangleId = Id<struct TriangleTag>;

enum class Origin { Input, Steiner };
enum class Rotation { CounterClockwise, Clockwise };

struct Incidence {
  VertexId neighbor;
  EdgeId edge;
};

struct Vertex {
  Point position;
  Origin origin = Origin::Input;
  std::vector<Incidence> ring;  // sorted by angle, counterclockwise from +x
  bool alive = true;
};

struct Edge {
  std::array<VertexId, 2> endpoints;
  std::array<TriangleId, 2> sides;
  bool alive = true;

  int side_count() const { return static_cast<int>(sides[0].valid()) + static_cast<int>(sides[1].valid()); }
  bool is_border() const { return side_count() < 2; }
  VertexId other(VertexId v) const { return endpoints[0] == v ? endpoints[1] : endpoints[0]; }
};

struct Triangle {
  std::array<VertexId, 3> corners;  // counterclockwise
  std::array<EdgeId, 3> boundary;   // boundary[i] joins corners[i] and corners[(i + 1) % 3]
  bool alive = true;
};

class Pseudotriangulation {
 public:
  VertexId add_vertex(const Point& p, Origin origin = Origin::Input);

  /// Adds edge ab and creates the triangle record on each side where the new
  /// edge closes an angularly consecutive counterclockwise 3-cycle.
  EdgeId connect(VertexId a, VertexId b);

  /// Removes e and its incident triangles. Endpoints stay, possibly isolated.
  void remove_edge(EdgeId e);

  std::optional<EdgeId> find_edge(VertexId a, VertexId b) const;

  bool is_interior(VertexId v) const;
  std::size_t degree(VertexId v) const;
  bool is_even(VertexId v) const { return degree(v) % 2 == 0; }

  /// Border vertices met while walking the outer face from `start`.
  std::vector<VertexId> hull_walk(VertexId start, Rotation direction) const;

  /// Neighbor of v that follows `from` counterclockwise (resp. clockwise) in v's ring.
  VertexId ccw_neighbor(VertexId v, VertexId from) const;
  VertexId cw_neighbor(VertexId v, VertexId from) const;

  /// Triangle having the directed edge a->b on its boundary (so lying to its left).
  std::optional<TriangleId> triangle_left_of(VertexId a, VertexId b) const;

  const Vertex& vertex(VertexId v) const { return vertices_.at(v.value()); }
  const Edge& edge(EdgeId e) const { return edges_.at(e.value()); }
  const Triangle& triangle(TriangleId t) const { return triangles_.at(t.value()); }
  const Point& position(VertexId v) const { return vertex(v).position; }
  std::span<const Incidence> ring(VertexId v) const { return vertex(v).ring; }

  bool contains(VertexId v) const { return v.value() < vertices_.size() && vertices_[v.value()].alive; }
  bool contains(EdgeId e) const { return e.value() < edges_.size() && edges_[e.value()].alive; }
  bool contains(TriangleId t) const { return t.value() < triangles_.size() && triangles_[t.value()].alive; }

  std::vector<VertexId> vertex_ids() const;
  std::vector<EdgeId> edge_ids() const;
  std::vector<TriangleId> triangle_ids() const;

  std::size_t vertex_count() const { return live_vertices_; }
  std::size_t edge_count() const { return live_edges_; }
  std::size_t triangle_count() const { return live_triangles_; }
  std::size_t steiner_count() const;

  /// Id slots ever allocated (live and dead).
  std::size_t vertex_capacity() const { return vertices_.size(); }
  std::size_t edge_capacity() const { return edges_.size(); }
  std::size_t triangle_capacity() const { return triangles_.size(); }

  /// Copy with dead slots squeezed out; relative order of identifiers is kept.
  Pseudotriangulation compacted() const;

  struct VertexRecord {
    Point position;
    Origin origin = Origin::Input;
    bool alive = true;  // false leaves a dead slot behind
  };

  /// Installs records verbatim under dense identifiers (vertex i, edge i,
  /// triangle i). Rings and edge sides are derived; nothing is validated, so
  /// damaged inputs survive until validate() reports them.
  static Pseudotriangulation assemble(const std::vector<VertexRecord>& vertices,
                                      const std::vector<std::array<VertexId, 2>>& edges,
                                      const std::vector<std::array<VertexId, 3>>& triangles);

 private:
  void insert_into_ring(VertexId center, VertexId neighbor, EdgeId e);
  void erase_from_ring(VertexId center, EdgeId e);
  std::size_t ring_index(VertexId v, VertexId neighbor) const;
  TriangleId make_triangle(VertexId a, VertexId b, VertexId c);
  void drop_triangle(TriangleId t);

  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
  std::vector<Triangle> triangles_;
  std::unordered_set<Point, PointHash> occupied_;
  std::size_t live_vertices_ = 0;
  std::size_t live_edges_ = 0;
  std::size_t live_triangles_ = 0;
};

/// Angular order of directions p - center, counterclockwise starting at +x.
bool angle_less(const Point& center, const Point& p, const Point& q);

struct ValidateOptions {
  bool sealed = false;               // also require every vertex to have degree >= 1
  bool check_intersections = true;   // quadratic geometric checks
};

/// Human-readable descriptions of every broken invariant; empty when valid.
std::vector<std::string> validate(const Pseudotriangulation& mesh, const ValidateOptions& options = {});

}  // namespace evendt

template <class Tag>
struct std::hash<evendt::Id<Tag>> {
  std::size_t operator()(evendt::Id<Tag> id) const noexcept { return std::hash<std::uint32_t>{}(id.value()); }
};
