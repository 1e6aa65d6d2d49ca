#include "evendt/triangulation.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <sstream>

namespace evendt {
namespace {

int half_plane(const Point& center, const Point& p) {
  return (p.y > center.y || (p.y == center.y && p.x > center.x)) ? 0 : 1;
}

std::string describe(const char* kind, std::uint32_t id) {
  std::ostringstream os;
  os << kind << ' ' << id;
  return os.str();
}

}  // namespace

std::size_t PointHash::operator()(const Point& p) const noexcept {
  // +0.0 folds -0.0 so that equal points hash equally.
  const auto hx = std::bit_cast<std::uint64_t>(p.x + 0.0);
  const auto hy = std::bit_cast<std::uint64_t>(p.y + 0.0);
  return std::hash<std::uint64_t>{}(hx ^ (hy * 0x9E3779B97F4A7C15ULL));
}

bool angle_less(const Point& center, const Point& p, const Point& q) {
  const int hp = half_plane(center, p);
  const int hq = half_plane(center, q);
  if (hp != hq) return hp < hq;
  return orient2d(center, p, q) == Orientation::CounterClockwise;
}

VertexId Pseudotriangulation::add_vertex(const Point& p, Origin origin) {
  require_finite(p);
  if (!occupied_.insert(p).second) throw DuplicatePoint("duplicate point");
  vertices_.push_back(Vertex{p, origin, {}, true});
  ++live_vertices_;
  return VertexId(vertices_.size() - 1);
}

std::size_t Pseudotriangulation::ring_index(VertexId v, VertexId neighbor) const {
  const auto& ring = vertex(v).ring;
  for (std::size_t i = 0; i < ring.size(); ++i) {
    if (ring[i].neighbor == neighbor) return i;
  }
  throw NotFound("vertex is not a neighbor");
}

void Pseudotriangulation::insert_into_ring(VertexId center, VertexId neighbor, EdgeId e) {
  auto& ring = vertices_[center.value()].ring;
  const Point& c = vertices_[center.value()].position;
  const Point& p = vertices_[neighbor.value()].position;
  auto at = std::upper_bound(ring.begin(), ring.end(), p, [&](const Point& value, const Incidence& inc) {
    return angle_less(c, value, vertices_[inc.neighbor.value()].position);
  });
  ring.insert(at, Incidence{neighbor, e});
}

void Pseudotriangulation::erase_from_ring(VertexId center, EdgeId e) {
  auto& ring = vertices_[center.value()].ring;
  std::erase_if(ring, [e](const Incidence& inc) { return inc.edge == e; });
}

VertexId Pseudotriangulation::ccw_neighbor(VertexId v, VertexId from) const {
  const auto& ring = vertex(v).ring;
  return ring[(ring_index(v, from) + 1) % ring.size()].neighbor;
}

VertexId Pseudotriangulation::cw_neighbor(VertexId v, VertexId from) const {
  const auto& ring = vertex(v).ring;
  return ring[(ring_index(v, from) + ring.size() - 1) % ring.size()].neighbor;
}

std::optional<EdgeId> Pseudotriangulation::find_edge(VertexId a, VertexId b) const {
  if (!contains(a) || !contains(b)) return std::nullopt;
  const bool a_smaller = vertex(a).ring.size() <= vertex(b).ring.size();
  const auto& ring = vertex(a_smaller ? a : b).ring;
  const VertexId target = a_smaller ? b : a;
  for (const Incidence& inc : ring) {
    if (inc.neighbor == target) return inc.edge;
  }
  return std::nullopt;
}

TriangleId Pseudotriangulation::make_triangle(VertexId a, VertexId b, VertexId c) {
  const TriangleId t(triangles_.size());
  Triangle tri{{a, b, c}, {}, true};
  for (int i = 0; i < 3; ++i) {
    const auto e = find_edge(tri.corners[i], tri.corners[(i + 1) % 3]);
    if (!e) throw InternalError("triangle boundary edge missing");
    auto& sides = edges_[e->value()].sides;
    if (!sides[0].valid()) {
      sides[0] = t;
    } else if (!sides[1].valid()) {
      sides[1] = t;
    } else {
      throw InternalError("edge already bounds two triangles");
    }
    tri.boundary[i] = *e;
  }
  triangles_.push_back(tri);
  ++live_triangles_;
  return t;
}

void Pseudotriangulation::drop_triangle(TriangleId t) {
  auto& tri = triangles_[t.value()];
  if (!tri.alive) return;
  for (EdgeId e : tri.boundary) {
    if (!e.valid() || e.value() >= edges_.size()) continue;
    for (auto& side : edges_[e.value()].sides) {
      if (side == t) side = TriangleId{};
    }
  }
  tri.alive = false;
  --live_triangles_;
}

EdgeId Pseudotriangulation::connect(VertexId a, VertexId b) {
  if (!contains(a) || !contains(b)) throw NotFound("connect: unknown vertex");
  if (a == b) throw InvalidInput("connect: identical endpoints");
  if (find_edge(a, b)) throw DuplicateEdge("connect: edge already present");

  const EdgeId e(edges_.size());
  edges_.push_back(Edge{{a, b}, {}, true});
  ++live_edges_;
  insert_into_ring(a, b, e);
  insert_into_ring(b, a, e);

  const Point& pa = position(a);
  const Point& pb = position(b);
  if (vertex(a).ring.size() >= 2 && vertex(b).ring.size() >= 2) {
    const VertexId left = ccw_neighbor(a, b);
    if (left != b && orient2d(pa, pb, position(left)) == Orientation::CounterClockwise &&
        cw_neighbor(b, a) == left) {
      make_triangle(a, b, left);
    }
    const VertexId right = cw_neighbor(a, b);
    if (right != b && orient2d(pa, pb, position(right)) == Orientation::Clockwise &&
        ccw_neighbor(b, a) == right) {
      make_triangle(a, right, b);
    }
  }
  return e;
}

void Pseudotriangulation::remove_edge(EdgeId e) {
  if (!contains(e)) throw NotFound("remove_edge: unknown edge");
  Edge& edge = edges_[e.value()];
  for (TriangleId t : edge.sides) {
    if (t.valid()) drop_triangle(t);
  }
  erase_from_ring(edge.endpoints[0], e);
  erase_from_ring(edge.endpoints[1], e);
  edge.alive = false;
  --live_edges_;
}

bool Pseudotriangulation::is_interior(VertexId v) const {
  const auto& ring = vertex(v).ring;
  if (ring.empty()) return false;
  return std::all_of(ring.begin(), ring.end(), [&](const Incidence& inc) { return !edge(inc.edge).is_border(); });
}

std::size_t Pseudotriangulation::degree(VertexId v) const { return vertex(v).ring.size(); }

std::optional<TriangleId> Pseudotriangulation::triangle_left_of(VertexId a, VertexId b) const {
  const auto e = find_edge(a, b);
  if (!e) return std::nullopt;
  for (TriangleId t : edge(*e).sides) {
    if (!t.valid()) continue;
    const auto& c = triangle(t).corners;
    for (int i = 0; i < 3; ++i) {
      if (c[i] == a && c[(i + 1) % 3] == b) return t;
    }
  }
  return std::nullopt;
}

std::vector<VertexId> Pseudotriangulation::hull_walk(VertexId start, Rotation direction) const {
  if (!contains(start)) throw NotFound("hull_walk: unknown vertex");
  const auto& ring = vertex(start).ring;
  if (ring.empty()) return {start};

  // Exterior gap: consecutive ring neighbors (before, after) with no triangle between them.
  std::optional<std::size_t> gap;
  for (std::size_t i = 0; i < ring.size(); ++i) {
    const VertexId next = ring[(i + 1) % ring.size()].neighbor;
    const auto t = triangle_left_of(start, ring[i].neighbor);
    if (ring.size() == 1 || !t || std::find(triangle(*t).corners.begin(), triangle(*t).corners.end(), next) ==
                                      triangle(*t).corners.end()) {
      gap = i;
      break;
    }
  }
  if (!gap) throw InvalidInput("hull_walk: start vertex is interior");

  const bool ccw = direction == Rotation::CounterClockwise;
  const VertexId first = ccw ? ring[(*gap + 1) % ring.size()].neighbor : ring[*gap].neighbor;
  std::vector<VertexId> out{start};
  VertexId prev = start;
  VertexId cur = first;
  const std::size_t limit = 2 * edges_.size() + 2;
  while (out.size() <= limit) {
    if (prev == start && cur == first && out.size() > 1) break;
    out.push_back(cur);
    const VertexId next = ccw ? ccw_neighbor(cur, prev) : cw_neighbor(cur, prev);
    prev = cur;
    cur = next;
  }
  // The walk ends by stepping back onto `start`; drop that repeat.
  if (out.size() > 1 && out.back() == start) out.pop_back();
  return out;
}

std::vector<VertexId> Pseudotriangulation::vertex_ids() const {
  std::vector<VertexId> ids;
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (vertices_[i].alive) ids.emplace_back(i);
  }
  return ids;
}

std::vector<EdgeId> Pseudotriangulation::edge_ids() const {
  std::vector<EdgeId> ids;
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    if (edges_[i].alive) ids.emplace_back(i);
  }
  return ids;
}

std::vector<TriangleId> Pseudotriangulation::triangle_ids() const {
  std::vector<TriangleId> ids;
  for (std::size_t i = 0; i < triangles_.size(); ++i) {
    if (triangles_[i].alive) ids.emplace_back(i);
  }
  return ids;
}

std::size_t Pseudotriangulation::steiner_count() const {
  return static_cast<std::size_t>(std::count_if(vertices_.begin(), vertices_.end(), [](const Vertex& v) {
    return v.alive && v.origin == Origin::Steiner;
  }));
}

Pseudotriangulation Pseudotriangulation::compacted() const {
  std::vector<std::uint32_t> vmap(vertices_.size(), VertexId::kInvalid);
  std::vector<std::uint32_t> emap(edges_.size(), EdgeId::kInvalid);
  std::vector<std::uint32_t> tmap(triangles_.size(), TriangleId::kInvalid);
  std::uint32_t next = 0;
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (vertices_[i].alive) vmap[i] = next++;
  }
  next = 0;
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    if (edges_[i].alive) emap[i] = next++;
  }
  next = 0;
  for (std::size_t i = 0; i < triangles_.size(); ++i) {
    if (triangles_[i].alive) tmap[i] = next++;
  }

  auto map_t = [&](TriangleId t) { return t.valid() ? TriangleId(tmap[t.value()]) : t; };
  Pseudotriangulation out;
  for (const Vertex& v : vertices_) {
    if (!v.alive) continue;
    Vertex copy{v.position, v.origin, {}, true};
    for (const Incidence& inc : v.ring) {
      copy.ring.push_back(Incidence{VertexId(vmap[inc.neighbor.value()]), EdgeId(emap[inc.edge.value()])});
    }
    out.occupied_.insert(v.position);
    out.vertices_.push_back(std::move(copy));
  }
  for (const Edge& e : edges_) {
    if (!e.alive) continue;
    out.edges_.push_back(Edge{{VertexId(vmap[e.endpoints[0].value()]), VertexId(vmap[e.endpoints[1].value()])},
                              {map_t(e.sides[0]), map_t(e.sides[1])},
                              true});
  }
  for (const Triangle& t : triangles_) {
    if (!t.alive) continue;
    Triangle copy{};
    for (int i = 0; i < 3; ++i) {
      copy.corners[i] = VertexId(vmap[t.corners[i].value()]);
      copy.boundary[i] = EdgeId(emap[t.boundary[i].value()]);
    }
    out.triangles_.push_back(copy);
  }
  out.live_vertices_ = out.vertices_.size();
  out.live_edges_ = out.edges_.size();
  out.live_triangles_ = out.triangles_.size();
  return out;
}

Pseudotriangulation Pseudotriangulation::assemble(const std::vector<VertexRecord>& vertices,
                                                  const std::vector<std::array<VertexId, 2>>& edges,
                                                  const std::vector<std::array<VertexId, 3>>& triangles) {
  Pseudotriangulation out;
  for (const VertexRecord& r : vertices) {
    out.vertices_.push_back(Vertex{r.position, r.origin, {}, r.alive});
    if (r.alive) {
      out.occupied_.insert(r.position);
      ++out.live_vertices_;
    }
  }
  for (const auto& ends : edges) {
    const EdgeId e(out.edges_.size());
    out.edges_.push_back(Edge{ends, {}, true});
    ++out.live_edges_;
    if (out.contains(ends[0]) && out.contains(ends[1]) && ends[0] != ends[1]) {
      out.insert_into_ring(ends[0], ends[1], e);
      out.insert_into_ring(ends[1], ends[0], e);
    }
  }
  for (const auto& corners : triangles) {
    const TriangleId t(out.triangles_.size());
    Triangle tri{corners, {}, true};
    for (int i = 0; i < 3; ++i) {
      const auto e = out.find_edge(corners[i], corners[(i + 1) % 3]);
      if (!e) continue;
      tri.boundary[i] = *e;
      auto& sides = out.edges_[e->value()].sides;
      if (!sides[0].valid()) {
        sides[0] = t;
      } else if (!sides[1].valid()) {
        sides[1] = t;
      }
    }
    out.triangles_.push_back(tri);
    ++out.live_triangles_;
  }
  return out;
}

std::vector<std::string> validate(const Pseudotriangulation& mesh, const ValidateOptions& options) {
  std::vector<std::string> issues;
  auto report = [&](std::string msg) { issues.push_back(std::move(msg)); };

  for (VertexId v : mesh.vertex_ids()) {
    const auto ring = mesh.ring(v);
    if (options.sealed && ring.empty()) report(describe("isolated vertex", v.value()));
    for (std::size_t i = 0; i < ring.size(); ++i) {
      const Incidence& inc = ring[i];
      if (!mesh.contains(inc.edge)) {
        report(describe("ring of vertex references missing edge at vertex", v.value()));
        continue;
      }
      const Edge& e = mesh.edge(inc.edge);
      if (e.other(v) != inc.neighbor || (e.endpoints[0] != v && e.endpoints[1] != v)) {
        report(describe("ring entry disagrees with edge at vertex", v.value()));
      }
      if (i + 1 < ring.size() && mesh.contains(inc.neighbor) && mesh.contains(ring[i + 1].neighbor) &&
          !angle_less(mesh.position(v), mesh.position(inc.neighbor), mesh.position(ring[i + 1].neighbor))) {
        report(describe("ring not in angular order at vertex", v.value()));
      }
    }
  }

  for (EdgeId id : mesh.edge_ids()) {
    const Edge& e = mesh.edge(id);
    const bool ends_ok = mesh.contains(e.endpoints[0]) && mesh.contains(e.endpoints[1]);
    if (!ends_ok) {
      report(describe("dangling vertex reference in edge", id.value()));
      continue;
    }
    if (e.endpoints[0] == e.endpoints[1]) report(describe("edge with identical endpoints", id.value()));
    for (VertexId end : e.endpoints) {
      const auto ring = mesh.ring(end);
      if (std::none_of(ring.begin(), ring.end(), [&](const Incidence& inc) { return inc.edge == id; })) {
        report(describe("edge missing from endpoint ring", id.value()));
      }
    }
    for (TriangleId t : e.sides) {
      if (!t.valid()) continue;
      if (!mesh.contains(t)) {
        report(describe("edge side references missing triangle, edge", id.value()));
        continue;
      }
      const auto& b = mesh.triangle(t).boundary;
      if (std::find(b.begin(), b.end(), id) == b.end()) {
        report(describe("edge side not reciprocated by triangle, edge", id.value()));
      }
    }
  }

  std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> directed;
  for (TriangleId id : mesh.triangle_ids()) {
    const Triangle& t = mesh.triangle(id);
    bool refs_ok = true;
    for (VertexId c : t.corners) refs_ok = refs_ok && mesh.contains(c);
    if (!refs_ok) {
      report(describe("dangling vertex reference in triangle", id.value()));
      continue;
    }
    if (t.corners[0] == t.corners[1] || t.corners[1] == t.corners[2] || t.corners[0] == t.corners[2]) {
      report(describe("triangle with repeated corner", id.value()));
      continue;
    }
    const auto turn = orient2d(mesh.position(t.corners[0]), mesh.position(t.corners[1]), mesh.position(t.corners[2]));
    if (turn != Orientation::CounterClockwise) report(describe("triangle not counterclockwise", id.value()));
    for (int i = 0; i < 3; ++i) {
      const EdgeId e = t.boundary[i];
      if (!mesh.contains(e)) {
        report(describe("triangle boundary edge missing, triangle", id.value()));
        continue;
      }
      const auto& ends = mesh.edge(e).endpoints;
      const VertexId a = t.corners[i], b = t.corners[(i + 1) % 3];
      if (!((ends[0] == a && ends[1] == b) || (ends[0] == b && ends[1] == a))) {
        report(describe("triangle boundary edge does not join consecutive corners, triangle", id.value()));
      }
      const auto& sides = mesh.edge(e).sides;
      if (sides[0] != id && sides[1] != id) report(describe("triangle not listed on its edge, triangle", id.value()));
      const auto key = std::make_pair(a.value(), b.value());
      if (!directed.emplace(key, id.value()).second) {
        report(describe("directed edge bounds two triangles, triangle", id.value()));
      }
    }
  }

  if (!options.check_intersections) return issues;

  struct Seg {
    EdgeId id;
    Point p, q;
    double lo, hi;
  };
  std::vector<Seg> segs;
  for (EdgeId id : mesh.edge_ids()) {
    const Edge& e = mesh.edge(id);
    if (!mesh.contains(e.endpoints[0]) || !mesh.contains(e.endpoints[1])) continue;
    const Point p = mesh.position(e.endpoints[0]);
    const Point q = mesh.position(e.endpoints[1]);
    segs.push_back(Seg{id, p, q, std::min(p.x, q.x), std::max(p.x, q.x)});
  }
  std::sort(segs.begin(), segs.end(), [](const Seg& a, const Seg& b) { return a.lo < b.lo; });
  for (std::size_t i = 0; i < segs.size(); ++i) {
    for (std::size_t j = i + 1; j < segs.size() && segs[j].lo <= segs[i].hi; ++j) {
      if (segments_intersect(segs[i].p, segs[i].q, segs[j].p, segs[j].q)) {
        std::ostringstream os;
        os << "edges " << segs[i].id.value() << " and " << segs[j].id.value() << " intersect";
        report(os.str());
      }
    }
  }

  std::vector<VertexId> by_x = mesh.vertex_ids();
  std::sort(by_x.begin(), by_x.end(),
            [&](VertexId a, VertexId b) { return mesh.position(a).x < mesh.position(b).x; });
  auto in_range = [&](double lo, double hi, auto&& fn) {
    auto it = std::lower_bound(by_x.begin(), by_x.end(), lo,
                               [&](VertexId v, double x) { return mesh.position(v).x < x; });
    for (; it != by_x.end() && mesh.position(*it).x <= hi; ++it) fn(*it);
  };
  for (const Seg& s : segs) {
    const Edge& e = mesh.edge(s.id);
    in_range(s.lo, s.hi, [&](VertexId v) {
      if (v == e.endpoints[0] || v == e.endpoints[1]) return;
      const Point& p = mesh.position(v);
      if (orient2d(s.p, s.q, p) == Orientation::Collinear && std::min(s.p.y, s.q.y) <= p.y &&
          p.y <= std::max(s.p.y, s.q.y)) {
        report(describe("vertex lies on edge", s.id.value()));
      }
    });
  }
  for (TriangleId id : mesh.triangle_ids()) {
    const Triangle& t = mesh.triangle(id);
    if (!mesh.contains(t.corners[0]) || !mesh.contains(t.corners[1]) || !mesh.contains(t.corners[2])) continue;
    const Point& a = mesh.position(t.corners[0]);
    const Point& b = mesh.position(t.corners[1]);
    const Point& c = mesh.position(t.corners[2]);
    in_range(std::min({a.x, b.x, c.x}), std::max({a.x, b.x, c.x}), [&](VertexId v) {
      if (v == t.corners[0] || v == t.corners[1] || v == t.corners[2]) return;
      const Point& p = mesh.position(v);
      if (orient2d(a, b, p) == Orientation::CounterClockwise && orient2d(b, c, p) == Orientation::CounterClockwise &&
          orient2d(c, a, p) == Orientation::CounterClockwise) {
        report(describe("vertex strictly inside triangle", id.value()));
      }
    });
  }
  return issues;
}

}  // namespace evendt
