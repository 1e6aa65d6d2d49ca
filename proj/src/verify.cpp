#include "evendt/verify.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace evendt {

namespace {

std::string id(VertexId v) { return std::to_string(v.value()); }

// Strict convex hull, counterclockwise from the lexicographically smallest point.
std::vector<std::size_t> convex_hull(const std::vector<Point>& p) {
  std::vector<std::size_t> order(p.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return lex_less(p[a], p[b]); });
  if (order.size() < 3) return order;
  std::vector<std::size_t> hull;
  auto sweep = [&](auto first, auto last) {
    const std::size_t base = hull.size();
    for (auto it = first; it != last; ++it) {
      while (hull.size() >= base + 2 &&
             orient2d(p[hull[hull.size() - 2]], p[hull.back()], p[*it]) != Orientation::CounterClockwise) {
        hull.pop_back();
      }
      hull.push_back(*it);
    }
    hull.pop_back();
  };
  sweep(order.begin(), order.end());
  sweep(order.rbegin(), order.rend());
  return hull;
}

}  // namespace

bool VerificationReport::passed(bool require_even) const {
  return delaunay_ok && locally_delaunay_ok && hull_ok && euler_ok && structure_ok &&
         (!require_even || odd_interior_vertices.empty()) && coloring_ok.value_or(true);
}

DelaunayCheck check_delaunay(const Pseudotriangulation& mesh) {
  DelaunayCheck out;
  const std::vector<VertexId> vertices = mesh.vertex_ids();
  for (TriangleId t : mesh.triangle_ids()) {
    const auto& c = mesh.triangle(t).corners;
    const Point& a = mesh.position(c[0]);
    const Point& b = mesh.position(c[1]);
    const Point& d = mesh.position(c[2]);
    for (VertexId v : vertices) {
      if (incircle_ccw(a, b, d, mesh.position(v)) == CirclePosition::Inside) {
        out.ok = false;
        out.witnesses.push_back({t, v});
      }
    }
  }
  return out;
}

LocalCheck check_locally_delaunay(const Pseudotriangulation& mesh) {
  LocalCheck out;
  auto apex = [&](TriangleId t, const Edge& e) {
    for (VertexId v : mesh.triangle(t).corners) {
      if (v != e.endpoints[0] && v != e.endpoints[1]) return v;
    }
    throw InternalError("triangle does not contain its edge");
  };
  auto holds = [&](TriangleId t, VertexId v) {
    const auto& c = mesh.triangle(t).corners;
    return incircle_ccw(mesh.position(c[0]), mesh.position(c[1]), mesh.position(c[2]), mesh.position(v)) ==
           CirclePosition::Inside;
  };
  for (EdgeId e : mesh.edge_ids()) {
    const Edge& edge = mesh.edge(e);
    if (edge.side_count() < 2) continue;
    const TriangleId s = edge.sides[0];
    const TriangleId t = edge.sides[1];
    if (holds(s, apex(t, edge)) || holds(t, apex(s, edge))) {
      out.ok = false;
      out.witnesses.push_back(e);
    }
  }
  return out;
}

std::vector<VertexId> check_parity(const Pseudotriangulation& mesh) {
  std::vector<VertexId> odd;
  for (VertexId v : mesh.vertex_ids()) {
    if (mesh.is_interior(v) && mesh.degree(v) % 2 != 0) odd.push_back(v);
  }
  return odd;
}

bool check_hull(const Pseudotriangulation& mesh) {
  const std::vector<VertexId> vertices = mesh.vertex_ids();
  std::vector<Point> p;
  for (VertexId v : vertices) p.push_back(mesh.position(v));
  const std::vector<std::size_t> hull = convex_hull(p);
  if (hull.size() < 3) return mesh.triangle_count() == 0;

  std::map<VertexId, VertexId> next;
  std::size_t border = 0;
  for (EdgeId e : mesh.edge_ids()) {
    const Edge& edge = mesh.edge(e);
    if (edge.side_count() == 2) continue;
    if (edge.side_count() == 0) return false;
    auto [a, b] = edge.endpoints;
    if (mesh.triangle_left_of(a, b) != (edge.sides[0].valid() ? edge.sides[0] : edge.sides[1])) std::swap(a, b);
    if (!next.emplace(a, b).second) return false;
    ++border;
  }
  const VertexId start = vertices[hull.front()];
  if (!next.contains(start)) return false;
  std::vector<VertexId> cycle{start};
  for (VertexId v = next.at(start); v != start; v = next.at(v)) {
    if (cycle.size() > border || !next.contains(v)) return false;
    cycle.push_back(v);
  }
  if (cycle.size() != border) return false;

  std::vector<VertexId> corners;
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    const Point& prev = mesh.position(cycle[(i + cycle.size() - 1) % cycle.size()]);
    const Point& here = mesh.position(cycle[i]);
    const Point& after = mesh.position(cycle[(i + 1) % cycle.size()]);
    const Orientation o = orient2d(prev, here, after);
    if (o == Orientation::Clockwise) return false;
    if (o == Orientation::CounterClockwise) corners.push_back(cycle[i]);
  }
  if (corners.size() != hull.size()) return false;
  for (std::size_t i = 0; i < hull.size(); ++i) {
    if (corners[i] != vertices[hull[i]]) return false;
  }
  return true;
}

bool check_euler(const Pseudotriangulation& mesh) {
  const auto v = static_cast<long long>(mesh.vertex_count());
  const auto e = static_cast<long long>(mesh.edge_count());
  const auto t = static_cast<long long>(mesh.triangle_count());
  if (t == 0) return e == v - 1;
  return v - e + t == 1;
}

std::set<std::array<std::size_t, 3>> brute_force_delaunay(std::span<const Point> points) {
  std::set<std::array<std::size_t, 3>> out;
  const std::size_t n = points.size();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      for (std::size_t c = b + 1; c < n; ++c) {
        if (orient2d(points[a], points[b], points[c]) == Orientation::Collinear) continue;
        bool empty = true;
        for (std::size_t d = 0; d < n && empty; ++d) {
          if (d == a || d == b || d == c) continue;
          empty = incircle(points[a], points[b], points[c], points[d]) != CirclePosition::Inside;
        }
        if (empty) out.insert({a, b, c});
      }
    }
  }
  return out;
}

bool same_delaunay_cells(const std::set<std::array<std::size_t, 3>>& a, const std::set<std::array<std::size_t, 3>>& b,
                         std::span<const Point> points) {
  auto cells = [&](const std::set<std::array<std::size_t, 3>>& triples) {
    std::set<std::vector<std::size_t>> out;
    for (const auto& [i, j, k] : triples) {
      std::vector<std::size_t> cell;
      for (std::size_t d = 0; d < points.size(); ++d) {
        if (d == i || d == j || d == k ||
            incircle(points[i], points[j], points[k], points[d]) == CirclePosition::OnCircle) {
          cell.push_back(d);
        }
      }
      out.insert(std::move(cell));
    }
    return out;
  };
  return cells(a) == cells(b);
}

std::set<std::array<std::size_t, 3>> triangle_triples(const Pseudotriangulation& mesh) {
  std::set<std::array<std::size_t, 3>> out;
  for (TriangleId t : mesh.triangle_ids()) {
    const auto& c = mesh.triangle(t).corners;
    std::array<std::size_t, 3> key{c[0].value(), c[1].value(), c[2].value()};
    std::sort(key.begin(), key.end());
    out.insert(key);
  }
  return out;
}

VerificationReport verify(const Pseudotriangulation& mesh, const Coloring* coloring, const GemMap* gem) {
  VerificationReport r;
  const DelaunayCheck dt = check_delaunay(mesh);
  r.delaunay_ok = dt.ok;
  for (const CircleWitness& w : dt.witnesses) {
    const auto& c = mesh.triangle(w.triangle).corners;
    r.details.push_back("delaunay: vertex " + id(w.vertex) + " inside circle of " + id(c[0]) + " " + id(c[1]) +
                        " " + id(c[2]));
  }
  const LocalCheck local = check_locally_delaunay(mesh);
  r.locally_delaunay_ok = local.ok;
  for (EdgeId e : local.witnesses) {
    const auto& [a, b] = mesh.edge(e).endpoints;
    r.details.push_back("locally-delaunay: edge " + id(a) + "-" + id(b));
  }
  r.odd_interior_vertices = check_parity(mesh);
  for (VertexId v : r.odd_interior_vertices) r.details.push_back("parity: interior vertex " + id(v) + " is odd");
  r.hull_ok = check_hull(mesh);
  if (!r.hull_ok) r.details.push_back("hull: border cycle is not the convex hull");
  r.euler_ok = check_euler(mesh);
  if (!r.euler_ok) {
    r.details.push_back("euler: V - E + T = " + std::to_string(static_cast<long long>(mesh.vertex_count()) -
                                                               static_cast<long long>(mesh.edge_count()) +
                                                               static_cast<long long>(mesh.triangle_count())));
  }
  const std::vector<std::string> issues = validate(mesh, {true, false});
  r.structure_ok = issues.empty();
  for (const std::string& issue : issues) r.details.push_back("structure: " + issue);

  if (coloring) {
    bool ok = true;
    for (VertexId v : mesh.vertex_ids()) {
      const auto it = coloring->find(v);
      if (it == coloring->end() || it->second > 2) {
        ok = false;
        r.details.push_back("coloring: vertex " + id(v) + " has no valid color");
      }
    }
    for (EdgeId e : mesh.edge_ids()) {
      const auto& [a, b] = mesh.edge(e).endpoints;
      const auto ca = coloring->find(a);
      const auto cb = coloring->find(b);
      if (ca != coloring->end() && cb != coloring->end() && ca->second == cb->second) {
        ok = false;
        r.details.push_back("coloring: edge " + id(a) + "-" + id(b) + " joins one color");
      }
    }
    if (gem) {
      for (const std::string& issue : validate_gem(*gem, mesh, *coloring)) {
        ok = false;
        r.details.push_back("gem " + issue);
      }
    }
    r.coloring_ok = ok;
  }
  return r;
}

}  // namespace evendt
