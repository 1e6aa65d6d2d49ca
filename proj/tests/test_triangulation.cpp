#include "doctest.h"
#include "evendt/triangulation.hpp"

using namespace evendt;

namespace {

// Unit square split by the diagonal 0-2.
Pseudotriangulation square() {
  Pseudotriangulation m;
  const VertexId a = m.add_vertex({0, 0}), b = m.add_vertex({1, 0}), c = m.add_vertex({1, 1}),
                 d = m.add_vertex({0, 1});
  m.connect(a, b);
  m.connect(b, c);
  m.connect(c, d);
  m.connect(d, a);
  m.connect(a, c);
  return m;
}

}  // namespace

TEST_SUITE("triangulation") {
  TEST_CASE("connecting a 3-cycle creates one counterclockwise triangle") {
    Pseudotriangulation m;
    const VertexId a = m.add_vertex({0, 0}), b = m.add_vertex({1, 0}), c = m.add_vertex({0, 1});
    m.connect(a, b);
    m.connect(b, c);
    CHECK(m.triangle_count() == 0);
    m.connect(c, a);
    REQUIRE(m.triangle_count() == 1);
    const auto t = m.triangle_left_of(a, b);
    REQUIRE(t);
    CHECK(orient2d(m.position(m.triangle(*t).corners[0]), m.position(m.triangle(*t).corners[1]),
                   m.position(m.triangle(*t).corners[2])) == Orientation::CounterClockwise);
    CHECK_FALSE(m.triangle_left_of(b, a));
    CHECK(validate(m, {true, true}).empty());
  }

  TEST_CASE("square with diagonal") {
    const Pseudotriangulation m = square();
    CHECK(m.vertex_count() == 4);
    CHECK(m.edge_count() == 5);
    CHECK(m.triangle_count() == 2);
    CHECK(m.degree(VertexId(0)) == 3);
    CHECK(m.degree(VertexId(1)) == 2);
    CHECK(m.is_even(VertexId(1)));
    CHECK_FALSE(m.is_interior(VertexId(0)));
    const auto diag = m.find_edge(VertexId(2), VertexId(0));
    REQUIRE(diag);
    CHECK_FALSE(m.edge(*diag).is_border());
    CHECK(m.edge(*m.find_edge(VertexId(0), VertexId(1))).is_border());
    CHECK(validate(m, {true, true}).empty());
  }

  TEST_CASE("interior vertex of a fan") {
    Pseudotriangulation m;
    const VertexId c = m.add_vertex({0, 0});
    std::vector<VertexId> ring;
    for (const Point& p : std::vector<Point>{{1, 0}, {0, 1}, {-1, 0}, {0, -1}}) ring.push_back(m.add_vertex(p));
    for (std::size_t i = 0; i < 4; ++i) {
      m.connect(c, ring[i]);
      m.connect(ring[i], ring[(i + 1) % 4]);
    }
    CHECK(m.triangle_count() == 4);
    CHECK(m.is_interior(c));
    CHECK(m.degree(c) == 4);
    CHECK_FALSE(m.is_interior(ring[0]));
    CHECK(m.ccw_neighbor(c, ring[0]) == ring[1]);
    CHECK(m.cw_neighbor(c, ring[0]) == ring[3]);
    const auto hull = m.hull_walk(ring[0], Rotation::CounterClockwise);
    CHECK(hull.size() == 4);
  }

  TEST_CASE("removing an edge drops its triangles") {
    Pseudotriangulation m = square();
    m.remove_edge(*m.find_edge(VertexId(0), VertexId(2)));
    CHECK(m.triangle_count() == 0);
    CHECK(m.edge_count() == 4);
    m.connect(VertexId(1), VertexId(3));
    CHECK(m.triangle_count() == 2);
    CHECK(validate(m, {true, true}).empty());
  }

  TEST_CASE("duplicates are rejected") {
    Pseudotriangulation m = square();
    CHECK_THROWS_AS(m.add_vertex({1, 1}), DuplicatePoint);
    CHECK_THROWS_AS(m.connect(VertexId(0), VertexId(1)), DuplicateEdge);
  }

  TEST_CASE("compaction keeps order and squeezes dead slots") {
    Pseudotriangulation m = square();
    m.remove_edge(*m.find_edge(VertexId(0), VertexId(2)));
    m.connect(VertexId(1), VertexId(3));
    const Pseudotriangulation c = m.compacted();
    CHECK(c.edge_capacity() == c.edge_count());
    CHECK(c.triangle_capacity() == c.triangle_count());
    CHECK(c.vertex_count() == 4);
    CHECK(c.find_edge(VertexId(1), VertexId(3)));
    CHECK(validate(c, {true, true}).empty());
  }

  TEST_CASE("assemble reproduces a mesh and validate reports damage") {
    const Pseudotriangulation m = square();
    std::vector<Pseudotriangulation::VertexRecord> vs;
    for (VertexId v : m.vertex_ids()) vs.push_back({m.position(v), Origin::Input, true});
    std::vector<std::array<VertexId, 2>> es;
    for (EdgeId e : m.edge_ids()) es.push_back(m.edge(e).endpoints);
    std::vector<std::array<VertexId, 3>> ts;
    for (TriangleId t : m.triangle_ids()) ts.push_back(m.triangle(t).corners);
    const Pseudotriangulation back = Pseudotriangulation::assemble(vs, es, ts);
    CHECK(validate(back, {true, true}).empty());
    CHECK(back.triangle_count() == 2);

    ts.pop_back();
    const Pseudotriangulation damaged = Pseudotriangulation::assemble(vs, es, ts);
    CHECK(damaged.triangle_count() == 1);
    CHECK(damaged.vertex_count() - damaged.edge_count() + damaged.triangle_count() == 0);
  }
}
