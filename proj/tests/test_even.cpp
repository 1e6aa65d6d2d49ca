#include <algorithm>

#include "doctest.h"
#include "evendt/even.hpp"
#include "evendt/verify.hpp"
#include "exact_oracle.hpp"
#include "support.hpp"

using namespace evendt;

namespace {

// A plain triangulation with some odd interior vertex.
struct OddCase {
  Pseudotriangulation mesh;
  VertexId odd;
};

OddCase pentagon_case() {
  const auto pts = support::pentagon_center();
  OddCase c{dqa(pts), {}};
  const auto odd = check_parity(c.mesh);
  REQUIRE(odd.size() == 1);
  c.odd = odd.front();
  return c;
}

}  // namespace

TEST_SUITE("even") {
  TEST_CASE("default cap") {
    CHECK(default_steiner_cap(0) == 100);
    CHECK(default_steiner_cap(100) == 1100);
  }

  TEST_CASE("pentagon with center: plain leaves the center odd, Even fixes it") {
    const auto pts = support::pentagon_center();
    const auto plain = dqa(pts);
    const auto odd = check_parity(plain);
    REQUIRE(odd.size() == 1);
    CHECK(plain.position(odd.front()) == Point{0, 0});
    CHECK(plain.degree(odd.front()) == 5);

    const EvenResult r = dqa_even(pts);
    CHECK(r.stats.m_steiner >= 1);
    CHECK(check_parity(r.mesh).empty());
    CHECK(check_delaunay(r.mesh).ok);
    CHECK(r.insertions.size() == r.stats.m_steiner);
    for (const auto& ins : r.insertions) CHECK(replay_insertion(ins));
  }

  TEST_CASE("convex position: no interior vertex needs a Steiner vertex") {
    const std::vector<Point> pts{{0, 0}, {2, 0.1}, {2.2, 1.9}, {-0.1, 2}};
    EvenConfig interior;
    interior.parity_scope = ParityScope::InteriorOnly;
    const EvenResult r = dqa_even(pts, interior);
    CHECK(r.stats.m_steiner == 0);
    CHECK(support::triples_by_position(r.mesh, pts) == support::triples_by_position(dqa(pts), pts));
    // The literal trigger also fires on passed hull vertices; all such insertions are border triggers.
    const EvenResult literal = dqa_even(pts);
    CHECK(check_parity(literal.mesh).empty());
    CHECK(check_delaunay(literal.mesh).ok);
    if (literal.stats.m_steiner > 0) CHECK(literal.stats.border_triggers > 0);
  }

  TEST_CASE("cap of zero turns a needed insertion into an error") {
    EvenConfig config;
    config.steiner_cap = 0;
    try {
      dqa_even(support::pentagon_center(), config);
      FAIL("expected the cap to trigger");
    } catch (const SteinerCapExceeded& e) {
      CHECK(e.stats().cap_triggered);
      CHECK(e.input().size() == 6);
    }
  }

  TEST_CASE("Plain mode equals dqa and Even agrees when it inserts nothing") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
      const auto pts = support::random_points(4 + seed % 30, seed);
      EvenConfig plain;
      plain.mode = Mode::Plain;
      const auto p = dqa_even(pts, plain);
      CHECK(p.stats.m_steiner == 0);
      CHECK(support::triples_by_position(p.mesh, pts) == support::triples_by_position(dqa(pts), pts));
      const auto e = dqa_even(pts);
      if (e.stats.m_steiner == 0) {
        CHECK(support::triples_by_position(e.mesh, pts) == support::triples_by_position(p.mesh, pts));
      }
    }
  }

  TEST_CASE("Even mode postconditions on random inputs") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
      const auto pts = support::random_points(4 + seed * 3, 1000 + seed);
      const EvenResult r = dqa_even(pts);
      CHECK(check_parity(r.mesh).empty());
      CHECK(check_delaunay(r.mesh).ok);
      CHECK(check_hull(r.mesh));
      CHECK(check_euler(r.mesh));
      // Input conserved, Steiner vertices counted.
      CHECK(r.mesh.vertex_count() == pts.size() + r.stats.m_steiner);
      CHECK(r.mesh.steiner_count() == r.stats.m_steiner);
      std::size_t inputs = 0;
      for (VertexId v : r.mesh.vertex_ids()) inputs += r.mesh.vertex(v).origin == Origin::Input;
      CHECK(inputs == pts.size());
      for (const auto& ins : r.insertions) CHECK(replay_insertion(ins));
    }
  }

  TEST_CASE("InteriorOnly scope is also even and Delaunay") {
    EvenConfig config;
    config.parity_scope = ParityScope::InteriorOnly;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto pts = support::random_points(50, 2000 + seed);
      const EvenResult r = dqa_even(pts, config);
      CHECK(check_parity(r.mesh).empty());
      CHECK(check_delaunay(r.mesh).ok);
    }
  }

  TEST_CASE("Relaxed mode stays within n and triggers only on input vertices") {
    EvenConfig config;
    config.mode = Mode::Relaxed;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto pts = support::random_points(50, 3000 + seed);
      const EvenResult r = dqa_even(pts, config);
      CHECK(r.stats.m_steiner <= 50);
      CHECK(check_delaunay(r.mesh).ok);
      for (const auto& ins : r.insertions) {
        const Point& trigger = ins.trigger == Side::Left ? ins.v_left : ins.v_right;
        CHECK(std::find(pts.begin(), pts.end(), trigger) != pts.end());
      }
    }
  }

  TEST_CASE("cavity of a point inside a triangle of the pentagon fan") {
    const OddCase c = pentagon_case();
    const SteinerRegion region = steiner_region(c.mesh, c.odd);
    REQUIRE_FALSE(region.search.empty());
    const TriangleId t = region.search.front();
    const auto& corners = c.mesh.triangle(t).corners;
    Point u{0, 0};
    for (VertexId v : corners) u = {u.x + c.mesh.position(v).x / 3, u.y + c.mesh.position(v).y / 3};
    const auto cavity = steiner_cavity(c.mesh, t, u);
    REQUIRE(cavity);
    CHECK(std::find(cavity->triangles.begin(), cavity->triangles.end(), t) != cavity->triangles.end());
    // Every cavity circle holds u strictly inside, every fence circle does not.
    for (TriangleId k : cavity->triangles) {
      const auto& p = c.mesh.triangle(k).corners;
      CHECK(oracle::position(c.mesh.position(p[0]), c.mesh.position(p[1]), c.mesh.position(p[2]), u) ==
            CirclePosition::Inside);
    }
    for (const auto& f : cavity->fence) {
      if (!f) continue;
      const auto& p = c.mesh.triangle(*f).corners;
      CHECK(oracle::position(c.mesh.position(p[0]), c.mesh.position(p[1]), c.mesh.position(p[2]), u) !=
            CirclePosition::Inside);
    }
    // The boundary is a closed counterclockwise loop seen from u.
    for (std::size_t i = 0; i < cavity->boundary.size(); ++i) {
      const auto& [a, b] = cavity->boundary[i];
      CHECK(cavity->boundary[(i + 1) % cavity->boundary.size()][0] == b);
      CHECK(orient2d(c.mesh.position(a), c.mesh.position(b), u) == Orientation::CounterClockwise);
    }
  }

  TEST_CASE("parity flips match the degree change of an actual insertion") {
    const OddCase c = pentagon_case();
    // A five-triangle fan has no interior fix; u has to go beyond a hull edge.
    SteinerRegion region = steiner_region(c.mesh, c.odd);
    region.beyond_hull = true;
    const auto candidates = steiner_candidates(c.mesh, region, 32);
    REQUIRE_FALSE(candidates.empty());
    for (const Placement& p : candidates) {
      Pseudotriangulation after = c.mesh;
      const VertexId u = insert_steiner(after, p);
      CHECK(validate(after, {true, true}).empty());
      CHECK(check_delaunay(after).ok);
      std::vector<VertexId> changed;
      for (VertexId v : c.mesh.vertex_ids()) {
        if (c.mesh.degree(v) % 2 != after.degree(v) % 2) changed.push_back(v);
      }
      std::vector<VertexId> flips = p.flips;
      std::sort(flips.begin(), flips.end());
      CHECK(flips == changed);
      CHECK(std::find(flips.begin(), flips.end(), c.odd) != flips.end());
      CHECK(after.degree(u) == p.cavity.boundary.size());
    }
  }

  TEST_CASE("placement records replay, and tampered records do not") {
    const OddCase c = pentagon_case();
    SteinerRegion region = steiner_region(c.mesh, c.odd);
    region.beyond_hull = true;
    const Placement p = place_steiner(c.mesh, region, EvenConfig{});
    CHECK(p.cavity.opened);
    SteinerInsertion rec = record_insertion(c.mesh, region, p);
    CHECK(replay_insertion(rec));
    CHECK(oracle::position(rec.v_left, rec.v_right, rec.w, rec.u) == CirclePosition::Inside);

    SteinerInsertion moved = rec;
    moved.u = {50, 50};
    CHECK_FALSE(replay_insertion(moved));
    if (!rec.fence.empty()) {
      SteinerInsertion fenced = rec;
      fenced.fence.push_back({rec.v_left, rec.v_right, rec.w});
      CHECK_FALSE(replay_insertion(fenced));
    }
  }

  TEST_CASE("a region with no acceptable candidate fails") {
    const OddCase c = pentagon_case();
    const SteinerRegion region = steiner_region(c.mesh, c.odd);
    CHECK_THROWS_AS(place_steiner(c.mesh, region, EvenConfig{}), PlacementFailure);
    SteinerRegion outside = region;
    outside.beyond_hull = true;
    CHECK_THROWS_AS(place_steiner(c.mesh, outside, EvenConfig{}, [](const Placement&) { return false; }),
                    PlacementFailure);
  }

  TEST_CASE("routing a fresh vertex") {
    CHECK(route_after_insert({0.4, 7}, {0.5, 0}) == Side::Left);
    CHECK(route_after_insert({0.5, -3}, {0.5, 0}) == Side::Right);
    CHECK(route_after_insert({0.9, 0}, {0.5, 0}) == Side::Right);
  }

  TEST_CASE("merge_u joins a single vertex to a triangulated side") {
    Workspace ws;
    auto& mesh = ws.mesh();
    const auto sorted = sort_points(support::random_points(9, 5));
    auto parts = split(ws, sorted);
    Component side = merge(ws, merge(ws, parts[0], parts[1]), parts[2]);
    const VertexId u = mesh.add_vertex({2.0, 0.5});
    // The lower tangent from u: nothing strictly to the right of anchor -> u.
    VertexId anchor = side.rightmost;
    for (VertexId v : side.members) {
      const bool below = std::any_of(side.members.begin(), side.members.end(), [&](VertexId w) {
        return orient2d(mesh.position(v), mesh.position(u), mesh.position(w)) == Orientation::Clockwise;
      });
      if (!below) anchor = v;
    }
    const EdgeId e = mesh.connect(anchor, u);
    const Component joined = merge_u(ws, side, u, e);
    CHECK(joined.members.size() == 10);
    CHECK(check_delaunay(mesh).ok);
    CHECK(check_hull(mesh));
    CHECK(validate(mesh, {true, true}).empty());

    const VertexId lone = mesh.add_vertex({3.0, 3.0});
    Component other = ws.make_component({lone});
    const VertexId w = mesh.add_vertex({4.0, 3.0});
    CHECK_THROWS_AS(merge_u(ws, other, w, mesh.connect(u, w)), InvalidInput);
  }
}
