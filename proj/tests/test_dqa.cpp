#include "doctest.h"
#include "evendt/dqa.hpp"
#include "evendt/verify.hpp"
#include "support.hpp"

using namespace evendt;

TEST_SUITE("dqa") {
  TEST_CASE("sorting is lexicographic and rejects duplicates") {
    const std::vector<Point> pts{{1, 0}, {0, 2}, {0, 1}, {2, -1}};
    const auto sorted = sort_points(pts);
    CHECK(sorted == std::vector<Point>{{0, 1}, {0, 2}, {1, 0}, {2, -1}});
    const std::vector<Point> dup{{0, 0}, {1, 1}, {0, 0}};
    CHECK_THROWS_AS(sort_points(dup), DuplicatePoint);
  }

  TEST_CASE("split makes groups of three with a short tail") {
    Workspace ws;
    const auto sorted = sort_points(support::random_points(8, 1));
    const auto parts = split(ws, sorted);
    REQUIRE(parts.size() == 3);
    CHECK(parts[0].members.size() == 3);
    CHECK(parts[2].members.size() == 2);
    CHECK(ws.mesh().triangle_count() == 2);
    CHECK(ws.mesh().edge_count() == 7);
  }

  TEST_CASE("lower common tangent of two triangles") {
    Workspace ws;
    const std::vector<Point> sorted{{0, 0}, {1, 2}, {2, 0.5}, {3, 0.4}, {4, 2}, {5, 0}};
    auto parts = split(ws, sorted);
    const MergeFrontier f = find_base_edge(ws, parts[0], parts[1]);
    // Every other vertex lies on or above the tangent.
    for (VertexId v : ws.mesh().vertex_ids()) {
      CHECK(orient2d(ws.mesh().position(f.left), ws.mesh().position(f.right), ws.mesh().position(v)) !=
            Orientation::Clockwise);
    }
    CHECK(ws.mesh().position(f.left) == Point{0, 0});
    CHECK(ws.mesh().position(f.right) == Point{5, 0});
  }

  TEST_CASE("tiny inputs") {
    CHECK(dqa(std::vector<Point>{{0, 0}}).vertex_count() == 1);
    const auto two = dqa(std::vector<Point>{{0, 0}, {1, 0}});
    CHECK(two.edge_count() == 1);
    const auto three = dqa(std::vector<Point>{{0, 0}, {1, 0}, {0, 1}});
    CHECK(three.triangle_count() == 1);
  }

  TEST_CASE("collinear input gives a path") {
    std::vector<Point> pts;
    for (int i = 0; i < 10; ++i) pts.push_back({double(i), 2.0 * i});
    const auto m = dqa(pts);
    CHECK(m.triangle_count() == 0);
    CHECK(m.edge_count() == 9);
    CHECK(check_locally_delaunay(m).ok);
    CHECK(check_euler(m));
  }

  TEST_CASE("unit square has two triangles either way") {
    const auto m = dqa(std::vector<Point>{{0, 0}, {1, 0}, {1, 1}, {0, 1}});
    CHECK(m.triangle_count() == 2);
    CHECK(check_delaunay(m).ok);
  }

  TEST_CASE("matches the brute-force oracle on small random inputs") {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      const auto pts = support::random_points(3 + seed % 10, seed);
      const auto m = dqa(pts);
      REQUIRE(same_delaunay_cells(support::triples_by_position(m, pts), brute_force_delaunay(pts), pts));
    }
  }

  TEST_CASE("cocircular grid input matches up to cocircular cells") {
    std::vector<Point> pts;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) pts.push_back({double(i), double(j)});
    }
    const auto m = dqa(pts);
    CHECK(m.triangle_count() == 8);
    CHECK(check_delaunay(m).ok);
    CHECK(same_delaunay_cells(support::triples_by_position(m, pts), brute_force_delaunay(pts), pts));
  }

  TEST_CASE("every intermediate snapshot is locally Delaunay") {
    const auto pts = support::random_points(60, 3);
    std::size_t snapshots = 0;
    bool all_ok = true;
    DqaOptions options;
    options.on_iteration = [&](const Pseudotriangulation& m) {
      ++snapshots;
      all_ok = all_ok && check_locally_delaunay(m).ok;
    };
    const auto m = dqa(pts, options);
    CHECK(snapshots > 0);
    CHECK(all_ok);
    CHECK(check_delaunay(m).ok);
  }

  TEST_CASE("exhaustive candidate search agrees with the neighbor scan") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto pts = support::random_points(40, 100 + seed);
      DqaOptions slow;
      slow.search = CandidateSearch::Exhaustive;
      CHECK(support::triples_by_position(dqa(pts), pts) == support::triples_by_position(dqa(pts, slow), pts));
    }
  }

  TEST_CASE("larger random inputs are Delaunay with a convex border") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const auto m = dqa(support::random_points(500, seed));
      CHECK(check_delaunay(m).ok);
      CHECK(check_hull(m));
      CHECK(check_euler(m));
      CHECK(validate(m, {true, true}).empty());
    }
  }
}
