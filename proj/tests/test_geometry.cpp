#include <cmath>
#include <random>

#include "doctest.h"
#include "evendt/geometry.hpp"
#include "exact_oracle.hpp"

using namespace evendt;

namespace {

Point nudge(const Point& p, int ulps_x, int ulps_y) {
  Point q = p;
  for (int i = 0; i < std::abs(ulps_x); ++i) q.x = std::nextafter(q.x, ulps_x > 0 ? INFINITY : -INFINITY);
  for (int i = 0; i < std::abs(ulps_y); ++i) q.y = std::nextafter(q.y, ulps_y > 0 ? INFINITY : -INFINITY);
  return q;
}

}  // namespace

TEST_SUITE("geometry") {
  TEST_CASE("orientation of simple turns") {
    CHECK(orient2d({0, 0}, {1, 0}, {0, 1}) == Orientation::CounterClockwise);
    CHECK(orient2d({0, 0}, {0, 1}, {1, 0}) == Orientation::Clockwise);
    CHECK(orient2d({0, 0}, {1, 1}, {2, 2}) == Orientation::Collinear);
  }

  TEST_CASE("incircle of the unit square corners") {
    CHECK(incircle({0, 0}, {1, 0}, {1, 1}, {0.5, 0.5}) == CirclePosition::Inside);
    CHECK(incircle({0, 0}, {1, 0}, {1, 1}, {0, 1}) == CirclePosition::OnCircle);
    CHECK(incircle({0, 0}, {1, 0}, {1, 1}, {2, 2}) == CirclePosition::Outside);
    // Either orientation of the triple.
    CHECK(incircle({0, 0}, {1, 1}, {1, 0}, {0.5, 0.5}) == CirclePosition::Inside);
    CHECK_THROWS_AS(incircle({0, 0}, {1, 1}, {2, 2}, {0, 1}), DegenerateCircle);
  }

  TEST_CASE("non-finite coordinates are rejected") {
    CHECK_THROWS_AS(orient2d({0, 0}, {NAN, 0}, {0, 1}), InvalidInput);
    CHECK_THROWS_AS(incircle({0, 0}, {1, 0}, {0, 1}, {INFINITY, 0}), InvalidInput);
  }

  TEST_CASE("orientation agrees with the rational oracle near collinearity") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> coord(-1.0, 1.0);
    std::uniform_int_distribution<int> ulps(-3, 3);
    for (int trial = 0; trial < 3000; ++trial) {
      const Point a{coord(rng), coord(rng)};
      const Point b{coord(rng), coord(rng)};
      const double t = coord(rng);
      const Point on{a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)};
      const Point c = nudge(on, ulps(rng), ulps(rng));
      REQUIRE(orient2d(a, b, c) == oracle::orientation(a, b, c));
    }
  }

  TEST_CASE("incircle agrees with the rational oracle near cocircularity") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
    std::uniform_int_distribution<int> ulps(-2, 2);
    for (int trial = 0; trial < 3000; ++trial) {
      auto on_circle = [&] {
        const double t = angle(rng);
        return Point{0.3 + 0.7 * std::cos(t), -0.2 + 0.7 * std::sin(t)};
      };
      const Point a = on_circle(), b = on_circle(), c = on_circle();
      if (oracle::orient_sign(a, b, c) == 0) continue;
      const Point d = nudge(on_circle(), ulps(rng), ulps(rng));
      REQUIRE(incircle(a, b, c, d) == oracle::position(a, b, c, d));
    }
  }

  TEST_CASE("exactly cocircular integer points are on the circle") {
    CHECK(incircle({5, 0}, {0, 5}, {-3, 4}, {4, -3}) == CirclePosition::OnCircle);
    CHECK(incircle({5, 0}, {0, 5}, {-3, 4}, {4, -3.0000000001}) == CirclePosition::Outside);
  }

  TEST_CASE("circumcircle and arc points") {
    const Circle c = circumcircle({0, 0}, {2, 0}, {0, 2});
    CHECK(c.center.x == doctest::Approx(1.0));
    CHECK(c.center.y == doctest::Approx(1.0));
    CHECK(c.radius_sq == doctest::Approx(2.0));
    CHECK_THROWS_AS(circumcircle({0, 0}, {1, 1}, {2, 2}), DegenerateCircle);

    const auto arc = arc_points(c, {0, 0}, {2, 0}, Orientation::Clockwise, 5);
    REQUIRE(arc.size() == 5);
    CHECK(arc.front().x == doctest::Approx(1.0));
    for (const Point& p : arc) {
      CHECK(orient2d({0, 0}, {2, 0}, p) == Orientation::Clockwise);
      CHECK((p.x - 1) * (p.x - 1) + (p.y - 1) * (p.y - 1) == doctest::Approx(2.0));
    }
  }

  TEST_CASE("segment intersection") {
    CHECK(segments_intersect({0, 0}, {2, 2}, {0, 2}, {2, 0}));
    CHECK_FALSE(segments_intersect({0, 0}, {1, 1}, {1, 1}, {2, 0}));  // shared endpoint only
    CHECK(segments_intersect({0, 0}, {2, 0}, {1, 0}, {3, 0}));        // overlap
    CHECK_FALSE(segments_intersect({0, 0}, {1, 0}, {0, 1}, {1, 1}));
  }

  TEST_CASE("lexicographic order") {
    CHECK(lex_less({0, 5}, {1, 0}));
    CHECK(lex_less({1, 0}, {1, 2}));
    CHECK_FALSE(lex_less({1, 2}, {1, 2}));
  }
}
