#include <cmath>
#include <set>

#include "doctest.h"
#include "evendt/probe.hpp"

using namespace evendt;

TEST_SUITE("probe") {
  TEST_CASE("generators are deterministic and give distinct points") {
    for (Distribution d : {Distribution::Uniform, Distribution::GridJitter, Distribution::CocircularStress}) {
      const auto a = generate(d, 200, 5);
      CHECK(a == generate(d, 200, 5));
      CHECK(a.size() == 200);
      std::set<std::pair<double, double>> seen;
      for (const Point& p : a) seen.emplace(p.x, p.y);
      CHECK(seen.size() == 200);
      CHECK(parse_distribution(distribution_name(d)) == d);
    }
    CHECK(generate(Distribution::Uniform, 10, 1) != generate(Distribution::Uniform, 10, 2));
    CHECK_THROWS_AS(parse_distribution("gaussian"), InvalidInput);
  }

  TEST_CASE("cocircular stress has exactly cocircular quadruples on integer coordinates") {
    const auto pts = generate(Distribution::CocircularStress, 40, 3);
    std::size_t quadruples = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      CHECK(pts[i].x == std::floor(pts[i].x));
      CHECK(pts[i].y == std::floor(pts[i].y));
      for (std::size_t j = i + 1; j < pts.size(); ++j) {
        for (std::size_t k = j + 1; k < pts.size(); ++k) {
          if (orient2d(pts[i], pts[j], pts[k]) == Orientation::Collinear) continue;
          for (std::size_t l = k + 1; l < pts.size(); ++l) {
            quadruples += incircle(pts[i], pts[j], pts[k], pts[l]) == CirclePosition::OnCircle;
          }
        }
      }
    }
    CHECK(quadruples > 0);
  }

  TEST_CASE("three points never need a Steiner vertex") {
    ProbeConfig probe;
    probe.n = 3;
    probe.trials = 10;
    const ProbeReport r = probe_conjecture(probe, EvenConfig{});
    CHECK(r.records.size() == 10);
    CHECK(r.max_m == 0);
    CHECK(r.cap_triggers == 0);
  }

  TEST_CASE("CSV does not depend on the thread count") {
    ProbeConfig probe;
    probe.n = 40;
    probe.trials = 24;
    probe.seed = 17;
    probe.threads = 1;
    const std::string one = probe_csv(probe_conjecture(probe, EvenConfig{}));
    probe.threads = 4;
    const std::string four = probe_csv(probe_conjecture(probe, EvenConfig{}));
    CHECK(one == four);
    CHECK(one.rfind("trial,n,m,iterations,merge_u_depth,cap_triggered,outcome\n", 0) == 0);
  }

  TEST_CASE("cap triggers are recorded with the instance") {
    ProbeConfig probe;
    probe.n = 30;
    probe.trials = 5;
    EvenConfig config;
    config.steiner_cap = 0;
    const ProbeReport r = probe_conjecture(probe, config);
    CHECK(r.cap_triggers > 0);
    for (const ProbeRecord& rec : r.records) {
      if (rec.outcome == Outcome::CapTriggered) CHECK(rec.reproducer.size() == 30);
    }
  }

  TEST_CASE("pentagon with center as a fixed instance") {
    std::vector<Point> pts{{0, 0}};
    for (int k = 0; k < 5; ++k) pts.push_back({std::cos(1.2566370614359172 * k), std::sin(1.2566370614359172 * k)});
    const ProbeRecord rec = probe_instance(pts, EvenConfig{});
    CHECK(rec.m >= 1);
    CHECK(rec.outcome == Outcome::Ok);
  }
}
