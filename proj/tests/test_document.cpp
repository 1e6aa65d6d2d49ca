#include <string>

#include "doctest.h"
#include "evendt/document.hpp"
#include "evendt/verify.hpp"
#include "support.hpp"

using namespace evendt;

namespace {

Document even_document(const std::vector<Point>& pts) {
  const EvenResult r = dqa_even(pts);
  Document doc = make_document(Mode::Even, r.mesh, r.stats, r.top_base);
  doc.coloring = three_color(doc.mesh);
  doc.gem = build_gem(doc.mesh, *doc.coloring);
  return doc;
}

std::size_t count(const std::string& text, const std::string& what) {
  std::size_t n = 0;
  for (auto at = text.find(what); at != std::string::npos; at = text.find(what, at + 1)) ++n;
  return n;
}

}  // namespace

TEST_SUITE("document") {
  TEST_CASE("point files") {
    const auto pts = parse_points("# header\n0 0\n  1.5\t-2e-3  \n\n# note\n0.1 3\n");
    REQUIRE(pts.size() == 3);
    CHECK(pts[1] == Point{1.5, -2e-3});
    CHECK(pts[2].x == 0.1);  // correctly rounded
    CHECK(parse_points("+1 2\n")[0] == Point{1, 2});
    CHECK(parse_points("").empty());
  }

  TEST_CASE("malformed point files") {
    CHECK_THROWS_AS(parse_points("1 2 3\n"), InvalidInput);
    CHECK_THROWS_AS(parse_points("1\n"), InvalidInput);
    CHECK_THROWS_AS(parse_points("1 x\n"), InvalidInput);
    CHECK_THROWS_AS(parse_points("1 2,\n"), InvalidInput);
    CHECK_THROWS_AS(parse_points("inf 2\n"), InvalidInput);
    CHECK_THROWS_AS(parse_points("nan 2\n"), InvalidInput);
    CHECK_THROWS_AS(parse_points("0 0\n1 1\n0.0 0\n"), DuplicatePoint);
    try {
      parse_points("0 0\n\n1 a\n");
    } catch (const InvalidInput& e) {
      CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
  }

  TEST_CASE("points survive formatting") {
    const auto pts = support::random_points(20, 3);
    CHECK(parse_points(format_points(pts)) == pts);
  }

  TEST_CASE("modes by name") {
    CHECK(parse_mode("even") == Mode::Even);
    CHECK(mode_name(Mode::Relaxed) == "relaxed");
    CHECK_THROWS_AS(parse_mode("odd"), InvalidInput);
  }

  TEST_CASE("document round trip keeps identifiers, colors and GEM") {
    const Document doc = even_document(support::pentagon_center());
    const std::string text = write_document(doc);
    const Document back = read_document(text);
    CHECK(back.mode == Mode::Even);
    CHECK(support::same_structure(doc.mesh, back.mesh));
    CHECK(back.coloring == doc.coloring);
    REQUIRE(back.gem);
    CHECK(back.gem->size() == doc.gem->size());
    for (const auto& [t, rec] : *doc.gem) CHECK(back.gem->at(t).p == rec.p);
    CHECK(back.stats.m_steiner == doc.stats.m_steiner);
    CHECK(back.top_base == doc.top_base);
    CHECK(write_document(back) == text);
  }

  TEST_CASE("plain documents carry no colors") {
    const auto m = dqa(support::random_points(10, 1));
    const Document doc = make_document(Mode::Plain, m, RunStats{});
    const Document back = read_document(write_document(doc));
    CHECK_FALSE(back.coloring);
    CHECK_FALSE(back.gem);
    CHECK(support::same_structure(doc.mesh, back.mesh));
  }

  TEST_CASE("bad documents") {
    CHECK_THROWS_AS(read_document("{"), InvalidInput);
    CHECK_THROWS_AS(read_document("{}"), InvalidInput);
    std::string text = write_document(make_document(Mode::Plain, dqa(support::random_points(5, 2)), RunStats{}));
    const std::string version = "\"format_version\": 1";
    REQUIRE(text.find(version) != std::string::npos);
    std::string future = text;
    future.replace(future.find(version), version.size(), "\"format_version\": 99");
    CHECK_THROWS_AS(read_document(future), InvalidInput);
  }

  TEST_CASE("svg of a single triangle") {
    const auto m = dqa(std::vector<Point>{{0, 0}, {1, 0}, {0, 1}});
    const std::string svg = render_svg(make_document(Mode::Plain, m, RunStats{}));
    CHECK(count(svg, "<line ") == 3);
    CHECK(count(svg, "<circle ") == 3);
    CHECK(count(svg, "color 0") == 0);  // no legend without colors
  }

  TEST_CASE("svg marks Steiner vertices and is deterministic") {
    const Document doc = even_document(support::pentagon_center());
    const std::string svg = render_svg(doc, {true, true});
    CHECK(count(svg, "<rect x=") == doc.stats.m_steiner);
    CHECK(count(svg, "stroke-width=\"4\"") == 1);
    CHECK(svg == render_svg(even_document(support::pentagon_center()), {true, true}));
  }
}
