#include "evendt/document.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>

#include "json.hpp"

namespace evendt {

namespace {

using Json = nlohmann::ordered_json;

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\f\v");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\f\v");
  return s.substr(first, last - first + 1);
}

std::optional<double> parse_decimal(std::string_view token) {
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  double value = 0.0;
  const auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || end != token.data() + token.size() || !std::isfinite(value)) return std::nullopt;
  return value;
}

Json stats_json(const RunStats& s) {
  return Json{{"n_input", s.n_input},
              {"m_steiner", s.m_steiner},
              {"merge_u_calls", s.merge_u_calls},
              {"max_merge_u_depth", s.max_merge_u_depth},
              {"loop_iterations", s.loop_iterations},
              {"cap_triggered", s.cap_triggered},
              {"collinear_input", s.collinear_input},
              {"chain_retriggers", s.chain_retriggers},
              {"border_triggers", s.border_triggers},
              {"hull_insertions", s.hull_insertions},
              {"relays", s.relays},
              {"splits", s.splits}};
}

RunStats stats_from(const Json& j) {
  RunStats s;
  s.n_input = j.at("n_input").get<std::size_t>();
  s.m_steiner = j.at("m_steiner").get<std::size_t>();
  s.merge_u_calls = j.at("merge_u_calls").get<std::size_t>();
  s.max_merge_u_depth = j.at("max_merge_u_depth").get<std::size_t>();
  s.loop_iterations = j.at("loop_iterations").get<std::size_t>();
  s.cap_triggered = j.at("cap_triggered").get<bool>();
  s.collinear_input = j.at("collinear_input").get<bool>();
  s.chain_retriggers = j.value("chain_retriggers", std::size_t{0});
  s.border_triggers = j.value("border_triggers", std::size_t{0});
  s.hull_insertions = j.value("hull_insertions", std::size_t{0});
  s.relays = j.value("relays", std::size_t{0});
  s.splits = j.value("splits", std::size_t{0});
  return s;
}

std::string fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

const char* fill_for(std::optional<Color> c) {
  static constexpr const char* kPalette[] = {"#d62728", "#2ca02c", "#1f77b4"};
  return c && *c < 3 ? kPalette[*c] : "#222222";
}

}  // namespace

std::vector<Point> parse_points(std::string_view text) {
  std::vector<Point> points;
  std::unordered_map<Point, std::size_t, PointHash> seen;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    const std::string_view line = trim(text.substr(0, nl));
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    std::vector<std::string_view> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
      const auto start = line.find_first_not_of(" \t", i);
      if (start == std::string_view::npos) break;
      const auto stop = std::min(line.find_first_of(" \t", start), line.size());
      tokens.push_back(line.substr(start, stop - start));
      i = stop;
    }
    const std::string where = "line " + std::to_string(line_no);
    if (tokens.size() != 2) throw InvalidInput(where + ": expected two numbers");
    const auto x = parse_decimal(tokens[0]);
    const auto y = parse_decimal(tokens[1]);
    if (!x || !y) throw InvalidInput(where + ": not a finite decimal");
    const Point p{*x, *y};
    const auto [it, fresh] = seen.emplace(p, line_no);
    if (!fresh) throw DuplicatePoint(where + " repeats the point on line " + std::to_string(it->second));
    points.push_back(p);
  }
  return points;
}

std::vector<Point> read_points(const std::string& path) { return parse_points(read_file(path)); }

std::string format_points(const std::vector<Point>& points) {
  std::string out;
  for (const Point& p : points) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g %.17g\n", p.x, p.y);
    out += buf;
  }
  return out;
}

std::string mode_name(Mode mode) {
  switch (mode) {
    case Mode::Plain: return "plain";
    case Mode::Even: return "even";
    case Mode::Relaxed: return "relaxed";
  }
  throw InternalError("unknown mode");
}

Mode parse_mode(std::string_view name) {
  if (name == "plain") return Mode::Plain;
  if (name == "even") return Mode::Even;
  if (name == "relaxed") return Mode::Relaxed;
  throw InvalidInput("unknown mode '" + std::string(name) + "'");
}

Document make_document(Mode mode, const Pseudotriangulation& mesh, const RunStats& stats,
                       std::optional<std::array<VertexId, 2>> top_base) {
  Document doc;
  doc.mode = mode;
  doc.mesh = mesh.compacted();
  doc.stats = stats;
  doc.top_base = top_base;
  return doc;
}

std::string write_document(const Document& doc) {
  const Pseudotriangulation& mesh = doc.mesh;
  Json j;
  j["format_version"] = kFormatVersion;
  j["mode"] = mode_name(doc.mode);
  Json vertices = Json::array();
  for (VertexId v : mesh.vertex_ids()) {
    Json rec{{"id", v.value()},
             {"x", mesh.position(v).x},
             {"y", mesh.position(v).y},
             {"origin", mesh.vertex(v).origin == Origin::Input ? "input" : "steiner"},
             {"color", nullptr}};
    if (doc.coloring) {
      const auto it = doc.coloring->find(v);
      if (it != doc.coloring->end()) rec["color"] = it->second;
    }
    vertices.push_back(std::move(rec));
  }
  j["vertices"] = std::move(vertices);
  Json edges = Json::array();
  for (EdgeId e : mesh.edge_ids()) {
    const Edge& edge = mesh.edge(e);
    edges.push_back(Json{{"id", e.value()},
                         {"endpoints", {edge.endpoints[0].value(), edge.endpoints[1].value()}},
                         {"border", edge.is_border()}});
  }
  j["edges"] = std::move(edges);
  Json triangles = Json::array();
  for (TriangleId t : mesh.triangle_ids()) {
    const auto& c = mesh.triangle(t).corners;
    triangles.push_back(Json{{"id", t.value()}, {"corners", {c[0].value(), c[1].value(), c[2].value()}}});
  }
  j["triangles"] = std::move(triangles);
  if (doc.gem) {
    Json gem = Json::array();
    for (const auto& [t, rec] : *doc.gem) {
      Json slots = Json::array();
      for (const GemSlot& s : rec.p) slots.push_back(s ? Json(s->value()) : Json(nullptr));
      gem.push_back(Json{{"triangle", t.value()}, {"p", std::move(slots)}});
    }
    j["gem"] = std::move(gem);
  } else {
    j["gem"] = nullptr;
  }
  j["stats"] = stats_json(doc.stats);
  j["top_base"] = doc.top_base ? Json{(*doc.top_base)[0].value(), (*doc.top_base)[1].value()} : Json(nullptr);
  return j.dump(2) + "\n";
}

Document read_document(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::exception& e) {
    throw InvalidInput(std::string("document is not valid JSON: ") + e.what());
  }
  try {
    if (j.at("format_version").get<int>() != kFormatVersion) throw InvalidInput("unsupported format_version");
    Document doc;
    doc.mode = parse_mode(j.at("mode").get<std::string>());

    std::vector<Pseudotriangulation::VertexRecord> vertices;
    Coloring coloring;
    for (const Json& v : j.at("vertices")) {
      if (v.at("id").get<std::size_t>() != vertices.size()) throw InvalidInput("vertex ids must be 0, 1, 2, ...");
      const Point p{v.at("x").get<double>(), v.at("y").get<double>()};
      if (!std::isfinite(p.x) || !std::isfinite(p.y)) throw InvalidInput("vertex coordinates must be finite");
      const std::string origin = v.at("origin").get<std::string>();
      if (origin != "input" && origin != "steiner") throw InvalidInput("unknown origin '" + origin + "'");
      const VertexId id(vertices.size());
      if (!v.at("color").is_null()) coloring[id] = v.at("color").get<Color>();
      vertices.push_back({p, origin == "input" ? Origin::Input : Origin::Steiner, true});
    }
    auto vertex = [&](const Json& x) {
      const auto i = x.get<std::size_t>();
      if (i >= vertices.size()) throw InvalidInput("reference to unknown vertex " + std::to_string(i));
      return VertexId(i);
    };
    std::vector<std::array<VertexId, 2>> edges;
    for (const Json& e : j.at("edges")) {
      if (e.at("id").get<std::size_t>() != edges.size()) throw InvalidInput("edge ids must be 0, 1, 2, ...");
      const Json& ends = e.at("endpoints");
      if (ends.size() != 2) throw InvalidInput("an edge needs two endpoints");
      edges.push_back({vertex(ends[0]), vertex(ends[1])});
    }
    // Triangles are renumbered densely in document order; ids the GEM names
    // but no triangle carries get fresh numbers past the end, so verification
    // reports them instead of the reader.
    std::vector<std::array<VertexId, 3>> triangles;
    std::map<std::size_t, TriangleId> renumber;
    for (const Json& t : j.at("triangles")) {
      const Json& c = t.at("corners");
      if (c.size() != 3) throw InvalidInput("a triangle needs three corners");
      if (!renumber.emplace(t.at("id").get<std::size_t>(), TriangleId(triangles.size())).second) {
        throw InvalidInput("repeated triangle id");
      }
      triangles.push_back({vertex(c[0]), vertex(c[1]), vertex(c[2])});
    }
    std::size_t fresh = triangles.size();
    auto triangle = [&](const Json& x) {
      const auto [it, added] = renumber.emplace(x.get<std::size_t>(), TriangleId(fresh));
      if (added) ++fresh;
      return it->second;
    };
    doc.mesh = Pseudotriangulation::assemble(vertices, edges, triangles);
    if (!coloring.empty()) doc.coloring = std::move(coloring);
    if (!j.at("gem").is_null()) {
      GemMap gem;
      for (const Json& r : j.at("gem")) {
        const Json& p = r.at("p");
        if (p.size() != 3) throw InvalidInput("a GEM record needs three slots");
        GemRecord rec{triangle(r.at("triangle")), {kBorder, kBorder, kBorder}};
        for (std::size_t i = 0; i < 3; ++i) {
          if (!p[i].is_null()) rec.p[i] = triangle(p[i]);
        }
        if (!gem.emplace(rec.triangle, rec).second) throw InvalidInput("repeated GEM record");
      }
      doc.gem = std::move(gem);
    }
    doc.stats = stats_from(j.at("stats"));
    if (!j.at("top_base").is_null()) {
      const Json& b = j.at("top_base");
      if (b.size() != 2) throw InvalidInput("top_base needs two vertices");
      doc.top_base = std::array<VertexId, 2>{vertex(b[0]), vertex(b[1])};
    }
    return doc;
  } catch (const Json::exception& e) {
    throw InvalidInput(std::string("malformed document: ") + e.what());
  }
}

std::string render_svg(const Document& doc, const SvgOptions& options) {
  const Pseudotriangulation& mesh = doc.mesh;
  const std::vector<VertexId> ids = mesh.vertex_ids();
  double lo_x = 0, hi_x = 1, lo_y = 0, hi_y = 1;
  if (!ids.empty()) {
    lo_x = hi_x = mesh.position(ids.front()).x;
    lo_y = hi_y = mesh.position(ids.front()).y;
    for (VertexId v : ids) {
      const Point& p = mesh.position(v);
      lo_x = std::min(lo_x, p.x), hi_x = std::max(hi_x, p.x);
      lo_y = std::min(lo_y, p.y), hi_y = std::max(hi_y, p.y);
    }
  }
  constexpr double kSize = 800.0;
  constexpr double kMargin = 20.0;
  const double span = std::max({hi_x - lo_x, hi_y - lo_y, 1e-300});
  const double scale = (kSize - 2 * kMargin) / span;
  auto sx = [&](double x) { return fixed(kMargin + (x - lo_x) * scale); };
  auto sy = [&](double y) { return fixed(kSize - kMargin - (y - lo_y) * scale); };
  auto color_of = [&](VertexId v) -> std::optional<Color> {
    if (!doc.coloring) return std::nullopt;
    const auto it = doc.coloring->find(v);
    if (it == doc.coloring->end()) return std::nullopt;
    return it->second;
  };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSize << "\" height=\"" << kSize
      << "\" viewBox=\"0 0 " << kSize << ' ' << kSize << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<g stroke=\"#555555\" stroke-width=\"1\">\n";
  for (EdgeId e : mesh.edge_ids()) {
    const auto& [a, b] = mesh.edge(e).endpoints;
    const bool base = options.emphasize_base && doc.top_base &&
                      ((a == (*doc.top_base)[0] && b == (*doc.top_base)[1]) ||
                       (a == (*doc.top_base)[1] && b == (*doc.top_base)[0]));
    out << "<line x1=\"" << sx(mesh.position(a).x) << "\" y1=\"" << sy(mesh.position(a).y) << "\" x2=\""
        << sx(mesh.position(b).x) << "\" y2=\"" << sy(mesh.position(b).y) << '"';
    if (base) out << " stroke=\"#000000\" stroke-width=\"4\"";
    out << "/>\n";
  }
  out << "</g>\n<g stroke=\"#000000\" stroke-width=\"0.5\">\n";
  for (VertexId v : ids) {
    const Point& p = mesh.position(v);
    const char* fill = fill_for(color_of(v));
    if (mesh.vertex(v).origin == Origin::Steiner) {
      out << "<rect x=\"" << fixed(kMargin + (p.x - lo_x) * scale - 4) << "\" y=\""
          << fixed(kSize - kMargin - (p.y - lo_y) * scale - 4) << "\" width=\"8\" height=\"8\" fill=\"" << fill
          << "\"/>\n";
    } else {
      out << "<circle cx=\"" << sx(p.x) << "\" cy=\"" << sy(p.y) << "\" r=\"3.5\" fill=\"" << fill << "\"/>\n";
    }
  }
  out << "</g>\n";
  if (options.label_colors && doc.coloring) {
    out << "<g font-family=\"monospace\" font-size=\"10\">\n";
    for (VertexId v : ids) {
      const auto c = color_of(v);
      if (!c) continue;
      const Point& p = mesh.position(v);
      out << "<text x=\"" << fixed(kMargin + (p.x - lo_x) * scale + 5) << "\" y=\""
          << fixed(kSize - kMargin - (p.y - lo_y) * scale - 5) << "\">" << int(*c) << "</text>\n";
    }
    out << "</g>\n";
  }
  if (doc.coloring) {
    out << "<g font-family=\"monospace\" font-size=\"12\">\n";
    for (Color c = 0; c < 3; ++c) {
      out << "<circle cx=\"" << 12 << "\" cy=\"" << 12 + 16 * c << "\" r=\"5\" fill=\"" << fill_for(c)
          << "\"/><text x=\"22\" y=\"" << 16 + 16 * c << "\">color " << int(c) << "</text>\n";
    }
    out << "</g>\n";
  }
  out << "</svg>\n";
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InvalidInput("cannot write " + path);
  out << text;
  if (!out) throw InvalidInput("failed writing " + path);
}

}  // namespace evendt
