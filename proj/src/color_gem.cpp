#include "evendt/color_gem.hpp"

#include <algorithm>
#include <deque>

namespace evendt {

NotThreeColorable::NotThreeColorable(VertexId witness)
    : Error("triangulation is not 3-colorable; odd vertex " + std::to_string(witness.value())),
      witness_(witness) {}

namespace {

std::optional<Color> color_of(const Coloring& coloring, VertexId v) {
  const auto it = coloring.find(v);
  if (it == coloring.end()) return std::nullopt;
  return it->second;
}

VertexId witness_for(const Pseudotriangulation& mesh, const Triangle& at, VertexId clash) {
  for (VertexId v : at.corners) {
    if (mesh.is_interior(v) && !mesh.is_even(v)) return v;
  }
  for (VertexId v : mesh.vertex_ids()) {
    if (mesh.is_interior(v) && !mesh.is_even(v)) return v;
  }
  return clash;
}

std::string describe(TriangleId t) { return "triangle " + std::to_string(t.value()); }

}  // namespace

Coloring three_color(const Pseudotriangulation& mesh, std::optional<TriangleId> seed) {
  const std::vector<TriangleId> triangles = mesh.triangle_ids();
  if (triangles.empty()) throw InvalidInput("three_color needs at least one triangle");
  if (seed && !mesh.contains(*seed)) throw InvalidInput("seed triangle is not in the mesh");

  Coloring coloring;
  std::vector<bool> done(mesh.triangle_capacity(), false);
  auto assign = [&](const Triangle& tri, VertexId v, Color c) {
    const auto have = color_of(coloring, v);
    if (have && *have != c) throw NotThreeColorable(witness_for(mesh, tri, v));
    coloring[v] = c;
  };
  auto flood = [&](TriangleId start) {
    const Triangle& first = mesh.triangle(start);
    std::size_t low = 0;
    for (std::size_t k = 1; k < 3; ++k) {
      if (lex_less(mesh.position(first.corners[k]), mesh.position(first.corners[low]))) low = k;
    }
    for (std::size_t k = 0; k < 3; ++k) assign(first, first.corners[(low + k) % 3], static_cast<Color>(k));
    done[start.value()] = true;
    std::deque<TriangleId> queue{start};
    while (!queue.empty()) {
      const Triangle& tri = mesh.triangle(queue.front());
      queue.pop_front();
      for (std::size_t k = 0; k < 3; ++k) {
        const VertexId a = tri.corners[k];
        const VertexId b = tri.corners[(k + 1) % 3];
        const auto next = mesh.triangle_left_of(b, a);
        if (!next || done[next->value()]) continue;
        done[next->value()] = true;
        const Triangle& other = mesh.triangle(*next);
        const Color third = static_cast<Color>(3 - coloring.at(a) - coloring.at(b));
        for (VertexId v : other.corners) {
          if (v != a && v != b) assign(other, v, third);
        }
        queue.push_back(*next);
      }
    }
  };

  flood(seed ? *seed : triangles.front());
  for (TriangleId t : triangles) {
    if (!done[t.value()]) flood(t);
  }
  for (VertexId v : mesh.vertex_ids()) {
    if (!coloring.contains(v)) {
      throw InvalidInput("vertex " + std::to_string(v.value()) + " lies on no triangle");
    }
  }
  // Triangles meeting only at a vertex or joined by a bare edge are not checked by propagation.
  for (EdgeId e : mesh.edge_ids()) {
    const auto& [a, b] = mesh.edge(e).endpoints;
    if (coloring.at(a) == coloring.at(b)) {
      const Triangle& any = mesh.triangle(triangles.front());
      throw NotThreeColorable(witness_for(mesh, any, a));
    }
  }
  return coloring;
}

GemMap build_gem(const Pseudotriangulation& mesh, const Coloring& coloring) {
  for (VertexId v : mesh.vertex_ids()) {
    const auto c = color_of(coloring, v);
    if (!c) throw InvalidColoring("vertex " + std::to_string(v.value()) + " has no color");
    if (*c > 2) throw InvalidColoring("vertex " + std::to_string(v.value()) + " has color outside {0,1,2}");
  }
  for (EdgeId e : mesh.edge_ids()) {
    const auto& [a, b] = mesh.edge(e).endpoints;
    if (coloring.at(a) == coloring.at(b)) {
      throw InvalidColoring("edge " + std::to_string(a.value()) + "-" + std::to_string(b.value()) +
                            " joins two vertices of one color");
    }
  }
  GemMap gem;
  for (TriangleId t : mesh.triangle_ids()) {
    const Triangle& tri = mesh.triangle(t);
    GemRecord rec{t, {kBorder, kBorder, kBorder}};
    for (std::size_t k = 0; k < 3; ++k) {
      const Color i = coloring.at(tri.corners[k]);
      rec.p[i] = mesh.triangle_left_of(tri.corners[(k + 2) % 3], tri.corners[(k + 1) % 3]);
    }
    gem.emplace(t, rec);
  }
  return gem;
}

std::vector<std::string> validate_gem(const GemMap& gem, const Pseudotriangulation& mesh, const Coloring& coloring) {
  std::vector<std::string> out;
  auto report = [&](const std::string& kind, const std::string& what) { out.push_back(kind + ": " + what); };
  auto slot_name = [](const GemSlot& s) { return s ? describe(*s) : std::string("border"); };

  for (const auto& [t, rec] : gem) {
    if (rec.triangle != t) report("record", describe(t) + " is keyed under another id");
    if (!mesh.contains(t)) {
      report("record", describe(t) + " is not in the mesh");
      continue;
    }
    const Triangle& tri = mesh.triangle(t);
    std::array<bool, 3> seen{};
    bool colored = true;
    for (std::size_t k = 0; k < 3; ++k) {
      const auto c = color_of(coloring, tri.corners[k]);
      if (!c || *c > 2 || seen[*c]) {
        colored = false;
        break;
      }
      seen[*c] = true;
      const GemSlot expect = mesh.triangle_left_of(tri.corners[(k + 2) % 3], tri.corners[(k + 1) % 3]);
      if (rec.p[*c] != expect) {
        report("slot", describe(t) + " slot " + std::to_string(*c) + " holds " + slot_name(rec.p[*c]) +
                           ", expected " + slot_name(expect));
      }
    }
    if (!colored) report("slot", describe(t) + " corners do not carry three distinct colors");
  }
  for (TriangleId t : mesh.triangle_ids()) {
    if (!gem.contains(t)) report("record", describe(t) + " has no record");
  }

  for (const auto& [t, rec] : gem) {
    for (std::size_t i = 0; i < 3; ++i) {
      if (!rec.p[i]) continue;
      const auto it = gem.find(*rec.p[i]);
      if (it == gem.end() || it->second.p[i] != t) {
        report("involution", describe(t) + " slot " + std::to_string(i) + " -> " + describe(*rec.p[i]) +
                                 " does not point back");
      }
    }
  }

  if (!gem.empty()) {
    std::map<TriangleId, bool> reached;
    std::deque<TriangleId> queue{gem.begin()->first};
    reached[gem.begin()->first] = true;
    while (!queue.empty()) {
      const GemRecord& rec = gem.at(queue.front());
      queue.pop_front();
      for (const GemSlot& s : rec.p) {
        if (s && gem.contains(*s) && !reached[*s]) {
          reached[*s] = true;
          queue.push_back(*s);
        }
      }
    }
    const auto count = static_cast<std::size_t>(std::count_if(reached.begin(), reached.end(),
                                                              [](const auto& r) { return r.second; }));
    if (count != gem.size()) {
      report("connectivity", std::to_string(gem.size() - count) + " of " + std::to_string(gem.size()) +
                                 " triangles unreachable from " + describe(gem.begin()->first));
    }
  }
  return out;
}

}  // namespace evendt
