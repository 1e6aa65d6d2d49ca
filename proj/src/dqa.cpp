#include "evendt/dqa.hpp"

#include <algorithm>
#include <unordered_set>

namespace evendt {
namespace {

bool lower_half(const Point& center, const Point& p) {
  return p.y < center.y || (p.y == center.y && p.x < center.x);
}

// First neighbor met rotating clockwise from the +x direction.
VertexId first_cw_from_east(const Pseudotriangulation& mesh, VertexId v) { return mesh.ring(v).back().neighbor; }

// First neighbor met rotating counterclockwise from the -x direction.
VertexId first_ccw_from_west(const Pseudotriangulation& mesh, VertexId v) {
  const auto ring = mesh.ring(v);
  const Point& c = mesh.position(v);
  for (const Incidence& inc : ring) {
    const Point& p = mesh.position(inc.neighbor);
    if (lower_half(c, p) && !(p.y == c.y)) return inc.neighbor;
  }
  return ring.front().neighbor;
}

VertexId highest(const Pseudotriangulation& mesh, const Component& part) {
  return *std::max_element(part.members.begin(), part.members.end(), [&](VertexId a, VertexId b) {
    const Point& pa = mesh.position(a);
    const Point& pb = mesh.position(b);
    return pa.y < pb.y || (pa.y == pb.y && pa.x < pb.x);
  });
}

bool above(const Pseudotriangulation& mesh, const MergeFrontier& f, VertexId c) {
  return orient2d(mesh.position(f.left), mesh.position(f.right), mesh.position(c)) == Orientation::CounterClockwise;
}

std::optional<Candidate> exhaustive_candidate(Workspace& ws, const MergeFrontier& f) {
  const auto& mesh = ws.mesh();
  const Point& pl = mesh.position(f.left);
  const Point& pr = mesh.position(f.right);
  std::optional<Candidate> best;
  for (Side side : {Side::Left, Side::Right}) {
    const Component& part = side == Side::Left ? *f.left_part : *f.right_part;
    for (VertexId c : part.members) {
      if (c == f.left || c == f.right || !above(mesh, f, c)) continue;
      const Point& pc = mesh.position(c);
      bool empty = true;
      for (const Component* other : {f.left_part, f.right_part}) {
        for (VertexId d : other->members) {
          if (d == c || d == f.left || d == f.right) continue;
          if (incircle_ccw(pl, pr, pc, mesh.position(d)) == CirclePosition::Inside) {
            empty = false;
            break;
          }
        }
        if (!empty) break;
      }
      if (empty && (!best || c < best->vertex)) best = Candidate{c, side};
    }
    if (best) break;  // cocircular ties go to the left part
  }
  return best;
}

void remove_crossing_edges(Workspace& ws, const MergeFrontier& f, VertexId a, VertexId b) {
  auto& mesh = ws.mesh();
  const Point pa = mesh.position(a);
  const Point pb = mesh.position(b);
  std::unordered_set<EdgeId> doomed;
  for (const Component* part : {f.left_part, f.right_part}) {
    for (VertexId v : part->members) {
      for (const Incidence& inc : mesh.ring(v)) {
        const Edge& e = mesh.edge(inc.edge);
        const Point& p = mesh.position(e.endpoints[0]);
        const Point& q = mesh.position(e.endpoints[1]);
        if (segments_intersect(pa, pb, p, q) && !(e.endpoints[0] == a && e.endpoints[1] == b) &&
            !(e.endpoints[0] == b && e.endpoints[1] == a)) {
          doomed.insert(inc.edge);
        }
      }
    }
  }
  for (EdgeId e : doomed) mesh.remove_edge(e);
}

Component merge_range(Workspace& ws, std::vector<Component>& parts, std::size_t lo, std::size_t hi,
                      const DqaOptions& options) {
  const std::size_t k = hi - lo;
  if (k == 1) return std::move(parts[lo]);
  const std::size_t mid = lo + k / 2;
  Component left = merge_range(ws, parts, lo, mid, options);
  Component right = merge_range(ws, parts, mid, hi, options);
  return merge(ws, std::move(left), std::move(right), options);
}

}  // namespace

void Workspace::label(VertexId v, std::uint32_t tag) {
  if (owner_.size() <= v.value()) owner_.resize(mesh_.vertex_capacity() + 1, 0);
  owner_[v.value()] = tag;
}

Component Workspace::make_component(std::vector<VertexId> members) {
  if (members.empty()) throw InvalidInput("component must have a vertex");
  Component part;
  part.label = next_label_++;
  part.members = std::move(members);
  auto lex = [&](VertexId a, VertexId b) { return lex_less(mesh_.position(a), mesh_.position(b)); };
  part.leftmost = *std::min_element(part.members.begin(), part.members.end(), lex);
  part.rightmost = *std::max_element(part.members.begin(), part.members.end(), lex);
  for (VertexId v : part.members) label(v, part.label);
  return part;
}

bool Workspace::owns(const Component& part, VertexId v) const {
  return v.value() < owner_.size() && owner_[v.value()] == part.label;
}

void Workspace::absorb(Component& into, Component&& from) {
  for (VertexId v : from.members) label(v, into.label);
  if (lex_less(mesh_.position(from.leftmost), mesh_.position(into.leftmost))) into.leftmost = from.leftmost;
  if (lex_less(mesh_.position(into.rightmost), mesh_.position(from.rightmost))) into.rightmost = from.rightmost;
  into.members.insert(into.members.end(), from.members.begin(), from.members.end());
  from.members.clear();
}

std::vector<Point> sort_points(std::span<const Point> points) {
  std::vector<Point> sorted(points.begin(), points.end());
  for (const Point& p : sorted) require_finite(p);
  std::sort(sorted.begin(), sorted.end(), lex_less);
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) throw DuplicatePoint("duplicate input point");
  return sorted;
}

std::vector<Component> split(Workspace& ws, std::span<const Point> sorted) {
  auto& mesh = ws.mesh();
  std::vector<Component> parts;
  for (std::size_t i = 0; i < sorted.size(); i += 3) {
    const std::size_t len = std::min<std::size_t>(3, sorted.size() - i);
    std::vector<VertexId> ids;
    for (std::size_t j = 0; j < len; ++j) ids.push_back(mesh.add_vertex(sorted[i + j]));
    if (len >= 2) mesh.connect(ids[0], ids[1]);
    if (len == 3) {
      mesh.connect(ids[1], ids[2]);
      if (orient2d(sorted[i], sorted[i + 1], sorted[i + 2]) != Orientation::Collinear) mesh.connect(ids[2], ids[0]);
    }
    parts.push_back(ws.make_component(std::move(ids)));
  }
  return parts;
}

MergeFrontier find_base_edge(Workspace& ws, Component& left, Component& right) {
  auto& mesh = ws.mesh();
  VertexId l = left.rightmost;
  VertexId r = right.leftmost;
  std::optional<VertexId> l_prev;
  std::optional<VertexId> r_prev;

  auto below = [&](VertexId c) {
    return orient2d(mesh.position(l), mesh.position(r), mesh.position(c)) == Orientation::Clockwise;
  };
  // Walk the left hull clockwise and the right hull counterclockwise until no
  // hull neighbor lies strictly below the line l->r.
  for (;;) {
    if (!mesh.ring(l).empty()) {
      const VertexId next = l_prev ? mesh.cw_neighbor(l, *l_prev) : first_cw_from_east(mesh, l);
      if (below(next)) {
        l_prev = l;
        l = next;
        continue;
      }
    }
    if (!mesh.ring(r).empty()) {
      const VertexId next = r_prev ? mesh.ccw_neighbor(r, *r_prev) : first_ccw_from_west(mesh, r);
      if (below(next)) {
        r_prev = r;
        r = next;
        continue;
      }
    }
    break;
  }

  MergeFrontier f;
  f.left = l;
  f.right = r;
  f.left_top = highest(mesh, left);
  f.right_top = highest(mesh, right);
  f.base = mesh.connect(l, r);
  f.left_part = &left;
  f.right_part = &right;
  return f;
}

std::optional<Candidate> find_candidate_w(Workspace& ws, MergeFrontier& f, CandidateSearch search) {
  if (search == CandidateSearch::Exhaustive) return exhaustive_candidate(ws, f);

  auto& mesh = ws.mesh();
  const VertexId l = f.left;
  const VertexId r = f.right;
  const Point& pl = mesh.position(l);
  const Point& pr = mesh.position(r);

  std::optional<VertexId> left_cand;
  if (mesh.degree(l) >= 2) {
    VertexId c = mesh.ccw_neighbor(l, r);
    if (c != r && ws.owns(*f.left_part, c) && above(mesh, f, c)) {
      for (;;) {
        const VertexId next = mesh.ccw_neighbor(l, c);
        if (next == r || next == c || !ws.owns(*f.left_part, next)) break;
        if (incircle_ccw(pl, pr, mesh.position(c), mesh.position(next)) != CirclePosition::Inside) break;
        mesh.remove_edge(*mesh.find_edge(l, c));
        c = next;
      }
      left_cand = c;
    }
  }

  std::optional<VertexId> right_cand;
  if (mesh.degree(r) >= 2) {
    VertexId c = mesh.cw_neighbor(r, l);
    if (c != l && ws.owns(*f.right_part, c) && above(mesh, f, c)) {
      for (;;) {
        const VertexId next = mesh.cw_neighbor(r, c);
        if (next == l || next == c || !ws.owns(*f.right_part, next)) break;
        if (incircle_ccw(pl, pr, mesh.position(c), mesh.position(next)) != CirclePosition::Inside) break;
        mesh.remove_edge(*mesh.find_edge(r, c));
        c = next;
      }
      right_cand = c;
    }
  }

  if (!left_cand && !right_cand) return std::nullopt;
  if (!left_cand) return Candidate{*right_cand, Side::Right};
  if (!right_cand) return Candidate{*left_cand, Side::Left};
  // Cocircular ties resolve to the left candidate.
  if (incircle_ccw(pl, pr, mesh.position(*left_cand), mesh.position(*right_cand)) == CirclePosition::Inside) {
    return Candidate{*right_cand, Side::Right};
  }
  return Candidate{*left_cand, Side::Left};
}

void advance(Workspace& ws, MergeFrontier& f, const Candidate& cand, CandidateSearch search) {
  auto& mesh = ws.mesh();
  const VertexId a = cand.side == Side::Left ? cand.vertex : f.left;
  const VertexId b = cand.side == Side::Left ? f.right : cand.vertex;
  if (search == CandidateSearch::Exhaustive) remove_crossing_edges(ws, f, a, b);
  const auto existing = mesh.find_edge(a, b);
  f.base = existing ? *existing : mesh.connect(a, b);
  if (cand.side == Side::Left) {
    f.left = cand.vertex;
  } else {
    f.right = cand.vertex;
  }
}

Component merge(Workspace& ws, Component left, Component right, const DqaOptions& options) {
  MergeFrontier f = find_base_edge(ws, left, right);
  if (options.on_iteration) options.on_iteration(ws.mesh());
  while (const auto cand = find_candidate_w(ws, f, options.search)) {
    advance(ws, f, *cand, options.search);
    if (options.on_iteration) options.on_iteration(ws.mesh());
  }
  ws.absorb(left, std::move(right));
  return left;
}

Pseudotriangulation dqa(std::span<const Point> points, const DqaOptions& options) {
  if (points.empty()) throw InvalidInput("dqa: empty point set");
  const std::vector<Point> sorted = sort_points(points);
  Workspace ws;
  std::vector<Component> parts = split(ws, sorted);
  merge_range(ws, parts, 0, parts.size(), options);
  return ws.mesh().compacted();
}

}  // namespace evendt
