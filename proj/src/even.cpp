#include "evendt/even.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <deque>
#include <limits>
#include <string>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

namespace evendt {
namespace {

// Fractions of the way from an edge or corner towards the inside of a triangle.
constexpr std::array<double, 3> kOffsets = {0.1, 1e-2, 1e-4};
// Grid divisions per triangle edge beyond which refinement stops.
constexpr std::size_t kMaxDivisions = 32;
// How often one chain may hand the oddness to the same vertex.
constexpr std::size_t kMaxVisits = 3;
// Relays tried per step of a chain, and in total per odd vertex.
constexpr std::size_t kBranching = 3;
constexpr std::size_t kSearchBudget = 256;
// Height-to-base ratio below which a relay is only taken when nothing better exists.
constexpr double kFairQuality = 0.05;
// Chain length allowed per vertex of the merge, and a floor for small merges.
constexpr std::size_t kHopsPerVertex = 3;
constexpr std::size_t kMinHops = 64;
// Sweeps of the last merge allowed to end without fixing anything.
constexpr std::size_t kIdleSweeps = 4;

std::array<Point, 3> positions(const Pseudotriangulation& mesh, const std::array<VertexId, 3>& tri) {
  return {mesh.position(tri[0]), mesh.position(tri[1]), mesh.position(tri[2])};
}

std::array<Point, 3> positions(const Pseudotriangulation& mesh, TriangleId t) {
  return positions(mesh, mesh.triangle(t).corners);
}

bool strictly_inside_triangle(const std::array<Point, 3>& t, const Point& p) {
  return orient2d(t[0], t[1], p) == Orientation::CounterClockwise &&
         orient2d(t[1], t[2], p) == Orientation::CounterClockwise &&
         orient2d(t[2], t[0], p) == Orientation::CounterClockwise;
}

bool has(const std::vector<TriangleId>& ts, TriangleId t) { return std::find(ts.begin(), ts.end(), t) != ts.end(); }

bool has_corner(const std::array<VertexId, 3>& c, VertexId v) { return std::find(c.begin(), c.end(), v) != c.end(); }

// Corners counterclockwise, starting at v.
std::array<VertexId, 3> from(const std::array<VertexId, 3>& c, VertexId v) {
  const std::size_t i = static_cast<std::size_t>(std::find(c.begin(), c.end(), v) - c.begin());
  return {c[i % 3], c[(i + 1) % 3], c[(i + 2) % 3]};
}

// Triangles of one search with their corners, positions and neighbors looked up once.
class LocalMesh {
 public:
  struct Entry {
    std::array<VertexId, 3> corners;
    std::array<Point, 3> points;
    std::array<std::optional<TriangleId>, 3> across;  // across edge k -> k + 1
  };

  explicit LocalMesh(const Pseudotriangulation& mesh) : mesh_(mesh), slot_(mesh.triangle_capacity(), kNone) {}

  const Entry& at(TriangleId t) {
    std::uint32_t& slot = slot_[t.value()];
    if (slot == kNone) {
      slot = static_cast<std::uint32_t>(entries_.size());
      Entry& e = entries_.emplace_back();
      e.corners = mesh_.triangle(t).corners;
      for (std::size_t k = 0; k < 3; ++k) {
        e.points[k] = mesh_.position(e.corners[k]);
        e.across[k] = mesh_.triangle_left_of(e.corners[(k + 1) % 3], e.corners[k]);
      }
    }
    return entries_[slot];
  }

  const Pseudotriangulation& mesh() const { return mesh_; }

 private:
  static constexpr std::uint32_t kNone = ~std::uint32_t{0};
  const Pseudotriangulation& mesh_;
  std::vector<std::uint32_t> slot_;
  std::deque<Entry> entries_;
};

std::optional<VertexId> hull_predecessor(const Pseudotriangulation& mesh, VertexId a) {
  for (const Incidence& inc : mesh.ring(a)) {
    if (mesh.triangle_left_of(inc.neighbor, a) && !mesh.triangle_left_of(a, inc.neighbor)) return inc.neighbor;
  }
  return std::nullopt;
}

std::optional<VertexId> hull_successor(const Pseudotriangulation& mesh, VertexId b) {
  for (const Incidence& inc : mesh.ring(b)) {
    if (mesh.triangle_left_of(b, inc.neighbor) && !mesh.triangle_left_of(inc.neighbor, b)) return inc.neighbor;
  }
  return std::nullopt;
}

// With `even_only`, a cavity giving u odd degree off the hull is dropped early.
std::optional<Cavity> cavity_in(LocalMesh& local, TriangleId start, const Point& u, bool even_only = false) {
  {
    const auto& p = local.at(start).points;
    if (incircle_ccw(p[0], p[1], p[2], u) != CirclePosition::Inside) return std::nullopt;
  }
  // Scratch reused across calls; most candidates are rejected before a Cavity is built.
  thread_local std::vector<TriangleId> tris;
  thread_local std::vector<std::tuple<VertexId, VertexId, std::optional<TriangleId>>> edges;
  tris.clear();
  edges.clear();
  tris.push_back(start);
  for (std::size_t i = 0; i < tris.size(); ++i) {
    const auto across = local.at(tris[i]).across;
    for (const auto& n : across) {
      if (!n || has(tris, *n)) continue;
      const auto& p = local.at(*n).points;
      if (incircle_ccw(p[0], p[1], p[2], u) == CirclePosition::Inside) tris.push_back(*n);
    }
  }
  std::optional<std::array<VertexId, 2>> opened;
  for (TriangleId t : tris) {
    const auto& e = local.at(t);
    for (std::size_t k = 0; k < 3; ++k) {
      if (e.across[k] && has(tris, *e.across[k])) continue;
      const Orientation o = orient2d(e.points[k], e.points[(k + 1) % 3], u);
      if (o != Orientation::CounterClockwise) {
        // Only a hull edge of the start triangle may face away from u.
        if (o != Orientation::Clockwise || t != start || e.across[k] || opened) return std::nullopt;
        opened = std::array<VertexId, 2>{e.corners[k], e.corners[(k + 1) % 3]};
      }
      edges.emplace_back(e.corners[k], e.corners[(k + 1) % 3], e.across[k]);
    }
  }
  if (even_only && !opened && edges.size() % 2 != 0) return std::nullopt;
  std::optional<std::array<VertexId, 2>> flanks;
  if (opened) {
    const Pseudotriangulation& mesh = local.mesh();
    const auto p = hull_predecessor(mesh, (*opened)[0]);
    const auto q = hull_successor(mesh, (*opened)[1]);
    if (!p || !q || *p == (*opened)[1]) return std::nullopt;
    if (orient2d(mesh.position(*p), mesh.position((*opened)[0]), u) != Orientation::CounterClockwise) return std::nullopt;
    if (orient2d(mesh.position((*opened)[1]), mesh.position(*q), u) != Orientation::CounterClockwise) return std::nullopt;
    flanks = std::array<VertexId, 2>{*p, *q};
  }
  auto starting_at = [&](VertexId v) {
    return std::find_if(edges.begin(), edges.end(), [&](const auto& x) { return std::get<0>(x) == v; });
  };
  for (auto it = edges.begin(); it != edges.end(); ++it) {
    if (std::find_if(it + 1, edges.end(), [&](const auto& x) { return std::get<0>(x) == std::get<0>(*it); }) !=
        edges.end()) {
      return std::nullopt;
    }
  }
  Cavity cav;
  cav.triangles = tris;
  cav.flanks = flanks;
  cav.boundary.reserve(edges.size());
  cav.fence.reserve(edges.size());
  VertexId v = std::get<0>(edges.front());
  do {
    const auto& [a, b, n] = *starting_at(v);
    if (opened && a == (*opened)[0] && b == (*opened)[1]) cav.opened = cav.boundary.size();
    cav.boundary.push_back({a, b});
    cav.fence.push_back(n);
    v = b;
  } while (v != cav.boundary.front()[0] && cav.boundary.size() <= edges.size());
  if (cav.boundary.size() != edges.size()) return std::nullopt;
  return cav;
}

std::vector<VertexId> flips_in(LocalMesh& local, const Cavity& cav) {
  std::vector<std::pair<VertexId, std::size_t>> lost;
  auto lose = [&](VertexId v) {
    auto it = std::find_if(lost.begin(), lost.end(), [&](const auto& x) { return x.first == v; });
    if (it == lost.end()) lost.emplace_back(v, 1);
    else ++it->second;
  };
  for (TriangleId t : cav.triangles) {
    const auto& e = local.at(t);
    for (std::size_t k = 0; k < 3; ++k) {
      if (!e.across[k] || !has(cav.triangles, *e.across[k])) continue;
      // Each cavity edge is seen from both of its triangles; count it from one.
      if (e.corners[(k + 1) % 3] < e.corners[k]) continue;
      lose(e.corners[k]);
      lose(e.corners[(k + 1) % 3]);
    }
  }
  if (cav.opened) {
    lose(cav.boundary[*cav.opened][0]);
    lose(cav.boundary[*cav.opened][1]);
  }
  // Every boundary vertex gains the edge to u.
  std::vector<VertexId> flips;
  for (const auto& [a, b] : cav.boundary) {
    const auto it = std::find_if(lost.begin(), lost.end(), [&](const auto& x) { return x.first == a; });
    if (it == lost.end() || it->second % 2 == 0) flips.push_back(a);
  }
  return flips;
}

Point lerp(const Point& p, const Point& q, double t) { return {p.x + t * (q.x - p.x), p.y + t * (q.y - p.y)}; }

double quality(const Pseudotriangulation& mesh, const Cavity& cavity, const Point& u) {
  double q = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < cavity.boundary.size(); ++i) {
    if (i == cavity.opened) continue;
    const auto& [a, b] = cavity.boundary[i];
    const Point& p = mesh.position(a);
    const Point& r = mesh.position(b);
    const double dx = r.x - p.x, dy = r.y - p.y;
    q = std::min(q, (dx * (u.y - p.y) - dy * (u.x - p.x)) / (dx * dx + dy * dy));
  }
  return q;
}

// C_LR for a record: the cavity triangle at the odd vertex, the passed one if it is there.
TriangleId outer_triangle(const Pseudotriangulation& mesh, const SteinerRegion& region,
                          const std::vector<TriangleId>& cavity) {
  if (region.passed_with && has(cavity, *region.passed_with)) return *region.passed_with;
  for (TriangleId t : cavity) {
    if (has_corner(mesh.triangle(t).corners, region.odd)) return t;
  }
  throw InternalError("Steiner cavity misses the odd vertex");
}

void set_outer(SteinerInsertion& rec, const Pseudotriangulation& mesh, const SteinerRegion& region,
               TriangleId outer) {
  const auto c = positions(mesh, from(mesh.triangle(outer).corners, region.odd));
  rec.trigger = region.trigger;
  if (region.trigger == Side::Left) {
    rec.v_left = c[0], rec.v_right = c[1], rec.w = c[2];
  } else {
    rec.v_right = c[0], rec.w = c[1], rec.v_left = c[2];
  }
}

SteinerInsertion failure_record(const Pseudotriangulation& mesh, const SteinerRegion& region) {
  SteinerInsertion rec;
  rec.u = mesh.position(region.odd);
  for (TriangleId t : region.search) {
    if (has_corner(mesh.triangle(t).corners, region.odd)) {
      set_outer(rec, mesh, region, region.passed_with ? *region.passed_with : t);
      break;
    }
  }
  return rec;
}

// Feeds every valid candidate to `visit`, stopping after the triangle in
// which `visit` first returned true.
void for_each_candidate(const Pseudotriangulation& mesh, const SteinerRegion& region, std::size_t density,
                        const std::function<bool(Placement&&)>& visit) {
  const std::size_t s = std::clamp<std::size_t>(density / 8, 3, kMaxDivisions);
  LocalMesh local(mesh);
  bool stop = false;
  for (TriangleId t : region.search) {
    if (stop) return;
    const auto p = local.at(t).points;
    auto offer = [&](const Point& u) {
      if (!std::isfinite(u.x) || !std::isfinite(u.y)) return;
      const bool inside = strictly_inside_triangle(p, u);
      if (!inside && !region.beyond_hull) return;
      auto cav = cavity_in(local, t, u, true);
      if (!cav || (!inside && !cav->opened)) return;
      // A vertex on the hull may keep odd degree.
      if (!cav->opened && cav->boundary.size() % 2 != 0) return;
      std::vector<VertexId> flips = flips_in(local, *cav);
      if (std::find(flips.begin(), flips.end(), region.odd) == flips.end()) return;
      const double q = quality(mesh, *cav, u);
      if (visit({u, std::move(*cav), std::move(flips), q})) stop = true;
    };
    for (std::size_t i = 1; i < s; ++i) {
      for (std::size_t j = 1; i + j < s; ++j) {
        const double a = double(i) / double(s), b = double(j) / double(s);
        offer({a * p[0].x + b * p[1].x + (1 - a - b) * p[2].x, a * p[0].y + b * p[1].y + (1 - a - b) * p[2].y});
      }
    }
    for (std::size_t k = 0; k < 3; ++k) {
      const Point& a = p[k];
      const Point& b = p[(k + 1) % 3];
      const Point& c = p[(k + 2) % 3];
      for (std::size_t i = 1; i < s; ++i) {
        const double f = double(i) / double(s);
        const Point on_edge = lerp(a, b, f);
        const Point across = lerp(b, c, f);
        for (double d : kOffsets) {
          offer(lerp(on_edge, c, d));
          offer(lerp(a, across, d));
        }
        if (region.beyond_hull && !local.at(t).across[k]) {
          // Just outside the hull edge a-b, within the circle of the triangle.
          for (double d : kOffsets) offer({on_edge.x + d * (b.y - a.y), on_edge.y - d * (b.x - a.x)});
        }
      }
    }
  }
}

struct Pass {
  VertexId vertex;
  Side side;
  std::array<VertexId, 3> triangle;  // (v_left, v_right, w) the base moved past `vertex` with
};

class Engine {
 public:
  Engine(Workspace& ws, const EvenConfig& config, EvenResult& result, std::vector<Point> input)
      : ws_(ws), config_(config), result_(result), input_(std::move(input)) {
    cap_ = config.steiner_cap ? *config.steiner_cap : default_steiner_cap(result.stats.n_input);
  }

  Component merge(Component left, Component right, bool top) {
    top_ = top;
    MergeFrontier f = find_base_edge(ws_, left, right);
    if (top) result_.top_base = std::array<VertexId, 2>{f.left, f.right};
    notify();
    std::vector<Pass> passes;
    while (const auto cand = find_candidate_w(ws_, f, config_.search)) {
      const VertexId passed = cand->side == Side::Left ? f.left : f.right;
      passes.push_back({passed, cand->side, {f.left, f.right, cand->vertex}});
      advance(ws_, f, *cand, config_.search);
      ++result_.stats.loop_iterations;
      notify();
    }
    ws_.absorb(left, std::move(right));
    if (config_.mode != Mode::Plain) repair(left, passes, top);
    return left;
  }

 private:
  bool wants_insertion(VertexId v) const {
    const auto& mesh = ws_.mesh();
    if (mesh.is_even(v)) return false;
    if (config_.mode == Mode::Relaxed && (mesh.vertex(v).origin != Origin::Input || used_.contains(v))) return false;
    if (config_.parity_scope == ParityScope::InteriorOnly && !mesh.is_interior(v)) return false;
    return true;
  }

  // Hop count from every vertex of `part` to the nearest vertex `done` accepts.
  std::unordered_map<VertexId, std::size_t> distances(const Component& part,
                                                      const std::function<bool(VertexId)>& done) const {
    const auto& mesh = ws_.mesh();
    std::unordered_map<VertexId, std::size_t> dist;
    std::vector<VertexId> frontier;
    for (VertexId v : part.members) {
      if (done(v)) dist.emplace(v, 0), frontier.push_back(v);
    }
    for (std::size_t d = 1; !frontier.empty(); ++d) {
      std::vector<VertexId> next;
      for (VertexId v : frontier) {
        for (const Incidence& inc : mesh.ring(v)) {
          if (dist.emplace(inc.neighbor, d).second) next.push_back(inc.neighbor);
        }
      }
      frontier = std::move(next);
    }
    return dist;
  }

  void insert(Component& part, const SteinerRegion& region, const Placement& placement) {
    auto& mesh = ws_.mesh();
    if (result_.stats.m_steiner >= cap_) {
      result_.stats.cap_triggered = true;
      throw SteinerCapExceeded(result_.stats, input_);
    }
    if (placement.cavity.opened) ++result_.stats.hull_insertions;
    result_.insertions.push_back(record_insertion(mesh, region, placement));
    const VertexId u = insert_steiner(mesh, placement);
    ws_.absorb(part, ws_.make_component({u}));
    ++result_.stats.m_steiner;
    notify();
  }

  enum class RelayOrder { FewestVisits, Nearest };
  enum class Outcome { Fixed, Split, Stuck };

  struct Snapshot {
    Workspace ws;
    Component part;
    RunStats stats;
    std::size_t logged;
  };

  Snapshot save(const Component& part) const { return {ws_, part, result_.stats, result_.insertions.size()}; }

  void restore(Component& part, const Snapshot& snap) {
    ws_ = snap.ws;
    part = snap.part;
    result_.stats = snap.stats;
    result_.insertions.resize(snap.logged);
  }

  // Tries each relay order in turn, then allows splits, rolling the mesh
  // back after every dead end.
  bool fix(Component& part, VertexId odd, Side trigger, std::optional<TriangleId> passed_with,
           const std::function<bool(VertexId)>& harmless, std::size_t max_hops) {
    constexpr std::array<std::pair<RelayOrder, bool>, 3> attempts = {
        {{RelayOrder::FewestVisits, false}, {RelayOrder::Nearest, false}, {RelayOrder::FewestVisits, true}}};
    for (const auto& [order, may_split] : attempts) {
      const Snapshot snap = save(part);
      Chain chain{harmless, order, may_split, {{odd, 1}}, kSearchBudget};
      switch (search(part, chain, odd, trigger, passed_with, max_hops)) {
        case Outcome::Fixed:
          return true;
        case Outcome::Split:
          return false;
        case Outcome::Stuck:
          restore(part, snap);
      }
    }
    return false;
  }

  struct Chain {
    const std::function<bool(VertexId)>& harmless;
    RelayOrder order;
    bool may_split;
    std::unordered_map<VertexId, std::size_t> visits;
    std::size_t budget;  // relays left to try
  };

  struct Moves {
    SteinerRegion region;
    std::optional<Placement> direct;
    std::vector<std::pair<VertexId, Placement>> relays;  // best placement per vertex, best vertex first
    std::optional<Placement> split;
  };

  // Candidates that fix `odd`, hand its oddness to one vertex, or, in the wide
  // region, to two. Sampling stops at the first round that has something.
  Moves explore(const Component& part, Chain& chain, VertexId odd, Side trigger,
                std::optional<TriangleId> passed_with, bool may_relay) const {
    const auto& mesh = ws_.mesh();
    Moves moves;
    std::optional<std::unordered_map<VertexId, std::size_t>> dist;
    auto distance = [&](VertexId y) {
      if (!dist) dist = distances(part, chain.harmless);
      const auto it = dist->find(y);
      return it == dist->end() ? part.members.size() : it->second;
    };
    auto seen = [&](VertexId y) { return chain.visits.contains(y) ? chain.visits.at(y) : std::size_t{0}; };
    // The wider region is only searched when the usual one has nothing.
    for (const bool wide : {false, true}) {
      moves.region = steiner_region(mesh, odd, trigger, passed_with, wide);
      // Only the last merge may grow the hull; below it the hull bounds the next merge.
      moves.region.beyond_hull = top_;
      std::size_t density = config_.arc_samples;
      for (std::size_t round = 0; round <= config_.max_refinements; ++round, density *= 2) {
        std::unordered_map<VertexId, Placement> relay;
        std::optional<std::tuple<std::size_t, std::size_t, double>> split_key;
        for_each_candidate(mesh, moves.region, density, [&](Placement&& c) {
          std::vector<VertexId> blockers;
          for (VertexId y : c.flips) {
            if (y != odd && !chain.harmless(y)) blockers.push_back(y);
          }
          if (blockers.empty()) {
            if (!moves.direct || c.quality > moves.direct->quality) moves.direct = std::move(c);
            // A fair direct fix is good enough; the rest of the region is skipped.
            return moves.direct->quality >= kFairQuality;
          } else if (blockers.size() == 1 && may_relay && seen(blockers[0]) < kMaxVisits) {
            auto [it, fresh] = relay.try_emplace(blockers[0], c);
            if (!fresh && c.quality > it->second.quality) it->second = std::move(c);
          } else if (blockers.size() == 2 && wide && chain.may_split) {
            const std::tuple key{seen(blockers[0]) + seen(blockers[1]),
                                 distance(blockers[0]) + distance(blockers[1]), -c.quality};
            if (!split_key || key < *split_key) split_key = key, moves.split = std::move(c);
          }
          return false;
        });
        if (moves.direct) return moves;
        for (auto& [y, c] : relay) moves.relays.emplace_back(y, std::move(c));
        auto key = [&](const std::pair<VertexId, Placement>& r) {
          const bool poor = r.second.quality < kFairQuality;
          return chain.order == RelayOrder::FewestVisits
                     ? std::tuple{poor, seen(r.first), distance(r.first), -r.second.quality, r.first}
                     : std::tuple{poor, distance(r.first), seen(r.first), -r.second.quality, r.first};
        };
        std::sort(moves.relays.begin(), moves.relays.end(),
                  [&](const auto& x, const auto& y) { return key(x) < key(y); });
        if (!moves.relays.empty()) return moves;
        if (density / 8 >= kMaxDivisions) break;
      }
    }
    return moves;
  }

  // Depth-first search over relay chains. Each level tries its best few
  // relays and rolls back the ones that dead-end; when none is left, a split
  // (two nearby vertices made odd) ends the chain if allowed.
  Outcome search(Component& part, Chain& chain, VertexId odd, Side trigger, std::optional<TriangleId> passed_with,
                 std::size_t hops) {
    Moves moves = explore(part, chain, odd, trigger, passed_with, hops > 1);
    if (moves.direct) {
      insert(part, moves.region, *moves.direct);
      return Outcome::Fixed;
    }
    const std::size_t tries = std::min(moves.relays.size(), kBranching);
    for (std::size_t i = 0; i < tries && chain.budget > 0; ++i) {
      --chain.budget;
      const auto& [y, c] = moves.relays[i];
      // With a single option left a dead end is rolled back by the caller.
      std::optional<Snapshot> snap;
      if (i + 1 < tries) snap = save(part);
      insert(part, moves.region, c);
      ++result_.stats.relays;
      ++chain.visits[y];
      const Outcome out = search(part, chain, y, Side::Left, std::nullopt, hops - 1);
      if (out != Outcome::Stuck) return out;
      --chain.visits[y];
      if (!snap) return Outcome::Stuck;
      restore(part, *snap);
    }
    if (moves.split) {
      insert(part, moves.region, *moves.split);
      ++result_.stats.splits;
      return Outcome::Split;
    }
    last_failure_ = failure_record(ws_.mesh(), moves.region);
    return Outcome::Stuck;
  }

  // Endpoints are revisited in the order the base passed them. A flipped
  // vertex is harmless if it is revisited later, lies on the hull, or was odd
  // itself. What a merge leaves odd is retried by the merges above it, and the
  // last merge sweeps every odd interior vertex towards the hull.
  void repair(Component& part, const std::vector<Pass>& passes, bool top) {
    const auto& mesh = ws_.mesh();
    std::unordered_map<VertexId, std::size_t> order;
    for (std::size_t i = 0; i < passes.size(); ++i) order.emplace(passes[i].vertex, i);
    std::unordered_set<VertexId> fixed;
    const std::size_t max_hops = config_.mode == Mode::Relaxed ? 1 : kHopsPerVertex * part.members.size() + kMinHops;

    for (std::size_t i = 0; i < passes.size(); ++i) {
      const Pass& p = passes[i];
      if (!wants_insertion(p.vertex)) continue;
      if (!fixed.insert(p.vertex).second) ++result_.stats.chain_retriggers;
      if (!mesh.is_interior(p.vertex)) ++result_.stats.border_triggers;
      used_.insert(p.vertex);
      const VertexId v = p.vertex;
      auto harmless = [&](VertexId y) {
        const auto it = order.find(y);
        return (it != order.end() && it->second > i) || !mesh.is_interior(y) || (y != v && !mesh.is_even(y));
      };
      std::optional<TriangleId> passed_with;
      if (const auto t = mesh.triangle_left_of(p.triangle[0], p.triangle[1])) {
        if (has_corner(mesh.triangle(*t).corners, p.triangle[2])) passed_with = t;
      }
      fix(part, v, p.side, passed_with, harmless, max_hops);
    }
    if (!top || config_.mode == Mode::Relaxed) return;

    // A chain that dead-ends still reshapes the mesh, so a later sweep may succeed.
    for (std::size_t idle = 0; idle < kIdleSweeps;) {
      bool progress = false;
      std::vector<VertexId> odd;
      for (VertexId v : part.members) {
        if (mesh.is_interior(v) && !mesh.is_even(v)) odd.push_back(v);
      }
      for (VertexId v : odd) {
        if (mesh.is_even(v)) continue;
        auto harmless = [&](VertexId y) { return !mesh.is_interior(y) || (y != v && !mesh.is_even(y)); };
        if (fix(part, v, Side::Left, std::nullopt, harmless, max_hops)) progress = true;
      }
      if (odd.empty()) break;
      idle = progress ? 0 : idle + 1;
    }
    for (VertexId v : part.members) {
      if (mesh.is_interior(v) && !mesh.is_even(v)) {
        throw PlacementFailure(last_failure_ ? *last_failure_ : failure_record(mesh, steiner_region(mesh, v)),
                               input_);
      }
    }
  }

  void notify() {
    if (config_.on_iteration) config_.on_iteration(ws_.mesh());
  }

  Workspace& ws_;
  const EvenConfig& config_;
  EvenResult& result_;
  std::vector<Point> input_;
  std::size_t cap_ = 0;
  std::unordered_set<VertexId> used_;
  std::optional<SteinerInsertion> last_failure_;
  bool top_ = false;
};

Component merge_range(Engine& engine, std::vector<Component>& parts, std::size_t lo, std::size_t hi, bool top) {
  const std::size_t k = hi - lo;
  if (k == 1) return std::move(parts[lo]);
  const std::size_t mid = lo + k / 2;
  Component left = merge_range(engine, parts, lo, mid, false);
  Component right = merge_range(engine, parts, mid, hi, false);
  return engine.merge(std::move(left), std::move(right), top);
}

}  // namespace

std::size_t default_steiner_cap(std::size_t n) { return 10 * n + 100; }

SteinerCapExceeded::SteinerCapExceeded(RunStats stats, std::vector<Point> input)
    : Error("steiner cap of " + std::to_string(stats.m_steiner) + " insertions exhausted"),
      stats_(stats),
      input_(std::move(input)) {}

PlacementFailure::PlacementFailure(SteinerInsertion region, std::vector<Point> input)
    : Error("no valid Steiner position found"), region_(std::move(region)), input_(std::move(input)) {}

bool parity_trigger(const Pseudotriangulation& mesh, const MergeFrontier& f, const Candidate& cand,
                    const EvenConfig& config) {
  if (config.mode == Mode::Plain) return false;
  const VertexId odd = cand.side == Side::Left ? f.left : f.right;
  if (mesh.is_even(odd)) return false;
  if (config.mode == Mode::Relaxed && mesh.vertex(odd).origin != Origin::Input) return false;
  if (config.parity_scope == ParityScope::InteriorOnly) {
    // The advance fills the angle at `odd` that follows `toward` counterclockwise.
    const VertexId toward = cand.side == Side::Left ? f.right : cand.vertex;
    for (const Incidence& inc : mesh.ring(odd)) {
      if (inc.neighbor != toward && !mesh.triangle_left_of(odd, inc.neighbor)) return false;
    }
  }
  return true;
}

SteinerRegion steiner_region(const Pseudotriangulation& mesh, VertexId odd, Side trigger,
                             std::optional<TriangleId> passed_with, bool wide) {
  SteinerRegion r;
  r.odd = odd;
  r.trigger = trigger;
  r.passed_with = passed_with;
  if (passed_with) r.search.push_back(*passed_with);
  for (const Incidence& inc : mesh.ring(odd)) {
    const auto t = mesh.triangle_left_of(odd, inc.neighbor);
    if (t && !has(r.search, *t)) r.search.push_back(*t);
  }
  const std::size_t around = r.search.size();
  for (std::size_t i = 0; i < around; ++i) {
    const auto c = from(mesh.triangle(r.search[i]).corners, odd);
    const auto t = mesh.triangle_left_of(c[2], c[1]);
    if (t && !has(r.search, *t)) r.search.push_back(*t);
  }
  if (wide) {
    for (const Incidence& inc : mesh.ring(odd)) {
      for (const Incidence& far : mesh.ring(inc.neighbor)) {
        const auto t = mesh.triangle_left_of(inc.neighbor, far.neighbor);
        if (t && !has(r.search, *t)) r.search.push_back(*t);
      }
    }
  }
  return r;
}

std::optional<Cavity> steiner_cavity(const Pseudotriangulation& mesh, TriangleId start, const Point& u) {
  LocalMesh local(mesh);
  return cavity_in(local, start, u);
}

std::vector<VertexId> parity_flips(const Pseudotriangulation& mesh, const Cavity& cavity) {
  LocalMesh local(mesh);
  return flips_in(local, cavity);
}

std::vector<Placement> steiner_candidates(const Pseudotriangulation& mesh, const SteinerRegion& region,
                                          std::size_t density) {
  std::vector<Placement> out;
  for_each_candidate(mesh, region, density, [&](Placement&& c) {
    out.push_back(std::move(c));
    return false;
  });
  return out;
}

Placement place_steiner(const Pseudotriangulation& mesh, const SteinerRegion& region, const EvenConfig& config,
                        const std::function<bool(const Placement&)>& accept) {
  std::size_t density = std::max<std::size_t>(config.arc_samples, 1);
  for (std::size_t round = 0; round <= config.max_refinements; ++round, density *= 2) {
    std::optional<Placement> best;
    for (Placement& c : steiner_candidates(mesh, region, density)) {
      if ((!accept || accept(c)) && (!best || c.quality > best->quality)) best = std::move(c);
    }
    if (best) return *best;
    if (density / 8 >= kMaxDivisions) break;
  }
  throw PlacementFailure(failure_record(mesh, region), {});
}

SteinerInsertion record_insertion(const Pseudotriangulation& mesh, const SteinerRegion& region,
                                  const Placement& placement) {
  SteinerInsertion rec;
  rec.u = placement.u;
  const TriangleId outer = outer_triangle(mesh, region, placement.cavity.triangles);
  set_outer(rec, mesh, region, outer);
  rec.cavity.push_back(positions(mesh, outer));
  for (TriangleId t : placement.cavity.triangles) {
    if (t != outer) rec.cavity.push_back(positions(mesh, t));
  }
  for (const auto& n : placement.cavity.fence) {
    if (n) rec.fence.push_back(positions(mesh, *n));
  }
  if (placement.cavity.opened) {
    const auto& [a, b] = placement.cavity.boundary[*placement.cavity.opened];
    const auto& [p, q] = *placement.cavity.flanks;
    rec.opened = std::array<Point, 4>{mesh.position(p), mesh.position(a), mesh.position(b), mesh.position(q)};
  }
  return rec;
}

bool replay_insertion(const SteinerInsertion& ins) {
  const Point& u = ins.u;
  if (!std::isfinite(u.x) || !std::isfinite(u.y)) return false;
  if (incircle(ins.v_left, ins.v_right, ins.w, u) != CirclePosition::Inside) return false;
  for (const auto& t : ins.cavity) {
    if (incircle(t[0], t[1], t[2], u) != CirclePosition::Inside) return false;
  }
  for (const auto& t : ins.fence) {
    if (incircle(t[0], t[1], t[2], u) == CirclePosition::Inside) return false;
  }
  if (ins.opened) {
    const auto& [p, a, b, q] = *ins.opened;
    if (orient2d(a, b, u) != Orientation::Clockwise) return false;
    if (orient2d(p, a, u) != Orientation::CounterClockwise) return false;
    if (orient2d(b, q, u) != Orientation::CounterClockwise) return false;
  }
  return true;
}

VertexId insert_steiner(Pseudotriangulation& mesh, const Placement& placement) {
  const Cavity& cav = placement.cavity;
  std::vector<EdgeId> inner;
  for (TriangleId t : cav.triangles) {
    const auto& c = mesh.triangle(t).corners;
    for (std::size_t k = 0; k < 3; ++k) {
      const VertexId a = c[k], b = c[(k + 1) % 3];
      const auto n = mesh.triangle_left_of(b, a);
      if (n && a < b && has(cav.triangles, *n)) inner.push_back(*mesh.find_edge(a, b));
    }
  }
  if (cav.opened) {
    const auto& [a, b] = cav.boundary[*cav.opened];
    inner.push_back(*mesh.find_edge(a, b));
  }
  const std::size_t expected =
      mesh.triangle_count() - cav.triangles.size() + cav.boundary.size() - (cav.opened ? 1 : 0);
  for (EdgeId e : inner) mesh.remove_edge(e);
  const VertexId u = mesh.add_vertex(placement.u, Origin::Steiner);
  for (const auto& [a, b] : cav.boundary) mesh.connect(u, a);
  if (mesh.triangle_count() != expected) {
    throw InternalError("Steiner insertion did not produce the expected triangles");
  }
  return u;
}

Side route_after_insert(const Point& u, const Point& right_leftmost) {
  return u.x < right_leftmost.x ? Side::Left : Side::Right;
}

Component merge_u(Workspace& ws, Component side, VertexId u, EdgeId e, const DqaOptions& options) {
  auto& mesh = ws.mesh();
  const VertexId anchor = mesh.edge(e).other(u);
  if (!ws.owns(side, anchor)) throw InvalidInput("merge_u: edge must join u to the side");
  Component single = ws.make_component({u});
  const bool u_right = lex_less(mesh.position(side.rightmost), mesh.position(u));
  MergeFrontier f;
  f.left = u_right ? anchor : u;
  f.right = u_right ? u : anchor;
  f.left_part = u_right ? &side : &single;
  f.right_part = u_right ? &single : &side;
  f.base = e;
  f.left_top = f.left;
  f.right_top = f.right;
  while (const auto cand = find_candidate_w(ws, f, options.search)) {
    advance(ws, f, *cand, options.search);
    if (options.on_iteration) options.on_iteration(mesh);
  }
  ws.absorb(side, std::move(single));
  return side;
}

EvenResult dqa_even(std::span<const Point> points, const EvenConfig& config) {
  if (points.empty()) throw InvalidInput("dqa_even: empty point set");
  if (config.arc_samples == 0) throw InvalidInput("dqa_even: arc_samples must be positive");
  const std::vector<Point> sorted = sort_points(points);

  EvenResult result;
  result.stats.n_input = sorted.size();
  if (sorted.size() >= 3) {
    result.stats.collinear_input = std::all_of(sorted.begin() + 2, sorted.end(), [&](const Point& p) {
      return orient2d(sorted[0], sorted[1], p) == Orientation::Collinear;
    });
  }

  Workspace ws;
  std::vector<Component> parts = split(ws, sorted);
  Engine engine(ws, config, result, std::vector<Point>(points.begin(), points.end()));
  merge_range(engine, parts, 0, parts.size(), true);
  // No vertex is ever removed, so compaction keeps vertex identifiers.
  result.mesh = ws.mesh().compacted();
  return result;
}

}  // namespace evendt
