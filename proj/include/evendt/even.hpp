#pragma once

// Parity-preserving divide-and-conquer merge.
//
// Each merge records the base endpoints in the order the rising base moves
// past them. Once the strip is closed those endpoints are revisited in that
// order, and an odd one gets a Steiner vertex u. Candidate positions are
// sampled around the odd vertex; each fixes its own Delaunay cavity (the
// triangles whose circumcircle holds u strictly inside), and inserting u
// into that cavity keeps the mesh Delaunay. A cavity vertex changes parity
// when it loses an even number of cavity edges, so a candidate is useful
// when the odd vertex flips, u gets even degree, and every other vertex that
// flips is odd already, sits on the hull, or is revisited later. When no such
// candidate exists the oddness is handed to a single other vertex and fixed
// from there.

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "evendt/dqa.hpp"

namespace evendt {

enum class Mode { Plain, Even, Relaxed };
enum class ParityScope { Literal, InteriorOnly };

struct EvenConfig {
  Mode mode = Mode::Even;
  /// Maximum Steiner insertions per run; unset means 10 * n + 100.
  std::optional<std::size_t> steiner_cap;
  std::size_t arc_samples = 32;
  std::size_t max_refinements = 8;
  ParityScope parity_scope = ParityScope::Literal;
  CandidateSearch search = CandidateSearch::NeighborScan;
  /// Called after every merge iteration and every insertion with the working mesh.
  std::function<void(const Pseudotriangulation&)> on_iteration;
};

std::size_t default_steiner_cap(std::size_t n);

/// Where a Steiner vertex may go when `odd` is to be fixed: inside one of
/// the triangles around it or one of the triangles just beyond them.
struct SteinerRegion {
  VertexId odd;
  Side trigger = Side::Left;
  /// Triangle the base moved past `odd` with; preferred as C_LR.
  std::optional<TriangleId> passed_with;
  std::vector<TriangleId> search;
  /// Also try positions just outside the hull edges of the searched triangles.
  bool beyond_hull = false;
};

/// Delaunay cavity of a point: triangles whose circumcircle holds it strictly
/// inside, grown from the triangle containing it.
struct Cavity {
  std::vector<TriangleId> triangles;
  /// Boundary edges, each with the cavity on its left, in counterclockwise order.
  std::vector<std::array<VertexId, 2>> boundary;
  /// Triangle across each boundary edge, if any.
  std::vector<std::optional<TriangleId>> fence;
  /// When u lies beyond a hull edge: that edge's index in `boundary`, and
  /// the hull vertices before and after it. The edge goes and u joins the hull.
  std::optional<std::size_t> opened;
  std::optional<std::array<VertexId, 2>> flanks;
};

struct Placement {
  Point u;
  Cavity cavity;
  /// Existing vertices whose parity changes, the odd vertex included.
  std::vector<VertexId> flips;
  /// Smallest height-to-base ratio over the new triangles.
  double quality = 0.0;
};

/// Exact record of one insertion, replayable without the mesh. (v_left,
/// v_right, w) is the cavity triangle at the odd vertex, C_LR; every other
/// cavity circle must hold u strictly inside as well, and the fence circles,
/// among them C_L and C_R whenever those flanking triangles stay, must not.
struct SteinerInsertion {
  Point u;
  Point v_left;
  Point v_right;
  Point w;
  Side trigger = Side::Left;
  std::vector<std::array<Point, 3>> cavity;
  std::vector<std::array<Point, 3>> fence;
  /// (p, a, b, q) when u went beyond hull edge a-b: u is right of a->b and
  /// left of p->a and b->q.
  std::optional<std::array<Point, 4>> opened;
};

struct RunStats {
  std::size_t n_input = 0;
  std::size_t m_steiner = 0;
  std::size_t merge_u_calls = 0;
  std::size_t max_merge_u_depth = 0;
  std::size_t loop_iterations = 0;
  bool cap_triggered = false;
  bool collinear_input = false;
  /// Vertices that triggered an insertion twice within one merge (expected 0).
  std::size_t chain_retriggers = 0;
  /// Insertions triggered by a vertex on the hull of its merge (Literal scope waste).
  std::size_t border_triggers = 0;
  /// Insertions that put u on the hull.
  std::size_t hull_insertions = 0;
  /// Insertions that handed the oddness on instead of resolving it.
  std::size_t relays = 0;
  /// Insertions that traded one odd vertex for two, when nothing better was found.
  std::size_t splits = 0;
};

struct EvenResult {
  Pseudotriangulation mesh;
  RunStats stats;
  std::vector<SteinerInsertion> insertions;
  /// Endpoints of the top-level lower common tangent (compacted ids), if any merge ran.
  std::optional<std::array<VertexId, 2>> top_base;
};

class SteinerCapExceeded : public Error {
 public:
  SteinerCapExceeded(RunStats stats, std::vector<Point> input);
  const RunStats& stats() const { return stats_; }
  const std::vector<Point>& input() const { return input_; }

 private:
  RunStats stats_;
  std::vector<Point> input_;
};

class PlacementFailure : public Error {
 public:
  PlacementFailure(SteinerInsertion region, std::vector<Point> input);
  /// The last region that admitted no candidate, with u at the odd vertex.
  const SteinerInsertion& region() const { return region_; }
  const std::vector<Point>& input() const { return input_; }
  void set_input(std::vector<Point> input) { input_ = std::move(input); }

 private:
  SteinerInsertion region_;
  std::vector<Point> input_;
};

/// Whether accepting `candidate` moves the base past an endpoint that needs a
/// Steiner insertion. Evaluated on the mesh before the advance.
bool parity_trigger(const Pseudotriangulation& mesh, const MergeFrontier& frontier, const Candidate& candidate,
                    const EvenConfig& config);

/// The `wide` region also covers every triangle at a neighbor of `odd`.
SteinerRegion steiner_region(const Pseudotriangulation& mesh, VertexId odd, Side trigger = Side::Left,
                             std::optional<TriangleId> passed_with = std::nullopt, bool wide = false);

/// Cavity of `u`, which must lie strictly inside `start` or just beyond one of
/// its hull edges, seeing no other hull edge. Empty when some new triangle
/// would be degenerate.
std::optional<Cavity> steiner_cavity(const Pseudotriangulation& mesh, TriangleId start, const Point& u);

/// Existing vertices whose degree parity changes when u fills the cavity.
std::vector<VertexId> parity_flips(const Pseudotriangulation& mesh, const Cavity& cavity);

/// Every sampled position whose cavity flips the odd vertex and gives u even
/// degree, unless u joins the hull. `density` scales the sampling.
std::vector<Placement> steiner_candidates(const Pseudotriangulation& mesh, const SteinerRegion& region,
                                          std::size_t density);

/// Best candidate `accept` agrees to, doubling the density from arc_samples
/// up to max_refinements times. Throws PlacementFailure when none is found.
Placement place_steiner(const Pseudotriangulation& mesh, const SteinerRegion& region, const EvenConfig& config,
                        const std::function<bool(const Placement&)>& accept = {});

SteinerInsertion record_insertion(const Pseudotriangulation& mesh, const SteinerRegion& region,
                                  const Placement& placement);

/// Re-checks a logged insertion with exact predicates.
bool replay_insertion(const SteinerInsertion& insertion);

/// Empties the cavity, drops the opened hull edge if any, and joins u to the
/// cavity boundary. Returns u.
VertexId insert_steiner(Pseudotriangulation& mesh, const Placement& placement);

/// Side a freshly inserted vertex joins: left iff u.x < right_leftmost.x.
Side route_after_insert(const Point& u, const Point& right_leftmost);

/// Merges the single vertex `u` into `side` starting from edge `e`, which must
/// join u to a hull vertex of `side`. Every candidate comes from `side`.
Component merge_u(Workspace& ws, Component side, VertexId u, EdgeId e, const DqaOptions& options = {});

/// Even / Relaxed (or Plain) triangulation of the points.
EvenResult dqa_even(std::span<const Point> points, const EvenConfig& config = {});

}  // namespace evendt
