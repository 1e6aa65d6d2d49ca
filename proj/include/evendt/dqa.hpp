#pragma once

// Divide-and-conquer Delaunay triangulation: sort, split into groups of three,
// and merge neighbouring sub-triangulations pairwise.
//
// All sub-triangulations of one run live in a single Pseudotriangulation owned
// by a Workspace; a Component is the set of vertices currently forming one of
// them. Merging two components only touches the mesh around their common
// boundary, so components never need to be copied.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "evendt/triangulation.hpp"

namespace evendt {

enum class Side { Left, Right };

struct Component {
  std::uint32_t label = 0;
  std::vector<VertexId> members;
  VertexId leftmost;   // lexicographic minimum
  VertexId rightmost;  // lexicographic maximum
};

class Workspace {
 public:
  Workspace() = default;

  Pseudotriangulation& mesh() { return mesh_; }
  const Pseudotriangulation& mesh() const { return mesh_; }

  Component make_component(std::vector<VertexId> members);
  bool owns(const Component& part, VertexId v) const;
  /// Moves every member of `from` into `into`; `into` keeps its label.
  void absorb(Component& into, Component&& from);

 private:
  void label(VertexId v, std::uint32_t tag);

  Pseudotriangulation mesh_;
  std::vector<std::uint32_t> owner_;
  std::uint32_t next_label_ = 1;
};

/// Live state of one merge: the current base edge and the parts it joins.
struct MergeFrontier {
  VertexId left;       // base endpoint in the left part
  VertexId right;      // base endpoint in the right part
  VertexId left_top;   // highest vertex of the left part when the merge started
  VertexId right_top;  // highest vertex of the right part when the merge started
  EdgeId base;
  Component* left_part = nullptr;
  Component* right_part = nullptr;
};

struct Candidate {
  VertexId vertex;
  Side side = Side::Left;
};

enum class CandidateSearch {
  NeighborScan,  // rising-circle scan over the base endpoints' rings
  Exhaustive,    // every vertex of both parts; crossing edges removed on advance
};

/// Sorted copy of the points in (x, y) order. Throws DuplicatePoint.
std::vector<Point> sort_points(std::span<const Point> points);

/// Adds the sorted points to the workspace mesh and returns one component per
/// group of three (triangle, or a two-edge path when collinear), with a
/// trailing two-vertex edge or single vertex.
std::vector<Component> split(Workspace& ws, std::span<const Point> sorted);

/// Connects the lower common tangent of the two parts and returns the frontier
/// sitting on it. Every vertex of `left` must precede every vertex of `right`.
MergeFrontier find_base_edge(Workspace& ws, Component& left, Component& right);

/// The vertex closing the next merge triangle above the base, or nullopt once
/// the base is the upper common tangent. The neighbor scan deletes edges that
/// fail the empty-circle test on the way.
std::optional<Candidate> find_candidate_w(Workspace& ws, MergeFrontier& frontier,
                                          CandidateSearch search = CandidateSearch::NeighborScan);

/// Connects the candidate to the opposite base endpoint (reusing the edge if it
/// already exists) and moves the frontier onto it.
void advance(Workspace& ws, MergeFrontier& frontier, const Candidate& candidate,
             CandidateSearch search = CandidateSearch::NeighborScan);

struct DqaOptions {
  CandidateSearch search = CandidateSearch::NeighborScan;
  /// Called after every merge iteration with the working mesh.
  std::function<void(const Pseudotriangulation&)> on_iteration;
};

/// Merges two adjacent parts into one.
Component merge(Workspace& ws, Component left, Component right, const DqaOptions& options = {});

/// Delaunay triangulation of the points, compacted.
Pseudotriangulation dqa(std::span<const Point> points, const DqaOptions& options = {});

}  // namespace evendt
