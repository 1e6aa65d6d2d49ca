#pragma once

// Vertex 3-coloring by propagation across shared edges, and the GEM record
// structure: per triangle, one neighbor slot per color, slot i holding the
// triangle across the edge opposite the corner colored i.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "evendt/errors.hpp"
#include "evendt/triangulation.hpp"

namespace evendt {

using Color = std::uint8_t;
using Coloring = std::map<VertexId, Color>;

/// A GEM slot: the neighboring triangle, or Border (nullopt) on a border edge.
using GemSlot = std::optional<TriangleId>;
inline constexpr std::nullopt_t kBorder = std::nullopt;

struct GemRecord {
  TriangleId triangle;
  std::array<GemSlot, 3> p;
};

using GemMap = std::map<TriangleId, GemRecord>;

class NotThreeColorable : public Error {
 public:
  explicit NotThreeColorable(VertexId witness);
  /// An odd interior vertex, or the vertex reached with two colors when there is none.
  VertexId witness() const { return witness_; }

 private:
  VertexId witness_;
};

class InvalidColoring : public Error {
 public:
  using Error::Error;
};

/// Colors the seed triangle 0, 1, 2 counterclockwise from its lexicographically
/// smallest corner and propagates across shared edges. The default seed is the
/// lowest triangle id; every further triangle-connected piece is seeded the same
/// way. Throws InvalidInput when a vertex lies on no triangle.
Coloring three_color(const Pseudotriangulation& mesh, std::optional<TriangleId> seed = std::nullopt);

/// Throws InvalidColoring unless every vertex has a color in {0,1,2}, every
/// edge joins two colors and every triangle shows all three.
GemMap build_gem(const Pseudotriangulation& mesh, const Coloring& coloring);

/// Involution, slot consistency with the mesh and coloring, and connectivity.
/// Each message starts with its kind: "involution", "slot", "record" or "connectivity".
std::vector<std::string> validate_gem(const GemMap& gem, const Pseudotriangulation& mesh, const Coloring& coloring);

}  // namespace evendt
