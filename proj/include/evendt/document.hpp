#pragma once

// Point files, the JSON triangulation document, and SVG rendering.

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "evendt/color_gem.hpp"
#include "evendt/even.hpp"

namespace evendt {

inline constexpr int kFormatVersion = 1;

/// One point per line as two decimals; blank lines and lines starting with '#'
/// are skipped. Throws InvalidInput naming the line, or DuplicatePoint.
std::vector<Point> parse_points(std::string_view text);
std::vector<Point> read_points(const std::string& path);
std::string format_points(const std::vector<Point>& points);

std::string mode_name(Mode mode);
/// Throws InvalidInput on anything but plain, even or relaxed.
Mode parse_mode(std::string_view name);

struct Document {
  Mode mode = Mode::Plain;
  /// Dense identifiers: vertex, edge and triangle i are the i-th records.
  Pseudotriangulation mesh;
  std::optional<Coloring> coloring;
  std::optional<GemMap> gem;
  RunStats stats;
  std::optional<std::array<VertexId, 2>> top_base;
};

/// Takes a compacted copy of the mesh.
Document make_document(Mode mode, const Pseudotriangulation& mesh, const RunStats& stats,
                       std::optional<std::array<VertexId, 2>> top_base = std::nullopt);

/// Deterministic JSON text, two-space indented, ending in a newline.
std::string write_document(const Document& doc);
/// Throws InvalidInput on malformed JSON, an unknown format_version or dangling references.
Document read_document(std::string_view text);

struct SvgOptions {
  bool emphasize_base = false;
  bool label_colors = false;
};

/// Edges as segments, vertices as dots filled by color when known, Steiner
/// vertices drawn as squares, the top-level base thicker when asked.
std::string render_svg(const Document& doc, const SvgOptions& options = {});

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view text);

}  // namespace evendt
