#pragma once

#include <string>
#include <vector>

#include "gsrm/map_io.hpp"
#include "gsrm/roadmap.hpp"

namespace gsrm {

struct RenderStyle {
  double pixels = 600.0;  // side length of the unit square in SVG pixels
  std::string vertex_color = "#1f4fd8";
  double vertex_radius = 2.5;
  std::string edge_color = "#000000";
  double edge_width = 0.6;
  std::string path_color = "#e01010";
  double path_width = 2.0;
  std::string obstacle_fill = "#808080";
  std::string background = "#ffffff";

  /// Throws std::invalid_argument when a dimension is not positive.
  void validate() const;
};

/// Path drawn from s through the listed vertices to g.
struct RenderPath {
  Point start;
  std::vector<int> vertices;
  Point goal;
};

/// Obstacles as merged row-run rectangles, then edges, path and vertices.
std::string render_svg(const OccupancyGrid& grid, const Roadmap& roadmap, const RenderPath* path = nullptr,
                       const RenderStyle& style = {});

}  // namespace gsrm
