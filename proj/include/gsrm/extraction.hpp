#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "gsrm/geometry.hpp"
#include "gsrm/gray_scott.hpp"
#include "gsrm/map_io.hpp"

namespace gsrm {

struct BinaryImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> bits;  // row-major, 0 or 1

  bool at(int x, int y) const {
    return x >= 0 && y >= 0 && x < width && y < height && bits[static_cast<std::size_t>(y) * width + x] != 0;
  }
};

/// Outer border of one 8-connected foreground component, in tracing order.
/// Thin parts of a component are traversed twice, so points may repeat.
struct Contour {
  std::vector<Cell> points;
};

class EmptyPattern : public std::runtime_error {
 public:
  EmptyPattern() : std::runtime_error("no pattern formed: max(v) is 0") {}
};

/// bit = v > max(v) / 2. Throws EmptyPattern when max(v) <= 0.
BinaryImage threshold_v(const GsState& state);

/// Suzuki-Abe border following with 8-connected foreground. Hole borders are
/// traced for bookkeeping but only outer borders are returned, in raster
/// order of their starting pixel.
std::vector<Contour> find_contours(const BinaryImage& img);

/// Mean of the contour's cell coordinates, mapped through the cell-center rule.
Point contour_centroid(const Contour& c, double scale);

/// Centers of obstacle cells on the lattice {0, stride, 2*stride, ...}^2, plus
/// the four raster corners when they are obstacles.
std::vector<Point> make_dummy_vertices(const OccupancyGrid& grid, int stride);

/// threshold -> contours -> centroids. A centroid outside free space moves to
/// the center of the nearest point of its own contour.
std::vector<Point> extract_vertices(const GsState& state, const OccupancyGrid& grid);

/// Dummy stride matched to the spot spacing: round(sqrt(free cells / vertices)), at least 1.
int default_dummy_stride(const OccupancyGrid& grid, std::size_t vertex_count);

}  // namespace gsrm
