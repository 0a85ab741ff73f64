#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "gsrm/geometry.hpp"

namespace gsrm {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " at byte offset " + std::to_string(offset)), offset_(offset) {}

  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// Raster free-space mask. Cell (ix, iy) covers
/// [ix, ix+1) x [iy, iy+1) / scale in unit-square coordinates, scale = max(width, height).
/// Immutable after construction.
class OccupancyGrid {
 public:
  /// `free` is row-major, nonzero = free. Throws std::invalid_argument on a size
  /// mismatch, a zero dimension, or a mask without free cells.
  OccupancyGrid(int width, int height, std::vector<std::uint8_t> free);

  int width() const { return width_; }
  int height() const { return height_; }
  double scale() const { return scale_; }
  std::size_t free_count() const { return free_count_; }

  bool in_bounds(int ix, int iy) const { return ix >= 0 && iy >= 0 && ix < width_ && iy < height_; }
  bool is_free(int ix, int iy) const {
    return in_bounds(ix, iy) && mask_[static_cast<std::size_t>(iy) * width_ + ix] != 0;
  }
  const std::vector<std::uint8_t>& mask() const { return mask_; }

  Point cell_center(int ix, int iy) const { return {(ix + 0.5) / scale_, (iy + 0.5) / scale_}; }

  /// Cell containing p (floor of the mapped coordinate), or nullopt when p is
  /// non-finite or outside the raster.
  std::optional<Cell> cell_of(const Point& p) const;

 private:
  int width_;
  int height_;
  double scale_;
  std::vector<std::uint8_t> mask_;
  std::size_t free_count_ = 0;
};

/// Parse a binary (P5) or ASCII (P2) PGM. A pixel is free iff its value,
/// normalized to 0..255, is >= 128.
OccupancyGrid load_pgm(std::span<const std::uint8_t> bytes);
OccupancyGrid load_pgm_file(const std::filesystem::path& path);

/// P5 encoding with free = 255, obstacle = 0.
std::vector<std::uint8_t> save_pgm(const OccupancyGrid& grid);
void save_pgm_file(const OccupancyGrid& grid, const std::filesystem::path& path);

/// An all-free square map.
OccupancyGrid make_plain_grid(int size);

bool is_free_point(const OccupancyGrid& grid, const Point& p);

/// Cells the closed segment ab touches, including corner contacts. Crossings
/// within 1e-9 cells of a grid line count as touching. Cells outside the
/// raster are included as-is so callers can reject them.
std::vector<Cell> supercover_cells(const OccupancyGrid& grid, const Point& a, const Point& b);

/// True iff ab lies in free space: every supercover cell is free and every
/// half-cell-spaced sample along the segment is a free point.
bool segment_free(const OccupancyGrid& grid, const Point& a, const Point& b);

/// Nearest-neighbor resample so the longer side has `resolution` cells.
/// A target cell is free iff the source pixel under its center is free.
OccupancyGrid resample_nearest(const OccupancyGrid& grid, int resolution);

}  // namespace gsrm
