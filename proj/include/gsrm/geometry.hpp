#pragma once

#include <cmath>

namespace gsrm {

/// A location in unit-square coordinates. The raster's longer side spans [0, 1].
struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

inline double distance(const Point& a, const Point& b) {
  return std::hypot(b.x - a.x, b.y - a.y);
}

inline bool is_finite(const Point& p) {
  return std::isfinite(p.x) && std::isfinite(p.y);
}

/// Integer raster coordinate; y grows downward (row index).
struct Cell {
  int x = 0;
  int y = 0;

  friend bool operator==(const Cell&, const Cell&) = default;
};

}  // namespace gsrm
