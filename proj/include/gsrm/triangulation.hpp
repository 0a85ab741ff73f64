#pragma once

#include <array>
#include <stdexcept>
#include <utility>
#include <vector>

#include "gsrm/geometry.hpp"
#include "gsrm/map_io.hpp"

namespace gsrm {

namespace predicates {

/// Sign of the signed area of (a, b, c): +1 counterclockwise, -1 clockwise,
/// 0 collinear. Floating-point filter with an exact rational fallback.
int orient2d(const Point& a, const Point& b, const Point& c);

/// +1 if d lies strictly inside the circumcircle of counterclockwise (a, b, c),
/// -1 if strictly outside, 0 if cocircular. Filtered, exact fallback.
int incircle(const Point& a, const Point& b, const Point& c, const Point& d);

}  // namespace predicates

class TooFewPoints : public std::invalid_argument {
 public:
  TooFewPoints() : std::invalid_argument("delaunay: fewer than 3 distinct points") {}
};

class DegenerateInput : public std::invalid_argument {
 public:
  DegenerateInput() : std::invalid_argument("delaunay: all points are collinear") {}
};

/// Counterclockwise vertex indices into Triangulation::points.
struct Triangle {
  int a = 0;
  int b = 0;
  int c = 0;
};

struct Triangulation {
  std::vector<Point> points;   // deduplicated input, real points first
  std::vector<Triangle> triangles;
  int dummy_start = 0;         // points[dummy_start..] are dummies
  std::vector<int> input_index;  // input index -> index in `points`
};

/// Points closer than this (unit-square units) are merged.
inline constexpr double kDedupTolerance = 1e-9;

/// Bowyer-Watson with exact predicates. Points are inserted in input order;
/// cocircular ties resolve toward the earlier triangulation, so the output is
/// a deterministic function of the input sequence. `real_count` marks where
/// dummy points start in `points` (default: none are dummies).
Triangulation delaunay(const std::vector<Point>& points, int real_count = -1);

/// Sides of triangles whose endpoints are both real and whose segment is free,
/// as sorted unique (i < j) pairs.
std::vector<std::pair<int, int>> harvest_edges(const Triangulation& tri, const OccupancyGrid& grid);

}  // namespace gsrm
