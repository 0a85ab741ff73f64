#include "gsrm/extraction.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>

namespace gsrm {

BinaryImage threshold_v(const GsState& state) {
  const double vmax = state.v.max();
  if (!(vmax > 0.0)) throw EmptyPattern();
  const double half = vmax / 2.0;
  BinaryImage img{state.v.width, state.v.height, std::vector<std::uint8_t>(state.v.values.size())};
  for (std::size_t i = 0; i < img.bits.size(); ++i) img.bits[i] = state.v.values[i] > half ? 1 : 0;
  return img;
}

namespace {

// Clockwise neighbor order in row-down image coordinates, starting east.
constexpr int kDRow[8] = {0, 1, 1, 1, 0, -1, -1, -1};
constexpr int kDCol[8] = {1, 1, 0, -1, -1, -1, 0, 1};
constexpr int kEast = 0;
constexpr int kWest = 4;

int direction(int drow, int dcol) {
  for (int d = 0; d < 8; ++d) {
    if (kDRow[d] == drow && kDCol[d] == dcol) return d;
  }
  return -1;
}

}  // namespace

std::vector<Contour> find_contours(const BinaryImage& img) {
  const int w = img.width;
  const int h = img.height;
  const int pw = w + 2;
  // Labels on a zero-framed copy: 1 = unvisited foreground, +-NBD = traced.
  std::vector<int> f(static_cast<std::size_t>(pw) * (h + 2), 0);
  const auto at = [&](int r, int c) -> int& { return f[static_cast<std::size_t>(r) * pw + c]; };
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) at(y + 1, x + 1) = img.at(x, y) ? 1 : 0;
  }

  std::vector<Contour> contours;
  int nbd = 1;
  for (int i = 1; i <= h; ++i) {
    for (int j = 1; j <= w; ++j) {
      const int fij = at(i, j);
      if (fij == 0) continue;
      const bool outer = fij == 1 && at(i, j - 1) == 0;
      const bool hole = !outer && fij >= 1 && at(i, j + 1) == 0;
      if (!outer && !hole) continue;

      ++nbd;
      const int start_dir = outer ? kWest : kEast;
      std::vector<Cell> points{{j - 1, i - 1}};

      int first = -1;
      for (int k = 0; k < 8; ++k) {
        const int d = (start_dir + k) % 8;
        if (at(i + kDRow[d], j + kDCol[d]) != 0) {
          first = d;
          break;
        }
      }

      if (first < 0) {
        at(i, j) = -nbd;
      } else {
        const int i1 = i + kDRow[first], j1 = j + kDCol[first];
        int i2 = i1, j2 = j1, i3 = i, j3 = j;
        for (;;) {
          const int from = direction(i2 - i3, j2 - j3);
          bool east_zero = false;
          int i4 = i3, j4 = j3;
          for (int k = 1; k <= 8; ++k) {
            const int d = (from - k + 16) % 8;
            const int r = i3 + kDRow[d], c = j3 + kDCol[d];
            if (at(r, c) != 0) {
              i4 = r;
              j4 = c;
              break;
            }
            if (d == kEast) east_zero = true;
          }
          if (east_zero) {
            at(i3, j3) = -nbd;
          } else if (at(i3, j3) == 1) {
            at(i3, j3) = nbd;
          }
          if (i4 == i && j4 == j && i3 == i1 && j3 == j1) break;
          points.push_back({j4 - 1, i4 - 1});
          i2 = i3;
          j2 = j3;
          i3 = i4;
          j3 = j4;
        }
      }
      if (outer) contours.push_back({std::move(points)});
    }
  }
  return contours;
}

Point contour_centroid(const Contour& c, double scale) {
  double sx = 0.0, sy = 0.0;
  for (const auto& p : c.points) {
    sx += p.x;
    sy += p.y;
  }
  const double n = static_cast<double>(c.points.size());
  return {(sx / n + 0.5) / scale, (sy / n + 0.5) / scale};
}

std::vector<Point> make_dummy_vertices(const OccupancyGrid& grid, int stride) {
  if (stride < 1) throw std::invalid_argument("dummy stride must be >= 1");
  std::vector<Point> out;
  const auto on_lattice = [stride](int ix, int iy) { return ix % stride == 0 && iy % stride == 0; };
  for (int iy = 0; iy < grid.height(); iy += stride) {
    for (int ix = 0; ix < grid.width(); ix += stride) {
      if (!grid.is_free(ix, iy)) out.push_back(grid.cell_center(ix, iy));
    }
  }
  const int xs[] = {0, grid.width() - 1};
  const int ys[] = {0, grid.height() - 1};
  for (int iy : ys) {
    for (int ix : xs) {
      if (grid.is_free(ix, iy) || on_lattice(ix, iy)) continue;
      const Point p = grid.cell_center(ix, iy);
      if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
    }
  }
  return out;
}

std::vector<Point> extract_vertices(const GsState& state, const OccupancyGrid& grid) {
  if (state.v.width != grid.width() || state.v.height != grid.height()) {
    throw std::invalid_argument("state dimensions do not match grid");
  }
  const auto contours = find_contours(threshold_v(state));
  std::vector<Point> vertices;
  vertices.reserve(contours.size());
  for (const auto& c : contours) {
    Point p = contour_centroid(c, grid.scale());
    if (!is_free_point(grid, p)) {
      const double cx = p.x * grid.scale() - 0.5;
      const double cy = p.y * grid.scale() - 0.5;
      double best = std::numeric_limits<double>::infinity();
      Cell snap = c.points.front();
      for (const auto& q : c.points) {
        const double d = (q.x - cx) * (q.x - cx) + (q.y - cy) * (q.y - cy);
        if (d < best) {
          best = d;
          snap = q;
        }
      }
      p = grid.cell_center(snap.x, snap.y);
    }
    vertices.push_back(p);
  }
  return vertices;
}

int default_dummy_stride(const OccupancyGrid& grid, std::size_t vertex_count) {
  if (vertex_count == 0) return std::max(1, static_cast<int>(std::lround(std::sqrt(grid.free_count()))));
  const double spacing = std::sqrt(static_cast<double>(grid.free_count()) / static_cast<double>(vertex_count));
  return std::max(1, static_cast<int>(std::lround(spacing)));
}

}  // namespace gsrm
