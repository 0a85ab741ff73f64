#include "gsrm/gsrm.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "gsrm/extraction.hpp"
#include "gsrm/triangulation.hpp"

namespace gsrm {

namespace {

// Spots per free simulation cell at the default parameters (measured on an
// open 300x300 grid); only used to seed the calibration search.
constexpr double kSpotDensity = 0.0101;

std::optional<Point> nearest_free_pixel(const OccupancyGrid& map, const Point& p) {
  const double s = map.scale();
  const int cx = std::clamp(static_cast<int>(std::floor(p.x * s)), 0, map.width() - 1);
  const int cy = std::clamp(static_cast<int>(std::floor(p.y * s)), 0, map.height() - 1);
  const int max_ring = std::max(map.width(), map.height());
  std::optional<Point> best;
  double best_d = std::numeric_limits<double>::infinity();
  for (int ring = 0; ring <= max_ring; ++ring) {
    for (int y = cy - ring; y <= cy + ring; ++y) {
      for (int x = cx - ring; x <= cx + ring; ++x) {
        if (std::max(std::abs(x - cx), std::abs(y - cy)) != ring || !map.is_free(x, y)) continue;
        const Point c = map.cell_center(x, y);
        const double d = distance(c, p);
        if (d < best_d) {
          best_d = d;
          best = c;
        }
      }
    }
    // Any pixel in a later ring is at least `ring` pixels away.
    if (best && best_d * s <= ring) break;
  }
  return best;
}

std::vector<Point> spot_vertices(const OccupancyGrid& sim_grid, const GsrmOptions& options, std::uint64_t seed) {
  const auto state = simulate(options.params, sim_grid, seed, options.simulate);
  return extract_vertices(state, sim_grid);
}

}  // namespace

Roadmap build_gsrm(const OccupancyGrid& map, const GsrmOptions& options, std::uint64_t seed) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto sim_grid = resample_nearest(map, options.resolution);

  std::vector<Point> points;
  for (const auto& v : spot_vertices(sim_grid, options, seed)) {
    if (is_free_point(map, v)) {
      points.push_back(v);
    } else if (auto moved = nearest_free_pixel(map, v)) {
      points.push_back(*moved);
    }
  }
  const int real_count = static_cast<int>(points.size());
  const int stride = options.dummy_stride.value_or(default_dummy_stride(sim_grid, points.size()));
  for (const auto& d : make_dummy_vertices(sim_grid, stride)) points.push_back(d);

  std::vector<Point> vertices;
  std::vector<std::pair<int, int>> edges;
  if (real_count > 0) {
    try {
      const auto tri = delaunay(points, real_count);
      vertices.assign(tri.points.begin(), tri.points.begin() + tri.dummy_start);
      edges = harvest_edges(tri, map);
    } catch (const std::invalid_argument&) {
      // Fewer than three distinct or only collinear points: vertices without edges.
      vertices.assign(points.begin(), points.begin() + real_count);
      std::sort(vertices.begin(), vertices.end(),
                [](const Point& a, const Point& b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
      vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
    }
  }

  Roadmap r(std::move(vertices), edges);
  r.builder = Builder::gsrm;
  r.seed = seed;
  r.build_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

Calibration calibrate_resolution(const OccupancyGrid& map, std::size_t target_n, const GsrmOptions& base,
                                 std::uint64_t seed, double tolerance) {
  if (target_n == 0) throw std::invalid_argument("calibration target must be positive");
  const double free_fraction = static_cast<double>(map.free_count()) / (map.width() * static_cast<double>(map.height()));
  const double aspect = static_cast<double>(map.width()) * map.height() / (map.scale() * map.scale());
  constexpr int kMinRes = 8, kMaxRes = 4096;
  int res = static_cast<int>(std::lround(std::sqrt(target_n / (kSpotDensity * free_fraction * aspect))));
  res = std::clamp(res, kMinRes, kMaxRes);

  Calibration best;
  double best_err = std::numeric_limits<double>::infinity();
  int lo = 0, hi = 0;  // largest resolution known below target, smallest known above
  for (int iter = 0; iter < 12; ++iter) {
    GsrmOptions opts = base;
    opts.resolution = res;
    std::size_t count = 0;
    try {
      count = spot_vertices(resample_nearest(map, res), opts, seed).size();
    } catch (const std::exception&) {
      count = 0;
    }
    const double err = std::abs(static_cast<double>(count) - target_n) / target_n;
    if (err < best_err) {
      best_err = err;
      best = {res, count};
    }
    if (err <= tolerance) break;
    if (count < target_n) {
      lo = std::max(lo, res);
    } else {
      hi = hi == 0 ? res : std::min(hi, res);
    }
    int next;
    if (lo > 0 && hi > 0) {
      if (hi - lo <= 1) break;
      next = (lo + hi) / 2;
    } else {
      const double ratio = count > 0 ? std::sqrt(static_cast<double>(target_n) / count) : 2.0;
      next = std::clamp(static_cast<int>(std::lround(res * ratio)), kMinRes, kMaxRes);
      if (next == res) next = count < target_n ? res + 1 : res - 1;
    }
    if (next < kMinRes || next > kMaxRes) break;
    res = next;
  }
  return best;
}

}  // namespace gsrm
