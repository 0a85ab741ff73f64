#include "gsrm/baselines.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>

namespace gsrm {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

struct Lattice {
  int cols = 0;
  int rows = 0;
  std::vector<int> vertex_of;  // lattice cell -> vertex index or -1
  std::vector<Point> vertices;
};

Lattice make_lattice(const OccupancyGrid& grid, int m) {
  Lattice l;
  l.cols = static_cast<int>(std::ceil(m * grid.width() / grid.scale() - 1e-9));
  l.rows = static_cast<int>(std::ceil(m * grid.height() / grid.scale() - 1e-9));
  l.vertex_of.assign(static_cast<std::size_t>(l.cols) * l.rows, -1);
  for (int j = 0; j < l.rows; ++j) {
    for (int i = 0; i < l.cols; ++i) {
      const Point c{(i + 0.5) / m, (j + 0.5) / m};
      if (!is_free_point(grid, c)) continue;
      l.vertex_of[static_cast<std::size_t>(j) * l.cols + i] = static_cast<int>(l.vertices.size());
      l.vertices.push_back(c);
    }
  }
  return l;
}

// One rejection-sampling draw: uniform raster cell, uniform offset inside it.
std::optional<Point> draw_free_point(const OccupancyGrid& grid, Rng& rng) {
  const auto cells = static_cast<std::uint64_t>(grid.width()) * grid.height();
  const auto c = rng.below(cells);
  const int x = static_cast<int>(c % grid.width());
  const int y = static_cast<int>(c / grid.width());
  if (!grid.is_free(x, y)) return std::nullopt;
  const double s = grid.scale();
  const double ux = rng.uniform();
  const double uy = rng.uniform();
  const Point p{(x + ux) / s, (y + uy) / s};
  // Rounding can push a point onto the neighbor cell.
  if (!is_free_point(grid, p)) return std::nullopt;
  return p;
}

std::vector<Point> prm_samples(const OccupancyGrid& grid, std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Point> pts;
  pts.reserve(n);
  const std::size_t budget = 100 * std::max<std::size_t>(n, 1);
  std::size_t rejections = 0;
  while (pts.size() < n) {
    auto p = draw_free_point(grid, rng);
    if (p && std::find(pts.begin(), pts.end(), *p) == pts.end()) {
      pts.push_back(*p);
    } else if (++rejections > budget) {
      throw SamplingFailed("prm: could not place " + std::to_string(n) + " distinct samples within " +
                           std::to_string(budget) + " rejections");
    }
  }
  return pts;
}

struct Pair {
  double d;
  int i;
  int j;
};

// All pairs sorted by distance (ties by index) for the delta search.
std::vector<Pair> sorted_pairs(const std::vector<Point>& pts) {
  std::vector<Pair> pairs;
  const int n = static_cast<int>(pts.size());
  pairs.reserve(static_cast<std::size_t>(n) * (n > 0 ? n - 1 : 0) / 2);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) pairs.push_back({distance(pts[i], pts[j]), i, j});
  }
  std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
    return a.d < b.d || (a.d == b.d && (a.i < b.i || (a.i == b.i && a.j < b.j)));
  });
  return pairs;
}

}  // namespace

Roadmap build_gridmap8_at(const OccupancyGrid& grid, int m) {
  const auto t0 = Clock::now();
  if (m < 1) throw std::invalid_argument("gridmap: lattice resolution must be >= 1");
  const Lattice l = make_lattice(grid, m);
  std::vector<std::pair<int, int>> edges;
  const int di[] = {1, 0, 1, -1};
  const int dj[] = {0, 1, 1, 1};
  for (int j = 0; j < l.rows; ++j) {
    for (int i = 0; i < l.cols; ++i) {
      const int a = l.vertex_of[static_cast<std::size_t>(j) * l.cols + i];
      if (a < 0) continue;
      for (int k = 0; k < 4; ++k) {
        const int ni = i + di[k], nj = j + dj[k];
        if (ni < 0 || ni >= l.cols || nj >= l.rows) continue;
        const int b = l.vertex_of[static_cast<std::size_t>(nj) * l.cols + ni];
        if (b < 0 || !segment_free(grid, l.vertices[a], l.vertices[b])) continue;
        edges.emplace_back(std::min(a, b), std::max(a, b));
      }
    }
  }
  Roadmap r(l.vertices, edges);
  r.builder = Builder::grid8;
  r.build_ms = elapsed_ms(t0);
  return r;
}

Roadmap build_gridmap8(const OccupancyGrid& grid, std::size_t target_n) {
  const auto t0 = Clock::now();
  if (target_n < 1) throw std::invalid_argument("gridmap: target must be >= 1");
  const double free_fraction =
      static_cast<double>(grid.free_count()) / (static_cast<double>(grid.width()) * grid.height());
  const double area = static_cast<double>(grid.width()) * grid.height() / (grid.scale() * grid.scale());
  // Free lattice counts are not monotone in m; scan well past the expected crossing.
  const int m_max = static_cast<int>(std::ceil(2.0 * std::sqrt((target_n + 16.0) / (free_fraction * area)))) + 4;
  int best_m = 0;
  for (int m = 1; m <= m_max; ++m) {
    const std::size_t count = make_lattice(grid, m).vertices.size();
    if (count >= 1 && count <= target_n) best_m = m;
  }
  if (best_m == 0) throw std::runtime_error("gridmap: no lattice resolution has free cells within the target");
  Roadmap r = build_gridmap8_at(grid, best_m);
  r.build_ms = elapsed_ms(t0);
  return r;
}

Point sample_free_point(const OccupancyGrid& grid, Rng& rng, std::size_t max_rejections) {
  for (std::size_t rejected = 0; rejected <= max_rejections; ++rejected) {
    if (auto p = draw_free_point(grid, rng)) return *p;
  }
  throw SamplingFailed("free-space sampling exceeded the rejection budget");
}

Roadmap build_prm(const OccupancyGrid& grid, const PrmParams& params) {
  const auto t0 = Clock::now();
  if (params.n < 1) throw std::invalid_argument("prm: n must be >= 1");
  if (!(params.delta > 0.0)) throw std::invalid_argument("prm: delta must be positive");
  auto pts = prm_samples(grid, params.n, params.seed);

  std::vector<int> order(pts.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return pts[a].x < pts[b].x; });
  std::vector<std::pair<int, int>> edges;
  for (std::size_t oi = 0; oi < order.size(); ++oi) {
    const int i = order[oi];
    for (std::size_t oj = oi + 1; oj < order.size(); ++oj) {
      const int j = order[oj];
      if (pts[j].x - pts[i].x > params.delta) break;
      if (distance(pts[i], pts[j]) > params.delta) continue;
      if (segment_free(grid, pts[i], pts[j])) edges.emplace_back(std::min(i, j), std::max(i, j));
    }
  }
  std::sort(edges.begin(), edges.end());
  Roadmap r(std::move(pts), edges);
  r.builder = Builder::prm;
  r.seed = params.seed;
  r.build_ms = elapsed_ms(t0);
  return r;
}

DeltaTuning tune_prm_delta(const OccupancyGrid& grid, std::size_t n, std::size_t target_edges,
                           std::uint64_t seed) {
  constexpr double kMaxDelta = 1.4142135623730951;
  constexpr double kTolerance = 0.02;
  const auto pts = prm_samples(grid, n, seed);
  const auto pairs = sorted_pairs(pts);

  if (target_edges == 0) {
    const double min_d = pairs.empty() ? kMaxDelta : pairs.front().d;
    return {min_d / 2.0, 0};
  }

  // free_prefix[k] = free pairs among pairs[0..k); filled lazily in distance order.
  std::vector<std::size_t> free_prefix{0};
  const auto count = [&](double delta) -> std::size_t {
    const auto end = static_cast<std::size_t>(
        std::upper_bound(pairs.begin(), pairs.end(), delta, [](double d, const Pair& p) { return d < p.d; }) -
        pairs.begin());
    while (free_prefix.size() <= end) {
      const auto& p = pairs[free_prefix.size() - 1];
      free_prefix.push_back(free_prefix.back() + (segment_free(grid, pts[p.i], pts[p.j]) ? 1 : 0));
    }
    return free_prefix[end];
  };
  const auto within = [&](std::size_t c) {
    return std::abs(static_cast<double>(c) - static_cast<double>(target_edges)) <=
           kTolerance * static_cast<double>(target_edges);
  };

  DeltaTuning best{kMaxDelta, 0};
  double best_err = std::numeric_limits<double>::infinity();
  const auto consider = [&](double delta, std::size_t c) {
    // Any delta past the farthest pair yields the complete free graph; report the upper bound.
    if (!pairs.empty() && delta >= pairs.back().d) delta = kMaxDelta;
    const double err = std::abs(static_cast<double>(c) - static_cast<double>(target_edges));
    if (err < best_err) {
      best_err = err;
      best = {delta, c};
    }
    return within(c);
  };

  // Bracket from below so only pairs up to the needed radius get collision-checked.
  double lo = 0.0;
  double hi = pairs.empty() ? kMaxDelta : std::min(kMaxDelta, pairs[std::min(target_edges, pairs.size() - 1)].d);
  for (;;) {
    const std::size_t c = count(hi);
    if (consider(hi, c)) return best;
    if (c >= target_edges) break;
    lo = hi;
    if (hi >= kMaxDelta) throw TargetUnreachable(best, target_edges);
    hi = std::min(kMaxDelta, hi * 1.25);
  }
  for (int iter = 0; iter < 40; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const std::size_t c = count(mid);
    if (consider(mid, c)) return best;
    (c < target_edges ? lo : hi) = mid;
  }
  throw TargetUnreachable(best, target_edges);
}

}  // namespace gsrm
