#include "gsrm/triangulation.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <unordered_map>

namespace gsrm {

namespace predicates {

namespace {

constexpr double kEpsilon = 0x1.0p-53;
constexpr double kOrientBound = (3.0 + 16.0 * kEpsilon) * kEpsilon;
constexpr double kInCircleBound = (10.0 + 96.0 * kEpsilon) * kEpsilon;

int sign(const mpq_class& q) { return sgn(q); }

int orient2d_exact(const Point& a, const Point& b, const Point& c) {
  const mpq_class acx = mpq_class(a.x) - c.x, bcx = mpq_class(b.x) - c.x;
  const mpq_class acy = mpq_class(a.y) - c.y, bcy = mpq_class(b.y) - c.y;
  return sign(acx * bcy - acy * bcx);
}

int incircle_exact(const Point& a, const Point& b, const Point& c, const Point& d) {
  const mpq_class adx = mpq_class(a.x) - d.x, ady = mpq_class(a.y) - d.y;
  const mpq_class bdx = mpq_class(b.x) - d.x, bdy = mpq_class(b.y) - d.y;
  const mpq_class cdx = mpq_class(c.x) - d.x, cdy = mpq_class(c.y) - d.y;
  const mpq_class alift = adx * adx + ady * ady;
  const mpq_class blift = bdx * bdx + bdy * bdy;
  const mpq_class clift = cdx * cdx + cdy * cdy;
  const mpq_class det = alift * (bdx * cdy - cdx * bdy) + blift * (cdx * ady - adx * cdy) +
                        clift * (adx * bdy - bdx * ady);
  return sign(det);
}

}  // namespace

int orient2d(const Point& a, const Point& b, const Point& c) {
  const double left = (a.x - c.x) * (b.y - c.y);
  const double right = (a.y - c.y) * (b.x - c.x);
  const double det = left - right;
  double detsum;
  if (left > 0.0) {
    if (right <= 0.0) return det > 0.0 ? 1 : (det < 0.0 ? -1 : 0);
    detsum = left + right;
  } else if (left < 0.0) {
    if (right >= 0.0) return det > 0.0 ? 1 : (det < 0.0 ? -1 : 0);
    detsum = -left - right;
  } else {
    return det > 0.0 ? 1 : (det < 0.0 ? -1 : 0);
  }
  const double bound = kOrientBound * detsum;
  if (det >= bound && det != 0.0) return 1;
  if (-det >= bound && det != 0.0) return -1;
  return orient2d_exact(a, b, c);
}

int incircle(const Point& a, const Point& b, const Point& c, const Point& d) {
  const double adx = a.x - d.x, ady = a.y - d.y;
  const double bdx = b.x - d.x, bdy = b.y - d.y;
  const double cdx = c.x - d.x, cdy = c.y - d.y;

  const double bdxcdy = bdx * cdy, cdxbdy = cdx * bdy;
  const double alift = adx * adx + ady * ady;
  const double cdxady = cdx * ady, adxcdy = adx * cdy;
  const double blift = bdx * bdx + bdy * bdy;
  const double adxbdy = adx * bdy, bdxady = bdx * ady;
  const double clift = cdx * cdx + cdy * cdy;

  const double det = alift * (bdxcdy - cdxbdy) + blift * (cdxady - adxcdy) + clift * (adxbdy - bdxady);
  const double permanent = (std::abs(bdxcdy) + std::abs(cdxbdy)) * alift +
                           (std::abs(cdxady) + std::abs(adxcdy)) * blift +
                           (std::abs(adxbdy) + std::abs(bdxady)) * clift;
  const double bound = kInCircleBound * permanent;
  if (det > bound) return 1;
  if (-det > bound) return -1;
  return incircle_exact(a, b, c, d);
}

}  // namespace predicates

namespace {

struct Face {
  std::array<int, 3> v;
  std::array<int, 3> n;  // n[i] is the face across the edge opposite v[i]
  bool alive = true;
};

// Keeps the first of any points closer than kDedupTolerance.
std::vector<int> deduplicate(const std::vector<Point>& pts, std::vector<Point>& kept) {
  struct KeyHash {
    std::size_t operator()(const std::pair<std::int64_t, std::int64_t>& k) const {
      return std::hash<std::int64_t>()(k.first * 0x9e3779b97f4a7c15LL ^ k.second);
    }
  };
  std::unordered_map<std::pair<std::int64_t, std::int64_t>, std::vector<int>, KeyHash> buckets;
  std::vector<int> map(pts.size());
  const auto key_of = [](double v) { return static_cast<std::int64_t>(std::floor(v / kDedupTolerance)); };
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Point& p = pts[i];
    if (!is_finite(p)) throw std::invalid_argument("delaunay: non-finite point");
    const auto kx = key_of(p.x), ky = key_of(p.y);
    int found = -1;
    for (std::int64_t dx = -1; dx <= 1 && found < 0; ++dx) {
      for (std::int64_t dy = -1; dy <= 1 && found < 0; ++dy) {
        auto it = buckets.find({kx + dx, ky + dy});
        if (it == buckets.end()) continue;
        for (int k : it->second) {
          if (distance(kept[k], p) < kDedupTolerance) {
            found = k;
            break;
          }
        }
      }
    }
    if (found < 0) {
      found = static_cast<int>(kept.size());
      kept.push_back(p);
      buckets[{kx, ky}].push_back(found);
    }
    map[i] = found;
  }
  return map;
}

class BowyerWatson {
 public:
  explicit BowyerWatson(std::vector<Point> pts) : pts_(std::move(pts)), n_real_(static_cast<int>(pts_.size())) {
    double minx = pts_[0].x, maxx = minx, miny = pts_[0].y, maxy = miny;
    for (const auto& p : pts_) {
      minx = std::min(minx, p.x);
      maxx = std::max(maxx, p.x);
      miny = std::min(miny, p.y);
      maxy = std::max(maxy, p.y);
    }
    const double cx = 0.5 * (minx + maxx), cy = 0.5 * (miny + maxy);
    const double d = 1e6 * std::max({maxx - minx, maxy - miny, 3.0});
    pts_.push_back({cx - d, cy - d});
    pts_.push_back({cx + d, cy - d});
    pts_.push_back({cx, cy + d});
    faces_.push_back({{n_real_, n_real_ + 1, n_real_ + 2}, {-1, -1, -1}, true});
  }

  void run() {
    for (int i = 0; i < n_real_; ++i) insert(i);
  }

  std::vector<Triangle> triangles() const {
    std::vector<Triangle> out;
    for (const auto& f : faces_) {
      if (!f.alive) continue;
      if (f.v[0] >= n_real_ || f.v[1] >= n_real_ || f.v[2] >= n_real_) continue;
      out.push_back({f.v[0], f.v[1], f.v[2]});
    }
    return out;
  }

 private:
  bool contains(int t, const Point& p) const {
    const auto& f = faces_[t];
    for (int e = 0; e < 3; ++e) {
      if (predicates::orient2d(pts_[f.v[(e + 1) % 3]], pts_[f.v[(e + 2) % 3]], p) < 0) return false;
    }
    return true;
  }

  int locate(const Point& p) {
    int t = last_;
    int rot = 0;
    const std::size_t limit = faces_.size() * 4 + 16;
    for (std::size_t it = 0; it < limit; ++it) {
      const auto& f = faces_[t];
      int next = -1;
      for (int k = 0; k < 3; ++k) {
        const int e = (rot + k) % 3;
        if (predicates::orient2d(pts_[f.v[(e + 1) % 3]], pts_[f.v[(e + 2) % 3]], p) < 0) {
          next = f.n[e];
          break;
        }
      }
      if (next < 0) return t;
      t = next;
      rot = (rot + 1) % 3;
    }
    for (int i = static_cast<int>(faces_.size()) - 1; i >= 0; --i) {
      if (faces_[i].alive && contains(i, p)) return i;
    }
    throw std::logic_error("delaunay: point location failed");
  }

  bool in_circle(int t, const Point& p) const {
    const auto& f = faces_[t];
    return predicates::incircle(pts_[f.v[0]], pts_[f.v[1]], pts_[f.v[2]], p) > 0;
  }

  void insert(int pi) {
    const Point& p = pts_[pi];
    const int start = locate(p);

    ++stamp_;
    mark_.resize(faces_.size(), 0);
    cavity_.clear();
    cavity_.push_back(start);
    mark_[start] = stamp_;
    for (std::size_t k = 0; k < cavity_.size(); ++k) {
      for (int nb : faces_[cavity_[k]].n) {
        if (nb < 0 || mark_[nb] == stamp_) continue;
        if (in_circle(nb, p)) {
          mark_[nb] = stamp_;
          cavity_.push_back(nb);
        }
      }
    }

    rim_.clear();
    for (int t : cavity_) {
      const auto& f = faces_[t];
      for (int e = 0; e < 3; ++e) {
        const int nb = f.n[e];
        if (nb >= 0 && mark_[nb] == stamp_) continue;
        rim_.push_back({f.v[(e + 1) % 3], f.v[(e + 2) % 3], nb, t, -1});
      }
    }
    for (int t : cavity_) faces_[t].alive = false;

    for (auto& r : rim_) {
      r.face = static_cast<int>(faces_.size());
      faces_.push_back({{r.a, r.b, pi}, {-1, -1, r.outside}, true});
      if (r.outside >= 0) {
        for (auto& back : faces_[r.outside].n) {
          if (back == r.inner) back = r.face;
        }
      }
    }
    for (const auto& r : rim_) {
      auto& f = faces_[r.face];
      for (const auto& s : rim_) {
        if (s.a == r.b) f.n[0] = s.face;  // across edge (b, p)
        if (s.b == r.a) f.n[1] = s.face;  // across edge (p, a)
      }
    }
    last_ = rim_.back().face;
  }

  struct RimEdge {
    int a, b, outside, inner, face;
  };

  std::vector<Point> pts_;
  int n_real_;
  std::vector<Face> faces_;
  std::vector<int> mark_;
  std::vector<int> cavity_;
  std::vector<RimEdge> rim_;
  int stamp_ = 0;
  int last_ = 0;
};

}  // namespace

Triangulation delaunay(const std::vector<Point>& points, int real_count) {
  Triangulation tri;
  tri.input_index = deduplicate(points, tri.points);
  if (real_count < 0 || real_count > static_cast<int>(points.size())) real_count = static_cast<int>(points.size());
  tri.dummy_start = 0;
  for (int i = 0; i < real_count; ++i) tri.dummy_start = std::max(tri.dummy_start, tri.input_index[i] + 1);

  const auto& pts = tri.points;
  if (pts.size() < 3) throw TooFewPoints();
  bool spread = false;
  for (std::size_t k = 2; k < pts.size() && !spread; ++k) {
    spread = predicates::orient2d(pts[0], pts[1], pts[k]) != 0;
  }
  if (!spread) throw DegenerateInput();

  BowyerWatson bw(pts);
  bw.run();
  tri.triangles = bw.triangles();
  return tri;
}

std::vector<std::pair<int, int>> harvest_edges(const Triangulation& tri, const OccupancyGrid& grid) {
  std::vector<std::pair<int, int>> candidates;
  candidates.reserve(tri.triangles.size() * 3);
  for (const auto& t : tri.triangles) {
    const int v[3] = {t.a, t.b, t.c};
    for (int e = 0; e < 3; ++e) {
      const int i = v[e], j = v[(e + 1) % 3];
      if (i >= tri.dummy_start || j >= tri.dummy_start) continue;
      candidates.emplace_back(std::min(i, j), std::max(i, j));
    }
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  std::vector<std::pair<int, int>> edges;
  for (const auto& [i, j] : candidates) {
    if (segment_free(grid, tri.points[i], tri.points[j])) edges.emplace_back(i, j);
  }
  return edges;
}

}  // namespace gsrm
