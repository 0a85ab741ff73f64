#include "gsrm/map_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>
#include <sstream>

namespace gsrm {

OccupancyGrid::OccupancyGrid(int width, int height, std::vector<std::uint8_t> free)
    : width_(width), height_(height), scale_(std::max(width, height)), mask_(std::move(free)) {
  if (width <= 0 || height <= 0) throw std::invalid_argument("occupancy grid: zero dimension");
  if (mask_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
    throw std::invalid_argument("occupancy grid: mask size does not match dimensions");
  }
  for (auto& m : mask_) {
    m = m != 0 ? 1 : 0;
    free_count_ += m;
  }
  if (free_count_ == 0) throw std::invalid_argument("occupancy grid: no free cells");
}

std::optional<Cell> OccupancyGrid::cell_of(const Point& p) const {
  if (!is_finite(p)) return std::nullopt;
  const double fx = std::floor(p.x * scale_);
  const double fy = std::floor(p.y * scale_);
  if (fx < 0.0 || fy < 0.0 || fx >= width_ || fy >= height_) return std::nullopt;
  return Cell{static_cast<int>(fx), static_cast<int>(fy)};
}

namespace {

class PgmReader {
 public:
  explicit PgmReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::size_t offset() const { return pos_; }
  bool at_end() const { return pos_ >= bytes_.size(); }

  void skip_whitespace_and_comments() {
    while (!at_end()) {
      const auto c = bytes_[pos_];
      if (c == '#') {
        while (!at_end() && bytes_[pos_] != '\n' && bytes_[pos_] != '\r') ++pos_;
      } else if (std::isspace(c)) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  unsigned long read_uint(const char* what) {
    skip_whitespace_and_comments();
    const std::size_t start = pos_;
    unsigned long value = 0;
    while (!at_end() && std::isdigit(bytes_[pos_])) {
      value = value * 10 + (bytes_[pos_] - '0');
      if (value > 1'000'000'000UL) throw ParseError(std::string("pgm: ") + what + " too large", start);
      ++pos_;
    }
    if (pos_ == start) {
      if (at_end()) throw ParseError(std::string("pgm: truncated, expected ") + what, start);
      throw ParseError(std::string("pgm: expected ") + what, start);
    }
    return value;
  }

  std::uint8_t byte() { return bytes_[pos_++]; }
  std::size_t remaining() const { return bytes_.size() - pos_; }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

OccupancyGrid load_pgm(std::span<const std::uint8_t> bytes) {
  PgmReader in(bytes);
  if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '2' && bytes[1] != '5')) {
    throw ParseError("pgm: missing P2/P5 magic number", 0);
  }
  const bool binary = bytes[1] == '5';
  in.byte();
  in.byte();

  const std::size_t width_at = in.offset();
  const auto width = in.read_uint("width");
  const std::size_t height_at = in.offset();
  const auto height = in.read_uint("height");
  const std::size_t maxval_at = in.offset();
  const auto maxval = in.read_uint("maxval");
  if (width == 0) throw ParseError("pgm: zero width", width_at);
  if (height == 0) throw ParseError("pgm: zero height", height_at);
  if (maxval == 0 || maxval > 255) throw ParseError("pgm: maxval must be in 1..255", maxval_at);
  if (width * height > 100'000'000UL) throw ParseError("pgm: image too large", width_at);

  const std::size_t n = width * height;
  std::vector<std::uint8_t> free(n);
  const auto classify = [maxval](unsigned long value) -> std::uint8_t {
    return 255UL * value >= 128UL * maxval ? 1 : 0;
  };

  if (binary) {
    // Exactly one whitespace byte separates the header from the raster.
    if (in.at_end()) throw ParseError("pgm: truncated header", in.offset());
    if (!std::isspace(in.byte())) throw ParseError("pgm: expected whitespace after maxval", in.offset() - 1);
    if (in.remaining() < n) {
      throw ParseError("pgm: truncated payload, expected " + std::to_string(n) + " bytes, got " +
                           std::to_string(in.remaining()),
                       in.offset() + in.remaining());
    }
    for (std::size_t i = 0; i < n; ++i) {
      const auto at = in.offset();
      const auto v = in.byte();
      if (v > maxval) throw ParseError("pgm: pixel exceeds maxval", at);
      free[i] = classify(v);
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      in.skip_whitespace_and_comments();
      const auto at = in.offset();
      const auto v = in.read_uint("pixel value");
      if (v > maxval) throw ParseError("pgm: pixel exceeds maxval", at);
      free[i] = classify(v);
    }
  }

  try {
    return OccupancyGrid(static_cast<int>(width), static_cast<int>(height), std::move(free));
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("pgm: ") + e.what(), in.offset());
  }
}

OccupancyGrid load_pgm_file(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open map file: " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  return load_pgm(bytes);
}

std::vector<std::uint8_t> save_pgm(const OccupancyGrid& grid) {
  const std::string header =
      "P5\n" + std::to_string(grid.width()) + " " + std::to_string(grid.height()) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.reserve(out.size() + grid.mask().size());
  for (auto m : grid.mask()) out.push_back(m ? 255 : 0);
  return out;
}

void save_pgm_file(const OccupancyGrid& grid, const std::filesystem::path& path) {
  const auto bytes = save_pgm(grid);
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write map file: " + path.string());
  f.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

OccupancyGrid make_plain_grid(int size) {
  return OccupancyGrid(size, size, std::vector<std::uint8_t>(static_cast<std::size_t>(size) * size, 1));
}

bool is_free_point(const OccupancyGrid& grid, const Point& p) {
  const auto c = grid.cell_of(p);
  return c && grid.is_free(c->x, c->y);
}

namespace {

constexpr double kTouchEps = 1e-9;

// Calls visit(ix, iy) for each supercover cell, column by column; stops early
// when visit returns false. Returns false iff stopped early.
template <typename Visit>
bool for_each_supercover_cell(const OccupancyGrid& grid, const Point& a, const Point& b, Visit&& visit) {
  const double s = grid.scale();
  double ax = a.x * s, ay = a.y * s, bx = b.x * s, by = b.y * s;
  if (ax > bx) {
    std::swap(ax, bx);
    std::swap(ay, by);
  }
  const int col_lo = static_cast<int>(std::ceil(ax - kTouchEps)) - 1;
  const int col_hi = static_cast<int>(std::floor(bx + kTouchEps));
  const double dx = bx - ax;
  const bool vertical = dx <= 0.0;
  const double slope = vertical ? 0.0 : (by - ay) / dx;

  for (int col = col_lo; col <= col_hi; ++col) {
    double ylo, yhi;
    if (vertical) {
      ylo = std::min(ay, by);
      yhi = std::max(ay, by);
    } else {
      const double xs = std::clamp(static_cast<double>(col), ax, bx);
      const double xe = std::clamp(static_cast<double>(col + 1), ax, bx);
      const double y0 = xs == ax ? ay : (xs == bx ? by : ay + (xs - ax) * slope);
      const double y1 = xe == bx ? by : (xe == ax ? ay : ay + (xe - ax) * slope);
      ylo = std::min(y0, y1);
      yhi = std::max(y0, y1);
    }
    const int row_lo = static_cast<int>(std::ceil(ylo - kTouchEps)) - 1;
    const int row_hi = static_cast<int>(std::floor(yhi + kTouchEps));
    for (int row = row_lo; row <= row_hi; ++row) {
      if (!visit(col, row)) return false;
    }
  }
  return true;
}

}  // namespace

std::vector<Cell> supercover_cells(const OccupancyGrid& grid, const Point& a, const Point& b) {
  std::vector<Cell> cells;
  if (!is_finite(a) || !is_finite(b)) return cells;
  for_each_supercover_cell(grid, a, b, [&](int x, int y) {
    cells.push_back({x, y});
    return true;
  });
  return cells;
}

bool segment_free(const OccupancyGrid& grid, const Point& a, const Point& b) {
  if (!is_finite(a) || !is_finite(b)) return false;
  if (a == b) return is_free_point(grid, a);
  if (!is_free_point(grid, a) || !is_free_point(grid, b)) return false;

  const bool cover_free =
      for_each_supercover_cell(grid, a, b, [&](int x, int y) { return grid.is_free(x, y); });
  if (!cover_free) return false;

  const double len_cells = distance(a, b) * grid.scale();
  const auto samples = static_cast<long>(std::max(1.0, std::ceil(len_cells * 2.0)));
  for (long k = 1; k < samples; ++k) {
    const double t = static_cast<double>(k) / static_cast<double>(samples);
    const Point p{t * b.x + (1.0 - t) * a.x, t * b.y + (1.0 - t) * a.y};
    if (!is_free_point(grid, p)) return false;
  }
  return true;
}

OccupancyGrid resample_nearest(const OccupancyGrid& grid, int resolution) {
  if (resolution <= 0) throw std::invalid_argument("resample: resolution must be positive");
  const double ratio = resolution / grid.scale();
  const int w = std::max(1, static_cast<int>(std::lround(grid.width() * ratio)));
  const int h = std::max(1, static_cast<int>(std::lround(grid.height() * ratio)));
  const double cell = 1.0 / std::max(w, h);
  std::vector<std::uint8_t> free(static_cast<std::size_t>(w) * h);
  for (int iy = 0; iy < h; ++iy) {
    for (int ix = 0; ix < w; ++ix) {
      const Point center{(ix + 0.5) * cell, (iy + 0.5) * cell};
      free[static_cast<std::size_t>(iy) * w + ix] = is_free_point(grid, center) ? 1 : 0;
    }
  }
  return OccupancyGrid(w, h, std::move(free));
}

}  // namespace gsrm
