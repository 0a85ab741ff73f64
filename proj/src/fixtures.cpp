#include "gsrm/fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

#include "gsrm/rng.hpp"

namespace gsrm {

namespace {

constexpr int kSize = 300;

struct Canvas {
  std::vector<std::uint8_t> free = std::vector<std::uint8_t>(kSize * kSize, 0);

  void rect(int x0, int y0, int x1, int y1, bool value) {
    for (int y = std::max(0, y0); y < std::min(kSize, y1); ++y) {
      for (int x = std::max(0, x0); x < std::min(kSize, x1); ++x) free[y * kSize + x] = value ? 1 : 0;
    }
  }

  OccupancyGrid grid() const { return OccupancyGrid(kSize, kSize, free); }
};

// Keeps the largest 4-connected free component.
void keep_largest_component(std::vector<std::uint8_t>& free) {
  std::vector<int> label(free.size(), -1);
  int best = -1;
  std::size_t best_size = 0;
  int next = 0;
  for (std::size_t i = 0; i < free.size(); ++i) {
    if (!free[i] || label[i] >= 0) continue;
    std::size_t count = 0;
    std::queue<std::size_t> q;
    q.push(i);
    label[i] = next;
    while (!q.empty()) {
      const std::size_t c = q.front();
      q.pop();
      ++count;
      const int x = static_cast<int>(c % kSize), y = static_cast<int>(c / kSize);
      const int nx[] = {x - 1, x + 1, x, x};
      const int ny[] = {y, y, y - 1, y + 1};
      for (int k = 0; k < 4; ++k) {
        if (nx[k] < 0 || ny[k] < 0 || nx[k] >= kSize || ny[k] >= kSize) continue;
        const std::size_t n = static_cast<std::size_t>(ny[k]) * kSize + nx[k];
        if (free[n] && label[n] < 0) {
          label[n] = next;
          q.push(n);
        }
      }
    }
    if (count > best_size) {
      best_size = count;
      best = next;
    }
    ++next;
  }
  for (std::size_t i = 0; i < free.size(); ++i) free[i] = label[i] == best ? 1 : 0;
}

// Separable box blur with clamped borders, repeated to approximate a Gaussian.
std::vector<double> blur(std::vector<double> f, int radius, int passes) {
  std::vector<double> tmp(f.size());
  for (int p = 0; p < passes; ++p) {
    for (int pass_dir = 0; pass_dir < 2; ++pass_dir) {
      for (int a = 0; a < kSize; ++a) {
        for (int b = 0; b < kSize; ++b) {
          double sum = 0.0;
          for (int d = -radius; d <= radius; ++d) {
            const int c = std::clamp(b + d, 0, kSize - 1);
            sum += pass_dir == 0 ? f[a * kSize + c] : f[c * kSize + a];
          }
          (pass_dir == 0 ? tmp[a * kSize + b] : tmp[b * kSize + a]) = sum / (2 * radius + 1);
        }
      }
      f.swap(tmp);
    }
  }
  return f;
}

// Morphological opening with a disk: removes free passages narrower than 2 * radius.
std::vector<std::uint8_t> open_disk(const std::vector<std::uint8_t>& free, int radius) {
  std::vector<std::pair<int, int>> disk;
  for (int dy = -radius; dy <= radius; ++dy) {
    for (int dx = -radius; dx <= radius; ++dx) {
      if (dx * dx + dy * dy <= radius * radius) disk.emplace_back(dx, dy);
    }
  }
  const auto at = [&](const std::vector<std::uint8_t>& f, int x, int y) {
    return x >= 0 && y >= 0 && x < kSize && y < kSize && f[y * kSize + x];
  };
  std::vector<std::uint8_t> eroded(free.size(), 0);
  for (int y = 0; y < kSize; ++y) {
    for (int x = 0; x < kSize; ++x) {
      bool all = true;
      for (const auto& [dx, dy] : disk) {
        if (!at(free, x + dx, y + dy)) {
          all = false;
          break;
        }
      }
      eroded[y * kSize + x] = all ? 1 : 0;
    }
  }
  std::vector<std::uint8_t> opened(free.size(), 0);
  for (int y = 0; y < kSize; ++y) {
    for (int x = 0; x < kSize; ++x) {
      if (!eroded[y * kSize + x]) continue;
      for (const auto& [dx, dy] : disk) {
        const int nx = x + dx, ny = y + dy;
        if (nx >= 0 && ny >= 0 && nx < kSize && ny < kSize) opened[ny * kSize + nx] = 1;
      }
    }
  }
  return opened;
}

}  // namespace

OccupancyGrid make_plain_map() { return make_plain_grid(kSize); }

OccupancyGrid make_rooms_map() {
  Canvas c;
  constexpr int w = 26;
  c.rect(20, 20, 120, 115, true);    // upper left
  c.rect(180, 20, 280, 115, true);   // upper right
  c.rect(20, 175, 120, 280, true);   // lower left
  c.rect(180, 175, 280, 280, true);  // lower right
  c.rect(120, 55, 180, 55 + w, true);
  c.rect(57, 115, 57 + w, 175, true);
  c.rect(217, 115, 217 + w, 175, true);
  // Upper half annulus from the lower left room to the lower right one.
  constexpr double cx = 150.0, cy = 222.0, r_in = 45.0, r_out = r_in + w;
  for (int y = 0; y < kSize; ++y) {
    for (int x = 0; x < kSize; ++x) {
      const double dx = x + 0.5 - cx, dy = y + 0.5 - cy;
      const double r = std::hypot(dx, dy);
      if (dy <= 0.0 && r >= r_in && r <= r_out) c.free[y * kSize + x] = 1;
    }
  }
  return c.grid();
}

OccupancyGrid make_den_map(std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> noise(kSize * kSize);
  for (auto& v : noise) v = rng.uniform();
  const auto smooth = blur(std::move(noise), 9, 3);
  std::vector<double> sorted = smooth;
  std::sort(sorted.begin(), sorted.end());
  const double threshold = sorted[sorted.size() * 32 / 100];
  std::vector<std::uint8_t> free(smooth.size());
  for (std::size_t i = 0; i < smooth.size(); ++i) {
    const int x = static_cast<int>(i % kSize), y = static_cast<int>(i / kSize);
    const bool border = x < 4 || y < 4 || x >= kSize - 4 || y >= kSize - 4;
    free[i] = !border && smooth[i] > threshold ? 1 : 0;
  }
  free = open_disk(free, 12);
  keep_largest_component(free);
  return OccupancyGrid(kSize, kSize, std::move(free));
}

OccupancyGrid make_slam_map(std::uint64_t seed) {
  Canvas c;
  constexpr int x0 = 36, x1 = 264, y0 = 52, y1 = 248, t = 4;
  c.rect(x0, y0, x1, y1, true);
  // Outer walls.
  c.rect(x0, y0, x1, y0 + t, false);
  c.rect(x0, y1 - t, x1, y1, false);
  c.rect(x0, y0, x0 + t, y1, false);
  c.rect(x1 - t, y0, x1, y1, false);
  // Interior walls with doors: open living area on the left, kitchen top right,
  // two bedrooms bottom right.
  c.rect(160, y0, 160 + t, y1, false);
  c.rect(160, 136, x1, 136 + t, false);
  c.rect(212, 136, 212 + t, y1, false);
  c.rect(160, 84, 160 + t, 116, true);
  c.rect(160, 176, 160 + t, 206, true);
  c.rect(176, 136, 204, 136 + t, true);
  c.rect(226, 136, 254, 136 + t, true);
  // Furniture.
  c.rect(40, 56, 92, 74, false);      // counter
  c.rect(84, 136, 124, 166, false);   // sofa table
  c.rect(226, 56, 260, 96, false);    // fridge and shelves
  c.rect(164, 212, 192, 244, false);  // bed
  c.rect(216, 206, 240, 244, false);  // bed

  // Sensor noise: ragged obstacle boundaries.
  Rng rng(seed);
  auto noisy = c.free;
  for (int y = 1; y < kSize - 1; ++y) {
    for (int x = 1; x < kSize - 1; ++x) {
      const int i = y * kSize + x;
      if (!c.free[i]) continue;
      const bool edge = !c.free[i - 1] || !c.free[i + 1] || !c.free[i - kSize] || !c.free[i + kSize];
      if (edge && rng.uniform() < 0.2) noisy[i] = 0;
    }
  }
  keep_largest_component(noisy);
  return OccupancyGrid(kSize, kSize, std::move(noisy));
}

}  // namespace gsrm
