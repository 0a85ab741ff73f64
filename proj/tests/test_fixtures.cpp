#include <gtest/gtest.h>

#include <filesystem>
#include <queue>

#include "gsrm/fixtures.hpp"

using namespace gsrm;

namespace {

std::size_t largest_component(const OccupancyGrid& g) {
  std::vector<bool> seen(static_cast<std::size_t>(g.width()) * g.height(), false);
  std::size_t best = 0;
  for (int y = 0; y < g.height(); ++y) {
    for (int x = 0; x < g.width(); ++x) {
      if (!g.is_free(x, y) || seen[y * g.width() + x]) continue;
      std::size_t size = 0;
      std::queue<Cell> q;
      q.push({x, y});
      seen[y * g.width() + x] = true;
      while (!q.empty()) {
        const Cell c = q.front();
        q.pop();
        ++size;
        const int nx[] = {c.x - 1, c.x + 1, c.x, c.x};
        const int ny[] = {c.y, c.y, c.y - 1, c.y + 1};
        for (int k = 0; k < 4; ++k) {
          if (!g.is_free(nx[k], ny[k]) || seen[ny[k] * g.width() + nx[k]]) continue;
          seen[ny[k] * g.width() + nx[k]] = true;
          q.push({nx[k], ny[k]});
        }
      }
      best = std::max(best, size);
    }
  }
  return best;
}

double free_fraction(const OccupancyGrid& g) {
  return static_cast<double>(g.free_count()) / (static_cast<double>(g.width()) * g.height());
}

}  // namespace

TEST(Fixtures, AreSquareConnectedAndDeterministic) {
  const std::vector<std::pair<const char*, OccupancyGrid>> maps{
      {"plain", make_plain_map()}, {"rooms", make_rooms_map()}, {"den", make_den_map()}, {"slam", make_slam_map()}};
  for (const auto& [name, g] : maps) {
    EXPECT_EQ(g.width(), 300) << name;
    EXPECT_EQ(g.height(), 300) << name;
    EXPECT_EQ(largest_component(g), g.free_count()) << name;
  }
  EXPECT_EQ(free_fraction(maps[0].second), 1.0);
  for (std::size_t i = 1; i < maps.size(); ++i) {
    EXPECT_GT(free_fraction(maps[i].second), 0.2) << maps[i].first;
    EXPECT_LT(free_fraction(maps[i].second), 0.8) << maps[i].first;
  }
  EXPECT_EQ(make_den_map().mask(), maps[2].second.mask());
  EXPECT_EQ(make_slam_map().mask(), maps[3].second.mask());
  EXPECT_NE(make_den_map(8).mask(), maps[2].second.mask());
}

TEST(Fixtures, ShippedMapsMatchGenerators) {
  const std::filesystem::path dir = GSRM_DATA_DIR "/maps";
  EXPECT_EQ(load_pgm_file(dir / "plain.pgm").mask(), make_plain_map().mask());
  EXPECT_EQ(load_pgm_file(dir / "rooms.pgm").mask(), make_rooms_map().mask());
  EXPECT_EQ(load_pgm_file(dir / "den.pgm").mask(), make_den_map().mask());
  EXPECT_EQ(load_pgm_file(dir / "slam.pgm").mask(), make_slam_map().mask());
}
