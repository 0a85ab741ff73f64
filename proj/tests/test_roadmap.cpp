#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <limits>
#include <queue>
#include <random>

#include "gsrm/roadmap.hpp"

using namespace gsrm;

namespace {

struct DijkstraResult {
  double cost = std::numeric_limits<double>::infinity();
  std::size_t visited = 0;
};

// Textbook Dijkstra with lazy deletion; visited counts settled vertices up to and including the goal.
DijkstraResult dijkstra(const Roadmap& r, int s, int g) {
  const int n = static_cast<int>(r.vertex_count());
  std::vector<double> dist(n, std::numeric_limits<double>::infinity());
  std::vector<bool> done(n, false);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  dist[s] = 0.0;
  pq.push({0.0, s});
  DijkstraResult out;
  while (!pq.empty()) {
    const auto [d, v] = pq.top();
    pq.pop();
    if (done[v]) continue;
    done[v] = true;
    ++out.visited;
    if (v == g) {
      out.cost = d;
      return out;
    }
    for (const auto& nb : r.neighbors(v)) {
      if (d + nb.weight < dist[nb.vertex]) {
        dist[nb.vertex] = d + nb.weight;
        pq.push({dist[nb.vertex], nb.vertex});
      }
    }
  }
  return out;
}

Roadmap random_roadmap(int n, double radius, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Point> v(n);
  for (auto& p : v) p = {u(rng), u(rng)};
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (distance(v[i], v[j]) <= radius) e.emplace_back(i, j);
    }
  }
  return Roadmap(v, e);
}

OccupancyGrid wall_grid() {
  // 10x10 with a full-height wall at column 5.
  std::vector<std::uint8_t> free(100, 1);
  for (int y = 0; y < 10; ++y) free[y * 10 + 5] = 0;
  return OccupancyGrid(10, 10, free);
}

}  // namespace

TEST(Builder, TagsRoundTrip) {
  for (auto b : {Builder::gsrm, Builder::prm, Builder::grid8, Builder::spars2, Builder::orm}) {
    EXPECT_EQ(parse_builder(to_string(b)), b);
  }
  EXPECT_THROW(parse_builder("rrt"), std::invalid_argument);
}

TEST(Roadmap, ValidatesEdges) {
  const std::vector<Point> v{{0, 0}, {1, 0}, {0, 1}};
  EXPECT_THROW(Roadmap(v, {{0, 3}}), std::invalid_argument);
  EXPECT_THROW(Roadmap(v, {{1, 1}}), std::invalid_argument);
  EXPECT_THROW(Roadmap(v, {{0, 1}, {1, 0}}), std::invalid_argument);
  const Roadmap r(v, {{2, 0}, {0, 1}});
  EXPECT_EQ(r.edge_count(), 2u);
  EXPECT_EQ(r.edges(), (std::vector<std::pair<int, int>>{{0, 1}, {0, 2}}));
  ASSERT_EQ(r.neighbors(0).size(), 2u);
  EXPECT_DOUBLE_EQ(r.neighbors(1)[0].weight, 1.0);
}

TEST(NearestVertex, FirstMinimumWins) {
  const Roadmap r({{0.2, 0.5}, {0.8, 0.5}, {0.2, 0.5}}, {});
  EXPECT_EQ(nearest_vertex(r, {0.5, 0.5}), 0);
  EXPECT_EQ(nearest_vertex(r, {0.7, 0.1}), 1);
  EXPECT_THROW(nearest_vertex(Roadmap(), {0.5, 0.5}), EmptyRoadmap);
}

TEST(AStar, MatchesDijkstraOnRandomRoadmaps) {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<int> size(2, 200);
  int connected = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = size(rng);
    const auto r = random_roadmap(n, 1.6 / std::sqrt(static_cast<double>(n)), rng);
    std::uniform_int_distribution<int> pick(0, n - 1);
    const int s = pick(rng), g = pick(rng);
    const auto a = astar(r, s, g);
    const auto d = dijkstra(r, s, g);
    if (!std::isfinite(d.cost)) {
      EXPECT_FALSE(a.path);
      continue;
    }
    ++connected;
    ASSERT_TRUE(a.path);
    EXPECT_EQ(a.path->front(), s);
    EXPECT_EQ(a.path->back(), g);
    EXPECT_EQ(path_length(r, *a.path), d.cost) << "trial " << trial;
    EXPECT_LE(a.visited, d.visited) << "trial " << trial;
  }
  EXPECT_GT(connected, 50);
}

TEST(AStar, StartEqualsGoal) {
  const Roadmap r({{0.1, 0.1}, {0.2, 0.2}}, {{0, 1}});
  const auto a = astar(r, 1, 1);
  ASSERT_TRUE(a.path);
  EXPECT_EQ(*a.path, std::vector<int>{1});
  EXPECT_EQ(a.visited, 1u);
}

TEST(AStar, RejectsBadIndices) {
  const Roadmap r({{0.1, 0.1}}, {});
  EXPECT_THROW(astar(r, 0, 1), std::out_of_range);
}

TEST(Plan, LengthDecomposesIntoStubsAndGraphPath) {
  const auto g = make_plain_grid(20);
  std::mt19937_64 rng(4);
  const auto r = random_roadmap(60, 0.25, rng);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const Point s{u(rng), u(rng)}, goal{u(rng), u(rng)};
    const auto q = plan(r, g, s, goal);
    if (!q.success) continue;
    const int vs = nearest_vertex(r, s), vg = nearest_vertex(r, goal);
    EXPECT_EQ(q.discrete_path.front(), vs);
    EXPECT_EQ(q.discrete_path.back(), vg);
    const double want = path_length(r, q.discrete_path) + distance(s, r.vertices()[vs]) +
                        distance(r.vertices()[vg], goal);
    EXPECT_NEAR(*q.continuous_length, want, 1e-12);
  }
}

TEST(Plan, StartEqualsGoalOnVertex) {
  const Roadmap r({{0.25, 0.25}, {0.75, 0.75}}, {{0, 1}});
  const auto q = plan(r, make_plain_grid(8), {0.25, 0.25}, {0.25, 0.25});
  EXPECT_TRUE(q.success);
  EXPECT_EQ(*q.continuous_length, 0.0);
  EXPECT_EQ(q.discrete_path, std::vector<int>{0});
}

TEST(Plan, ReportsFailureReasons) {
  const auto g = wall_grid();
  // Two vertices on each side, no edge across the wall.
  const Roadmap r({{0.2, 0.2}, {0.2, 0.8}, {0.8, 0.2}, {0.8, 0.8}}, {{0, 1}, {2, 3}});

  const auto across = plan(r, g, {0.25, 0.25}, {0.75, 0.75});
  EXPECT_FALSE(across.success);
  EXPECT_EQ(across.failure_reason, FailureReason::no_graph_path);
  EXPECT_FALSE(across.continuous_length);

  // Only left-side vertices: a start on the right must cross the wall to reach one.
  const Roadmap left({{0.2, 0.2}, {0.2, 0.8}}, {{0, 1}});
  const auto start_blocked = plan(left, g, {0.8, 0.5}, {0.2, 0.7});
  EXPECT_EQ(start_blocked.failure_reason, FailureReason::start_segment_blocked);
  const auto goal_blocked = plan(left, g, {0.2, 0.7}, {0.8, 0.5});
  EXPECT_EQ(goal_blocked.failure_reason, FailureReason::goal_segment_blocked);

  EXPECT_EQ(to_string(FailureReason::no_graph_path), "no-graph-path");
  EXPECT_THROW(plan(r, g, {0.55, 0.5}, {0.2, 0.2}), InvalidQuery);
  EXPECT_THROW(plan(r, g, {0.2, 0.2}, {1.5, 0.2}), InvalidQuery);
}

TEST(RoadmapJson, RoundTripsBitwise) {
  std::mt19937_64 rng(8);
  auto r = random_roadmap(50, 0.3, rng);
  r.builder = Builder::prm;
  r.seed = 0xfedcba9876543210ULL;
  const auto back = roadmap_from_json(to_json(r));
  EXPECT_EQ(back.vertices(), r.vertices());
  EXPECT_EQ(back.edges(), r.edges());
  EXPECT_EQ(back.builder, Builder::prm);
  EXPECT_EQ(back.seed, r.seed);
  EXPECT_EQ(to_json(back), to_json(r));

  const auto path = std::filesystem::temp_directory_path() / "gsrm_roadmap.json";
  save_roadmap(r, path);
  EXPECT_EQ(load_roadmap(path).vertices(), r.vertices());
  std::filesystem::remove(path);
}

TEST(RoadmapJson, RejectsMalformedInput) {
  EXPECT_THROW(roadmap_from_json("{"), std::invalid_argument);
  EXPECT_THROW(roadmap_from_json(R"({"builder":"gsrm","seed":0,"vertices":[[0,0]],"edges":[[0,1]]})"),
               std::invalid_argument);
  EXPECT_THROW(roadmap_from_json(R"({"builder":"x","seed":0,"vertices":[],"edges":[]})"), std::invalid_argument);
}

TEST(NearestVertex, MatchesLinearScan) {
  std::mt19937_64 rng(30);
  const auto r = random_roadmap(150, 0.0, rng);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    const Point p{u(rng), u(rng)};
    int best = 0;
    for (int v = 1; v < 150; ++v) {
      if (distance(p, r.vertices()[v]) < distance(p, r.vertices()[best])) best = v;
    }
    ASSERT_EQ(nearest_vertex(r, p), best);
  }
  EXPECT_EQ(nearest_vertex(r, r.vertices()[77]), 77);
}

TEST(AStar, SingleEdgeAndDisconnected) {
  const Roadmap r({{0.1, 0.1}, {0.4, 0.5}, {0.9, 0.9}}, {{0, 1}});
  const auto a = astar(r, 0, 1);
  ASSERT_TRUE(a.path);
  EXPECT_EQ(path_length(r, *a.path), 0.5);
  EXPECT_LE(a.visited, 2u);
  EXPECT_FALSE(astar(r, 0, 2).path);
}

TEST(Plan, StartEqualsGoalOffVertex) {
  const Roadmap r({{0.25, 0.25}, {0.75, 0.75}}, {{0, 1}});
  const Point s{0.3, 0.2};
  const auto q = plan(r, make_plain_grid(8), s, s);
  EXPECT_TRUE(q.success);
  EXPECT_EQ(q.discrete_path, std::vector<int>{0});
  EXPECT_NEAR(*q.continuous_length, 2.0 * distance(s, r.vertices()[0]), 1e-15);
}

TEST(Plan, AdjacentVerticesGiveEdgeWeight) {
  const Roadmap r({{0.2, 0.2}, {0.5, 0.6}}, {{0, 1}});
  const auto q = plan(r, make_plain_grid(8), {0.2, 0.2}, {0.5, 0.6});
  EXPECT_TRUE(q.success);
  EXPECT_EQ(*q.continuous_length, r.neighbors(0)[0].weight);
  EXPECT_NEAR(*q.continuous_length, 0.5, 1e-15);
}
