#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "gsrm/gray_scott.hpp"

using namespace gsrm;

namespace {

Field random_field(int w, int h, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  Field f(w, h);
  for (auto& x : f.values) x = d(rng);
  return f;
}

// 3x3 kernel [[0,1,0],[1,-4,1],[0,1,0]] applied with zero padding.
Field convolve_oracle(const Field& f) {
  static const double k[3][3] = {{0, 1, 0}, {1, -4, 1}, {0, 1, 0}};
  Field out(f.width, f.height);
  for (int y = 0; y < f.height; ++y) {
    for (int x = 0; x < f.width; ++x) {
      double acc = 0.0;
      for (int j = -1; j <= 1; ++j) {
        for (int i = -1; i <= 1; ++i) {
          const int xx = x + i, yy = y + j;
          if (xx < 0 || yy < 0 || xx >= f.width || yy >= f.height) continue;
          acc += k[j + 1][i + 1] * f.at(xx, yy);
        }
      }
      out.at(x, y) = acc;
    }
  }
  return out;
}

// One explicit update written directly from the reaction-diffusion equations.
GsState step_oracle(GsState s, const GsParams& p, const OccupancyGrid& g) {
  for (int y = 0; y < g.height(); ++y) {
    for (int x = 0; x < g.width(); ++x) {
      if (!g.is_free(x, y)) s.u.at(x, y) = s.v.at(x, y) = 0.0;
    }
  }
  const Field lu = convolve_oracle(s.u), lv = convolve_oracle(s.v);
  GsState n = s;
  for (int y = 0; y < g.height(); ++y) {
    for (int x = 0; x < g.width(); ++x) {
      if (!g.is_free(x, y)) continue;
      const double u = s.u.at(x, y), v = s.v.at(x, y);
      n.u.at(x, y) = u + p.diffusion_u * lu.at(x, y) - u * v * v + p.feed * (1 - u);
      n.v.at(x, y) = v + p.diffusion_v * lv.at(x, y) + u * v * v - (p.feed + p.kill) * v;
    }
  }
  ++n.step;
  return n;
}

OccupancyGrid square_obstacle_grid(int size, int x0, int y0, int side) {
  std::vector<std::uint8_t> free(static_cast<std::size_t>(size) * size, 1);
  for (int y = y0; y < y0 + side; ++y) {
    for (int x = x0; x < x0 + side; ++x) free[y * size + x] = 0;
  }
  return OccupancyGrid(size, size, free);
}

}  // namespace

TEST(Laplacian, MatchesConvolutionOracle) {
  std::mt19937_64 rng(1);
  const auto g = make_plain_grid(16);
  for (int trial = 0; trial < 100; ++trial) {
    const Field f = random_field(16, 16, rng);
    const Field got = laplacian(f, g);
    const Field want = convolve_oracle(f);
    for (std::size_t i = 0; i < f.values.size(); ++i) ASSERT_NEAR(got.values[i], want.values[i], 1e-12);
  }
}

TEST(Laplacian, ConstantFieldHasBoundaryLoss) {
  const auto g = make_plain_grid(4);
  const Field f(4, 4, 1.0);
  const Field l = laplacian(f, g);
  EXPECT_EQ(l.at(1, 1), 0.0);
  EXPECT_EQ(l.at(0, 1), -1.0);
  EXPECT_EQ(l.at(0, 0), -2.0);
}

TEST(Laplacian, RejectsMismatchedGrid) {
  EXPECT_THROW(laplacian(Field(3, 3), make_plain_grid(4)), std::invalid_argument);
}

TEST(Step, MatchesScalarOracle) {
  const auto g = square_obstacle_grid(20, 5, 6, 4);
  GsParams p;
  GsState s = init_state(p, g, 9);
  GsState want = s;
  for (int i = 0; i < 50; ++i) {
    s = step(s, p, g);
    want = step_oracle(want, p, g);
  }
  EXPECT_EQ(s.step, 50);
  for (std::size_t i = 0; i < s.u.values.size(); ++i) {
    ASSERT_NEAR(s.u.values[i], want.u.values[i], 1e-12);
    ASSERT_NEAR(s.v.values[i], want.v.values[i], 1e-12);
  }
}

TEST(Step, FixedPointWithoutDiffusionIsExact) {
  GsParams p;
  p.diffusion_u = p.diffusion_v = 0.0;
  const auto g = make_plain_grid(8);
  GsState s{Field(8, 8, 1.0), Field(8, 8, 0.0), 0};
  for (int i = 0; i < 1000; ++i) s = step(s, p, g);
  for (double u : s.u.values) ASSERT_EQ(u, 1.0);
  for (double v : s.v.values) ASSERT_EQ(v, 0.0);
}

TEST(Step, FixedPointHoldsOutsideBorderInfluence) {
  // The zero border drains u at the edge; the disturbance moves one cell per
  // step, so cells farther from the border than the step count stay exactly 1.
  GsParams p;
  const int n = 64;
  const auto g = make_plain_grid(n);
  GsState s{Field(n, n, 1.0), Field(n, n, 0.0), 0};
  for (int t = 1; t <= 40; ++t) {
    s = step(s, p, g);
    for (int y = 0; y < n; ++y) {
      for (int x = 0; x < n; ++x) {
        ASSERT_EQ(s.v.at(x, y), 0.0);
        const int d = std::min({x + 1, y + 1, n - x, n - y});
        if (d > t) ASSERT_EQ(s.u.at(x, y), 1.0) << x << "," << y << " step " << t;
      }
    }
  }
  EXPECT_LT(s.u.at(0, 0), 1.0);
}

TEST(Step, SingleCellMatchesHandEvaluation) {
  const OccupancyGrid g(3, 3, {0, 0, 0, 0, 1, 0, 0, 0, 0});
  GsParams p;
  GsState s{Field(3, 3, 0.5), Field(3, 3, 0.25), 0};
  const auto n = step(s, p, g);
  const double u = 0.5, v = 0.25;
  EXPECT_NEAR(n.u.at(1, 1), u + p.feed * (1 - u) - u * v * v + p.diffusion_u * (-4 * u), 1e-15);
  EXPECT_NEAR(n.v.at(1, 1), v + u * v * v - (p.feed + p.kill) * v + p.diffusion_v * (-4 * v), 1e-15);
  EXPECT_EQ(n.u.at(0, 0), 0.0);
}

TEST(Step, ObstacleCellsStayZero) {
  const auto g = square_obstacle_grid(64, 24, 24, 16);
  GsParams p;
  GsState s = init_state(p, g, 5);
  for (int i = 0; i < 200; ++i) {
    s = step(s, p, g);
    for (int y = 24; y < 40; ++y) {
      for (int x = 24; x < 40; ++x) {
        ASSERT_EQ(s.u.at(x, y), 0.0);
        ASSERT_EQ(s.v.at(x, y), 0.0);
      }
    }
  }
}

TEST(InitState, DrawsWithinBoundsAndZeroesObstacles) {
  const auto g = square_obstacle_grid(32, 0, 0, 8);
  GsParams p;
  const auto s = init_state(p, g, 2);
  for (int y = 0; y < 32; ++y) {
    for (int x = 0; x < 32; ++x) {
      if (!g.is_free(x, y)) {
        EXPECT_EQ(s.u.at(x, y), 0.0);
        EXPECT_EQ(s.v.at(x, y), 0.0);
        continue;
      }
      EXPECT_GE(s.u.at(x, y), p.u_low);
      EXPECT_LT(s.u.at(x, y), p.u_high);
      EXPECT_GE(s.v.at(x, y), p.v_low);
      EXPECT_LT(s.v.at(x, y), p.v_high);
    }
  }
  EXPECT_EQ(init_state(p, g, 2).u, s.u);
  EXPECT_NE(init_state(p, g, 3).u, s.u);
}

TEST(Simulate, EqualsRepeatedStep) {
  const auto g = square_obstacle_grid(24, 3, 3, 5);
  GsParams p;
  p.steps = 40;
  const auto sim = simulate(p, g, 11, {1, 0, {}});
  GsState s = init_state(p, g, 11);
  for (int i = 0; i < 40; ++i) s = step(s, p, g);
  EXPECT_EQ(sim.u, s.u);
  EXPECT_EQ(sim.v, s.v);
  EXPECT_EQ(sim.step, 40);
}

TEST(Simulate, WorkerCountDoesNotChangeResult) {
  const auto g = square_obstacle_grid(48, 10, 10, 12);
  GsParams p;
  p.steps = 300;
  const auto one = simulate(p, g, 4, {1, 0, {}});
  for (int workers : {2, 3, 7}) {
    const auto many = simulate(p, g, 4, {workers, 0, {}});
    EXPECT_EQ(many.u, one.u) << workers;
    EXPECT_EQ(many.v, one.v) << workers;
  }
}

TEST(Simulate, ObserverSeesRequestedSteps) {
  const auto g = make_plain_grid(10);
  GsParams p;
  p.steps = 25;
  for (int workers : {1, 2}) {
    std::vector<long> seen;
    simulate(p, g, 1, {workers, 10, [&](const GsState& s) { seen.push_back(s.step); }});
    EXPECT_EQ(seen, (std::vector<long>{0, 10, 20})) << workers;
  }
}

TEST(Simulate, ZeroStepsReturnsInitialState) {
  const auto g = make_plain_grid(6);
  GsParams p;
  p.steps = 0;
  const auto s = simulate(p, g, 8);
  EXPECT_EQ(s.u, init_state(p, g, 8).u);
  EXPECT_EQ(s.step, 0);
}

TEST(Simulate, DetectsDivergence) {
  GsParams p;
  p.diffusion_u = 5.0;  // far beyond the explicit stability limit of 0.25
  p.steps = 2000;
  const auto g = make_plain_grid(16);
  EXPECT_THROW(simulate(p, g, 1, {1, 0, {}}), SimulationDiverged);
  EXPECT_THROW(simulate(p, g, 1, {2, 0, {}}), SimulationDiverged);
}

TEST(Params, Validation) {
  GsParams p;
  EXPECT_NO_THROW(p.validate());
  p.feed = -0.1;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p = {};
  p.u_low = 1.5;
  EXPECT_THROW(p.validate(), std::invalid_argument);
}

TEST(FieldToPgm, ScalesToFullRange) {
  Field f(2, 1);
  f.values = {0.25, 0.75};
  const auto img = field_to_pgm(f);
  ASSERT_GE(img.size(), 2u);
  EXPECT_EQ(img[img.size() - 2], 0);
  EXPECT_EQ(img[img.size() - 1], 255);
}

TEST(Laplacian, UnitImpulse) {
  const auto g = make_plain_grid(5);
  Field f(5, 5);
  f.at(2, 2) = 1.0;
  const Field l = laplacian(f, g);
  EXPECT_EQ(l.at(2, 2), -4.0);
  EXPECT_EQ(l.at(1, 2), 1.0);
  EXPECT_EQ(l.at(3, 2), 1.0);
  EXPECT_EQ(l.at(2, 1), 1.0);
  EXPECT_EQ(l.at(2, 3), 1.0);
  EXPECT_EQ(l.at(1, 1), 0.0);
}

TEST(InitState, DegenerateIntervalIsConstant) {
  const auto g = square_obstacle_grid(16, 4, 4, 3);
  GsParams p;
  p.u_low = p.u_high = 1.0;
  const auto s = init_state(p, g, 1);
  for (int y = 0; y < 16; ++y) {
    for (int x = 0; x < 16; ++x) EXPECT_EQ(s.u.at(x, y), g.is_free(x, y) ? 1.0 : 0.0);
  }
}
