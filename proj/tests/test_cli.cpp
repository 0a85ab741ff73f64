#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gsrm/baselines.hpp"
#include "gsrm/fixtures.hpp"
#include "gsrm/gsrm.hpp"

using namespace gsrm;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " GSRM_CLI " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) throw std::runtime_error("popen failed");
  std::array<char, 4096> buf;
  while (std::size_t n = fread(buf.data(), 1, buf.size(), p)) r.out.append(buf.data(), n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("gsrm_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
    std::vector<std::uint8_t> free(60 * 60, 1);
    for (int y = 0; y < 60; ++y) free[y * 60 + 30] = 0;
    wall_ = OccupancyGrid(60, 60, free);
    save_pgm_file(wall_, path("wall.pgm"));
    save_pgm_file(make_plain_grid(100), path("plain.pgm"));
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
  OccupancyGrid wall_ = make_plain_grid(1);
};

}  // namespace

TEST_F(Cli, BuildGrid8MatchesLibrary) {
  const auto r = run("build --map " + path("plain.pgm") + " --builder grid8 --size 289 --out " + path("g.json"));
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("vertices=289 edges=1056 build_ms=", 0), 0u) << r.out;
  EXPECT_EQ(slurp(path("g.json")), to_json(build_gridmap8(make_plain_grid(100), 289)));
}

TEST_F(Cli, BuildPrmWithDeltaMatchesLibrary) {
  const auto r =
      run("build --map " + path("wall.pgm") + " --builder prm --size 50 --delta 0.25 --seed 9 --out " + path("p.json"));
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(slurp(path("p.json")), to_json(build_prm(wall_, {50, 0.25, 9})));
}

TEST_F(Cli, BuildGsrmIsReproducible) {
  const std::string args = "build --map " + path("wall.pgm") + " --builder gsrm --resolution 60 --seed 4 --out ";
  ASSERT_EQ(run(args + path("a.json")).code, 0);
  ASSERT_EQ(run(args + path("b.json"), "GSRM_WORKERS=3").code, 0);
  EXPECT_EQ(slurp(path("a.json")), slurp(path("b.json")));
  GsrmOptions opts;
  opts.resolution = 60;
  EXPECT_EQ(slurp(path("a.json")), to_json(build_gsrm(wall_, opts, 4)));
}

TEST_F(Cli, QueryReportsSuccessAndFailure) {
  const Roadmap left({{0.2, 0.2}, {0.2, 0.8}}, {{0, 1}});
  save_roadmap(left, path("left.json"));
  const std::string base = "query --roadmap " + path("left.json") + " --map " + path("wall.pgm");
  const auto ok = run(base + " --start 0.1,0.1 --goal 0.1,0.9");
  EXPECT_EQ(ok.code, 0);
  const auto want = plan(left, wall_, {0.1, 0.1}, {0.1, 0.9});
  char len[64];
  std::snprintf(len, sizeof len, "%.17g", *want.continuous_length);
  EXPECT_EQ(ok.out, "success=1 length=" + std::string(len) + " visited=" + std::to_string(want.visited) +
                        " path=0,1\n");

  const auto blocked = run(base + " --start 0.1,0.1 --goal 0.9,0.5");
  EXPECT_EQ(blocked.code, 1);
  EXPECT_NE(blocked.out.find("reason=goal-segment-blocked"), std::string::npos) << blocked.out;
}

TEST_F(Cli, UsageAndInputErrorsExitWithTwo) {
  const std::string map = " --map " + path("wall.pgm");
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("build --builder gsrm").code, 2);
  EXPECT_EQ(run("build" + map + " --builder rrt").code, 2);
  EXPECT_EQ(run("build" + map + " --builder spars2").code, 2);
  EXPECT_EQ(run("build --map " + path("missing.pgm") + " --builder grid8").code, 2);
  EXPECT_EQ(run("build" + map + " --builder grid8 --size abc").code, 2);

  save_roadmap(Roadmap({{0.2, 0.2}}, {}), path("one.json"));
  const std::string q = "query --roadmap " + path("one.json") + map;
  EXPECT_EQ(run(q + " --start 0.1 --goal 0.2,0.2").code, 2);
  EXPECT_EQ(run(q + " --start 0.5,0.5 --goal 0.2,0.2").code, 2);  // start inside the wall
  EXPECT_EQ(run("query --roadmap " + path("missing.json") + map + " --start 0.1,0.1 --goal 0.2,0.2").code, 2);

  std::ofstream(path("bad.json")) << R"({"maps": ["wall.pgm"], "sizes": []})";
  EXPECT_EQ(run("bench --config " + path("bad.json") + " --out " + path("o.csv")).code, 2);
  std::ofstream(path("nomap.json")) << R"({"maps": ["nope.pgm"]})";
  EXPECT_EQ(run("bench --config " + path("nomap.json") + " --out " + path("o.csv")).code, 2);
}

TEST_F(Cli, BenchWritesCsvAndIsWorkerInvariant) {
  std::ofstream(path("cfg.json")) << R"({"maps": ["wall.pgm"], "sizes": [20], "roadmaps_per_config": 5,
    "pairs_per_map": 50, "master_seed": 2, "calibration_tolerance": 0.5, "gray_scott": {"steps": 1500}})";
  const std::string args = "bench --config " + path("cfg.json") + " --roadmaps 2 --pairs 4";
  const auto one = run(args + " --out " + path("one.csv") + " --summary " + path("sum.csv"));
  ASSERT_EQ(one.code, 0);
  EXPECT_EQ(one.out, "records=24 roadmaps=6\n");
  ASSERT_EQ(run(args + " --out " + path("two.csv"), "GSRM_WORKERS=2").code, 0);

  // Compare everything but the trailing build_ms column.
  const auto strip = [](const std::string& csv) {
    std::istringstream in(csv);
    std::string line, out;
    while (std::getline(in, line)) out += line.substr(0, line.rfind(',')) + "\n";
    return out;
  };
  const auto a = slurp(path("one.csv"));
  EXPECT_EQ(a.substr(0, a.find('\n')), "map,builder,size,roadmap_seed,query_id,success,path_length,visited,build_ms");
  EXPECT_EQ(strip(a), strip(slurp(path("two.csv"))));
  EXPECT_TRUE(fs::exists(path("sum.csv")));
}

TEST_F(Cli, RenderWritesSvg) {
  save_roadmap(Roadmap({{0.2, 0.2}, {0.2, 0.8}}, {{0, 1}}), path("r.json"));
  const std::string base = "render --map " + path("wall.pgm") + " --roadmap " + path("r.json");
  EXPECT_EQ(run(base + " --out " + path("r.svg") + " --start 0.1,0.1 --goal 0.1,0.9").code, 0);
  const auto svg = slurp(path("r.svg"));
  EXPECT_NE(svg.find("<polyline"), std::string::npos);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
  EXPECT_EQ(run(base + " --out " + path("r2.svg") + " --start 0.1,0.1").code, 2);
  EXPECT_EQ(run(base + " --out " + path("r3.svg") + " --pixels 0").code, 2);
}
