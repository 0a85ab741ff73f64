#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "gsrm/baselines.hpp"
#include "gsrm/bench.hpp"
#include "gsrm/gsrm.hpp"
#include "gsrm/render.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kPlannerFailure = 1;
constexpr int kUsage = 2;

// Input problems (bad files, bad coordinates) map to the usage exit code.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

gsrm::Point parse_point(const std::string& text, const char* what) {
  std::istringstream in(text);
  gsrm::Point p;
  char comma = 0;
  if (!(in >> p.x >> comma >> p.y) || comma != ',' || !(in >> std::ws).eof() || !gsrm::is_finite(p))
    throw InputError(std::string(what) + ": expected \"x,y\", got \"" + text + "\"");
  return p;
}

gsrm::OccupancyGrid load_map(const std::string& path) {
  try {
    return gsrm::load_pgm_file(path);
  } catch (const std::exception& e) {
    throw InputError(std::string("map ") + path + ": " + e.what());
  }
}

gsrm::Roadmap load_roadmap_input(const std::string& path) {
  try {
    return gsrm::load_roadmap(path);
  } catch (const std::exception& e) {
    throw InputError(std::string("roadmap ") + path + ": " + e.what());
  }
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !out.write(content.data(), static_cast<std::streamsize>(content.size())))
    throw InputError("cannot write " + path);
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct BuildArgs {
  std::string map;
  std::string builder = "gsrm";
  std::optional<std::size_t> size;
  std::optional<int> resolution;
  std::optional<double> delta;
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_build(const BuildArgs& a) {
  gsrm::Builder builder;
  try {
    builder = gsrm::parse_builder(a.builder);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  const auto grid = load_map(a.map);
  gsrm::Roadmap r;
  std::string detail;
  switch (builder) {
    case gsrm::Builder::gsrm: {
      gsrm::GsrmOptions opts;
      if (a.resolution) {
        opts.resolution = *a.resolution;
      } else if (a.size) {
        const auto cal = gsrm::calibrate_resolution(grid, *a.size, opts, a.seed);
        opts.resolution = cal.resolution;
      }
      if (opts.resolution < 1) throw InputError("--resolution must be >= 1");
      r = gsrm::build_gsrm(grid, opts, a.seed);
      detail = " resolution=" + std::to_string(opts.resolution);
      break;
    }
    case gsrm::Builder::prm: {
      const std::size_t n = a.size.value_or(300);
      double delta = 0.0;
      if (a.delta) {
        delta = *a.delta;
      } else {
        try {
          delta = gsrm::tune_prm_delta(grid, n, 3 * n, a.seed).delta;
        } catch (const gsrm::TargetUnreachable& e) {
          delta = e.closest().delta;
        }
      }
      r = gsrm::build_prm(grid, {n, delta, a.seed});
      detail = " delta=" + fmt(delta);
      break;
    }
    case gsrm::Builder::grid8:
      r = a.resolution ? gsrm::build_gridmap8_at(grid, *a.resolution) : gsrm::build_gridmap8(grid, a.size.value_or(300));
      break;
    default:
      throw InputError("builder '" + a.builder + "' cannot be built here; use gsrm, prm or grid8");
  }
  if (!a.out.empty()) {
    try {
      gsrm::save_roadmap(r, a.out);
    } catch (const std::exception& e) {
      throw InputError(e.what());
    }
  }
  char ms[32];
  std::snprintf(ms, sizeof ms, "%.3f", r.build_ms);
  std::cout << "vertices=" << r.vertex_count() << " edges=" << r.edge_count() << " build_ms=" << ms << detail
            << "\n";
  return kOk;
}

int cmd_query(const std::string& roadmap_path, const std::string& map_path, const std::string& start,
              const std::string& goal) {
  const auto grid = load_map(map_path);
  const auto r = load_roadmap_input(roadmap_path);
  const auto s = parse_point(start, "--start");
  const auto g = parse_point(goal, "--goal");
  if (r.empty()) throw InputError("roadmap " + roadmap_path + " has no vertices");
  gsrm::QueryResult res;
  try {
    res = gsrm::plan(r, grid, s, g);
  } catch (const gsrm::InvalidQuery& e) {
    throw InputError(e.what());
  }
  std::string path;
  for (std::size_t i = 0; i < res.discrete_path.size(); ++i) {
    if (i) path += ',';
    path += std::to_string(res.discrete_path[i]);
  }
  std::cout << "success=" << (res.success ? 1 : 0) << " length=" << (res.continuous_length ? fmt(*res.continuous_length) : "")
            << " visited=" << res.visited << " path=" << path;
  if (res.failure_reason) std::cout << " reason=" << gsrm::to_string(*res.failure_reason);
  std::cout << "\n";
  return res.success ? kOk : kPlannerFailure;
}

int cmd_bench(const std::string& config_path, const std::string& out, std::optional<std::size_t> pairs,
              std::optional<std::size_t> roadmaps, const std::string& summary_out) {
  gsrm::BenchConfig cfg;
  try {
    cfg = gsrm::load_bench_config(config_path);
    if (pairs) cfg.pairs_per_map = *pairs;
    if (roadmaps) cfg.roadmaps_per_config = *roadmaps;
    cfg.validate();
  } catch (const std::exception& e) {
    throw InputError(e.what());
  }
  for (const auto& m : cfg.maps) load_map(m.string());

  const auto result = gsrm::run_benchmark(cfg, [](const std::string& msg) { std::cerr << msg << "\n"; });
  write_file(out, gsrm::records_to_csv(result.records));
  const auto summary = gsrm::summarize(result.records, result.roadmaps);
  if (!summary_out.empty()) write_file(summary_out, gsrm::summaries_to_csv(summary));
  std::cerr << gsrm::summaries_to_csv(summary);
  std::cout << "records=" << result.records.size() << " roadmaps=" << result.roadmaps.size() << "\n";
  return kOk;
}

int cmd_render(const std::string& map_path, const std::string& roadmap_path, const std::optional<std::string>& start,
               const std::optional<std::string>& goal, double pixels, const std::string& out) {
  const auto grid = load_map(map_path);
  const auto r = load_roadmap_input(roadmap_path);
  gsrm::RenderStyle style;
  style.pixels = pixels;
  std::optional<gsrm::RenderPath> path;
  if (start.has_value() != goal.has_value()) throw InputError("--start and --goal must be given together");
  if (start) {
    const auto s = parse_point(*start, "--start");
    const auto g = parse_point(*goal, "--goal");
    gsrm::QueryResult res;
    try {
      res = gsrm::plan(r, grid, s, g);
    } catch (const std::invalid_argument& e) {
      throw InputError(e.what());
    }
    if (res.success) path = gsrm::RenderPath{s, res.discrete_path, g};
    std::cerr << "query " << (res.success ? "succeeded" : "failed") << "\n";
  }
  try {
    write_file(out, gsrm::render_svg(grid, r, path ? &*path : nullptr, style));
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Roadmap construction, queries and benchmarks on occupancy grid maps"};
  app.require_subcommand(1);

  BuildArgs build;
  auto* b = app.add_subcommand("build", "Build a roadmap and write it as JSON");
  b->add_option("--map", build.map, "PGM occupancy map")->required();
  b->add_option("--builder", build.builder, "gsrm, prm or grid8")->capture_default_str();
  b->add_option("--size", build.size, "Target vertex count");
  b->add_option("--resolution", build.resolution, "gsrm grid resolution l, or grid8 lattice resolution");
  b->add_option("--delta", build.delta, "prm connection radius (default: tuned to 3 edges per vertex)");
  b->add_option("--seed", build.seed, "Random seed")->capture_default_str();
  b->add_option("--out", build.out, "Output roadmap JSON");

  std::string q_roadmap, q_map, q_start, q_goal;
  auto* q = app.add_subcommand("query", "Plan between two points on a roadmap");
  q->add_option("--roadmap", q_roadmap, "Roadmap JSON")->required();
  q->add_option("--map", q_map, "PGM occupancy map")->required();
  q->add_option("--start", q_start, "Start as x,y in the unit square")->required();
  q->add_option("--goal", q_goal, "Goal as x,y in the unit square")->required();

  std::string c_config, c_out, c_summary;
  std::optional<std::size_t> c_pairs, c_roadmaps;
  auto* c = app.add_subcommand("bench", "Run a benchmark configuration and write per-query CSV");
  c->add_option("--config", c_config, "Benchmark configuration (JSON)")->required();
  c->add_option("--out", c_out, "Output CSV")->required();
  c->add_option("--pairs", c_pairs, "Override pairs_per_map");
  c->add_option("--roadmaps", c_roadmaps, "Override roadmaps_per_config");
  c->add_option("--summary", c_summary, "Also write the per-configuration summary CSV");

  std::string r_map, r_roadmap, r_out;
  std::optional<std::string> r_start, r_goal;
  double r_pixels = 600.0;
  auto* r = app.add_subcommand("render", "Render a roadmap as SVG");
  r->add_option("--map", r_map, "PGM occupancy map")->required();
  r->add_option("--roadmap", r_roadmap, "Roadmap JSON")->required();
  r->add_option("--start", r_start, "Optional query start x,y");
  r->add_option("--goal", r_goal, "Optional query goal x,y");
  r->add_option("--pixels", r_pixels, "Side length of the unit square in pixels")->capture_default_str();
  r->add_option("--out", r_out, "Output SVG")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*b) return cmd_build(build);
    if (*q) return cmd_query(q_roadmap, q_map, q_start, q_goal);
    if (*c) return cmd_bench(c_config, c_out, c_pairs, c_roadmaps, c_summary);
    if (*r) return cmd_render(r_map, r_roadmap, r_start, r_goal, r_pixels, r_out);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kPlannerFailure;
  }
  return kUsage;
}
