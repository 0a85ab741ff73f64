#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "gsrm/gray_scott.hpp"
#include "gsrm/map_io.hpp"
#include "gsrm/roadmap.hpp"

namespace gsrm {

/// Roadmap files produced elsewhere (e.g. spars2, orm) benchmarked on a configured map.
struct ExternalRoadmaps {
  std::string map;  // map name (file stem) from BenchConfig::maps
  Builder builder = Builder::spars2;
  std::size_t size = 0;
  std::vector<std::filesystem::path> files;
};

struct BenchConfig {
  std::vector<std::filesystem::path> maps;
  std::vector<Builder> builders{Builder::gsrm, Builder::prm, Builder::grid8};
  /// Target vertex counts. GSRM reaches them by calibrating the grid resolution.
  std::vector<std::size_t> sizes{100, 200, 300, 500, 1000, 2000};
  std::size_t roadmaps_per_config = 10;
  std::size_t pairs_per_map = 100;
  std::uint64_t master_seed = 0;

  GsParams gs_params;
  /// Relative tolerance for GSRM resolution calibration.
  double calibration_tolerance = 0.10;
  /// PRM edge target per vertex when no GSRM roadmap is available to match.
  double prm_edges_per_vertex = 3.0;
  std::vector<ExternalRoadmaps> external;

  /// Throws std::invalid_argument when a count is zero or a list is empty.
  void validate() const;
};

/// JSON with BenchConfig field names; relative paths resolve against the file's directory.
BenchConfig load_bench_config(const std::filesystem::path& path);
BenchConfig parse_bench_config(std::string_view json, const std::filesystem::path& base_dir = {});

struct BenchRecord {
  std::string map;
  Builder builder = Builder::gsrm;
  std::size_t size = 0;
  std::uint64_t roadmap_seed = 0;
  std::size_t query_id = 0;
  bool success = false;
  std::optional<double> path_length;  // present iff success
  std::size_t visited = 0;
  double build_ms = 0.0;
  /// Repetition index within (map, builder, size); pairs roadmaps for regret. Not written to CSV.
  std::size_t repetition = 0;
};

/// One built (or failed) roadmap.
struct BenchRoadmap {
  std::string map;
  Builder builder = Builder::gsrm;
  std::size_t size = 0;
  std::size_t repetition = 0;
  std::uint64_t seed = 0;
  std::size_t vertices = 0;
  std::size_t edges = 0;
  double build_ms = 0.0;
  std::optional<std::string> error;
};

struct BenchResult {
  std::vector<BenchRecord> records;
  std::vector<BenchRoadmap> roadmaps;
};

using QueryPair = std::pair<Point, Point>;

/// `count` start/goal pairs, each point uniform over free space.
std::vector<QueryPair> sample_query_pairs(const OccupancyGrid& grid, std::size_t count, std::uint64_t seed);

/// (pl_other - pl_gsrm) / pl_other; positive when the GSRM path is shorter.
/// Throws std::invalid_argument when pl_other <= 0.
double regret(double pl_other, double pl_gsrm);

/// Deterministic per-roadmap seed, independent of run order.
std::uint64_t derive_seed(std::uint64_t master, const std::string& map, std::string_view builder, std::size_t size,
                          std::size_t repetition);

using ProgressFn = std::function<void(const std::string&)>;

/// Builds every (map, builder, size, repetition) roadmap and runs the map's
/// shared query pairs through plan. Builder failures become zero-success
/// rows. Records come back sorted by the CSV column order.
BenchResult run_benchmark(const BenchConfig& cfg, const ProgressFn& progress = {});

struct BenchSummary {
  std::string map;
  Builder builder = Builder::gsrm;
  std::size_t size = 0;
  std::size_t queries = 0;
  double success_rate = 0.0;
  std::optional<double> mean_length;    // over successful queries
  std::optional<double> stddev_length;  // population standard deviation
  std::optional<double> mean_regret;    // vs GSRM, over queries successful on both
  std::size_t regret_pairs = 0;
  std::optional<double> mean_visited;   // over successful queries
  double mean_build_ms = 0.0;
  std::optional<double> mean_vertices;  // from BenchRoadmap rows when given
  std::optional<double> mean_edges;
};

/// Aggregates per (map, builder, size), sorted by that key.
std::vector<BenchSummary> summarize(const std::vector<BenchRecord>& records,
                                    const std::vector<BenchRoadmap>& roadmaps = {});

/// Header: map,builder,size,roadmap_seed,query_id,success,path_length,visited,build_ms.
std::string records_to_csv(const std::vector<BenchRecord>& records);
std::string summaries_to_csv(const std::vector<BenchSummary>& summaries);

}  // namespace gsrm
