#include "gsrm/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>
#include <tuple>

#include <json.hpp>

#include "gsrm/baselines.hpp"
#include "gsrm/gsrm.hpp"
#include "gsrm/rng.hpp"

namespace gsrm {

namespace {

using Clock = std::chrono::steady_clock;
using nlohmann::json;

double elapsed_ms(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::string fmt_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_ms(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string fmt_opt(const std::optional<double>& v) { return v ? fmt_real(*v) : std::string(); }

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  std::filesystem::path path(p);
  return path.is_absolute() || base.empty() ? path : base / path;
}

// Runs fn(0..n-1) on up to `workers` threads.
template <typename Fn>
void parallel_for(std::size_t n, int workers, Fn&& fn) {
  const auto threads = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(1, workers)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

struct MapEntry {
  std::string name;
  OccupancyGrid grid;
  std::vector<QueryPair> pairs;
};

struct Job {
  const MapEntry* map = nullptr;
  Builder builder = Builder::gsrm;
  std::size_t size = 0;
  std::size_t repetition = 0;
  std::uint64_t seed = 0;
  std::optional<std::filesystem::path> file;  // external roadmap
};

struct JobOutcome {
  BenchRoadmap info;
  std::vector<BenchRecord> records;
};

JobOutcome run_queries(const Job& job, const std::optional<Roadmap>& roadmap, double build_ms,
                       std::optional<std::string> error) {
  JobOutcome out;
  out.info = {job.map->name, job.builder, job.size, job.repetition, job.seed, 0, 0, build_ms, std::move(error)};
  if (roadmap) {
    out.info.vertices = roadmap->vertex_count();
    out.info.edges = roadmap->edge_count();
  }
  const auto& pairs = job.map->pairs;
  out.records.reserve(pairs.size());
  for (std::size_t q = 0; q < pairs.size(); ++q) {
    BenchRecord rec{job.map->name, job.builder, job.size, job.seed, q, false, std::nullopt, 0, build_ms,
                    job.repetition};
    if (roadmap && !roadmap->empty()) {
      const auto res = plan(*roadmap, job.map->grid, pairs[q].first, pairs[q].second);
      rec.success = res.success;
      rec.path_length = res.continuous_length;
      rec.visited = res.visited;
    }
    out.records.push_back(std::move(rec));
  }
  return out;
}

auto record_key(const BenchRecord& r) {
  return std::make_tuple(std::cref(r.map), to_string(r.builder), r.size, r.roadmap_seed, r.query_id);
}

}  // namespace

void BenchConfig::validate() const {
  if (maps.empty()) throw std::invalid_argument("bench config: maps must be non-empty");
  if (builders.empty() && external.empty()) throw std::invalid_argument("bench config: builders must be non-empty");
  if (sizes.empty()) throw std::invalid_argument("bench config: sizes must be non-empty");
  if (std::find(sizes.begin(), sizes.end(), 0u) != sizes.end())
    throw std::invalid_argument("bench config: sizes must be >= 1");
  if (roadmaps_per_config < 1) throw std::invalid_argument("bench config: roadmaps_per_config must be >= 1");
  if (pairs_per_map < 1) throw std::invalid_argument("bench config: pairs_per_map must be >= 1");
  for (auto b : builders) {
    if (b != Builder::gsrm && b != Builder::prm && b != Builder::grid8)
      throw std::invalid_argument("bench config: builder '" + std::string(to_string(b)) +
                                  "' is only available through external roadmaps");
  }
  if (!(calibration_tolerance > 0.0)) throw std::invalid_argument("bench config: calibration_tolerance must be > 0");
  if (!(prm_edges_per_vertex >= 0.0)) throw std::invalid_argument("bench config: prm_edges_per_vertex must be >= 0");
  gs_params.validate();
}

BenchConfig parse_bench_config(std::string_view text, const std::filesystem::path& base_dir) {
  json j;
  try {
    j = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("bench config: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("bench config: top level must be an object");
  BenchConfig cfg;
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "maps") {
        cfg.maps.clear();
        for (const auto& m : value) cfg.maps.push_back(resolve(base_dir, m.get<std::string>()));
      } else if (key == "builders") {
        cfg.builders.clear();
        for (const auto& b : value) cfg.builders.push_back(parse_builder(b.get<std::string>()));
      } else if (key == "sizes") {
        cfg.sizes = value.get<std::vector<std::size_t>>();
      } else if (key == "roadmaps_per_config") {
        cfg.roadmaps_per_config = value.get<std::size_t>();
      } else if (key == "pairs_per_map") {
        cfg.pairs_per_map = value.get<std::size_t>();
      } else if (key == "master_seed") {
        cfg.master_seed = value.get<std::uint64_t>();
      } else if (key == "calibration_tolerance") {
        cfg.calibration_tolerance = value.get<double>();
      } else if (key == "prm_edges_per_vertex") {
        cfg.prm_edges_per_vertex = value.get<double>();
      } else if (key == "gray_scott") {
        auto& p = cfg.gs_params;
        p.feed = value.value("feed", p.feed);
        p.kill = value.value("kill", p.kill);
        p.diffusion_u = value.value("diffusion_u", p.diffusion_u);
        p.diffusion_v = value.value("diffusion_v", p.diffusion_v);
        p.steps = value.value("steps", p.steps);
      } else if (key == "external_roadmaps") {
        for (const auto& e : value) {
          ExternalRoadmaps ext;
          ext.map = e.at("map").get<std::string>();
          ext.builder = parse_builder(e.at("builder").get<std::string>());
          ext.size = e.at("size").get<std::size_t>();
          for (const auto& f : e.at("files")) ext.files.push_back(resolve(base_dir, f.get<std::string>()));
          cfg.external.push_back(std::move(ext));
        }
      } else {
        throw std::invalid_argument("bench config: unknown field '" + key + "'");
      }
    }
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("bench config: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

BenchConfig load_bench_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open bench config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_bench_config(ss.str(), path.parent_path());
}

std::vector<QueryPair> sample_query_pairs(const OccupancyGrid& grid, std::size_t count, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<QueryPair> pairs;
  pairs.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const Point s = sample_free_point(grid, rng);
    const Point g = sample_free_point(grid, rng);
    pairs.emplace_back(s, g);
  }
  return pairs;
}

double regret(double pl_other, double pl_gsrm) {
  if (!(pl_other > 0.0)) throw std::invalid_argument("regret: reference path length must be positive");
  return (pl_other - pl_gsrm) / pl_other;
}

std::uint64_t derive_seed(std::uint64_t master, const std::string& map, std::string_view builder, std::size_t size,
                          std::size_t repetition) {
  std::uint64_t h = splitmix64(master);
  h = hash_combine(h, fnv1a(map));
  h = hash_combine(h, fnv1a(builder));
  h = hash_combine(h, size);
  return hash_combine(h, repetition);
}

BenchResult run_benchmark(const BenchConfig& cfg, const ProgressFn& progress) {
  cfg.validate();
  const auto say = [&](const std::string& msg) {
    if (progress) progress(msg);
  };

  std::vector<MapEntry> maps;
  maps.reserve(cfg.maps.size());
  for (const auto& path : cfg.maps) {
    auto grid = load_pgm_file(path);
    const std::string name = path.stem().string();
    auto pairs = sample_query_pairs(grid, cfg.pairs_per_map, derive_seed(cfg.master_seed, name, "queries", 0, 0));
    maps.push_back({name, std::move(grid), std::move(pairs)});
  }
  const auto find_map = [&](const std::string& name) -> const MapEntry& {
    for (const auto& m : maps) {
      if (m.name == name) return m;
    }
    throw std::invalid_argument("bench config: external roadmaps reference unknown map '" + name + "'");
  };

  const int workers = worker_count();
  const bool with_gsrm = std::find(cfg.builders.begin(), cfg.builders.end(), Builder::gsrm) != cfg.builders.end();
  std::vector<JobOutcome> outcomes;
  std::mutex mu;
  const auto keep = [&](JobOutcome o) {
    std::lock_guard lock(mu);
    outcomes.push_back(std::move(o));
  };

  // GSRM first: its realized counts set the PRM targets for the same repetition.
  std::map<std::tuple<std::string, std::size_t>, int> resolutions;
  if (with_gsrm) {
    for (const auto& m : maps) {
      for (auto size : cfg.sizes) {
        GsrmOptions opts;
        opts.params = cfg.gs_params;
        opts.simulate.workers = workers;
        const auto cal = calibrate_resolution(m.grid, size, opts,
                                              derive_seed(cfg.master_seed, m.name, "calibration", size, 0),
                                              cfg.calibration_tolerance);
        say("calibrated " + m.name + " size " + std::to_string(size) + ": l=" + std::to_string(cal.resolution) +
            " (" + std::to_string(cal.vertices) + " vertices)");
        resolutions[{m.name, size}] = cal.resolution;
      }
    }
  }

  std::vector<Job> jobs;
  const auto add_jobs = [&](Builder b) {
    for (const auto& m : maps) {
      for (auto size : cfg.sizes) {
        for (std::size_t r = 0; r < cfg.roadmaps_per_config; ++r) {
          jobs.push_back({&m, b, size, r, derive_seed(cfg.master_seed, m.name, to_string(b), size, r), {}});
        }
      }
    }
  };

  const auto run_jobs = [&](const auto& build) {
    std::atomic<std::size_t> done{0};
    parallel_for(jobs.size(), workers, [&](std::size_t i) {
      const Job& job = jobs[i];
      std::optional<Roadmap> roadmap;
      std::optional<std::string> error;
      double ms = 0.0;
      const auto t0 = Clock::now();
      try {
        roadmap = build(job);
        ms = roadmap->build_ms;
      } catch (const std::exception& e) {
        ms = elapsed_ms(t0);
        error = e.what();
      }
      keep(run_queries(job, roadmap, ms, error));
      const std::string tag = job.map->name + " " + std::string(to_string(job.builder)) + " size " +
                              std::to_string(job.size) + " rep " + std::to_string(job.repetition);
      std::lock_guard lock(mu);
      say("[" + std::to_string(++done) + "/" + std::to_string(jobs.size()) + "] " + tag +
          (error ? " failed: " + *error : ": " + std::to_string(roadmap->vertex_count()) + " vertices, " +
                                              std::to_string(roadmap->edge_count()) + " edges"));
    });
    jobs.clear();
  };

  if (with_gsrm) {
    add_jobs(Builder::gsrm);
    // Roadmaps already run in parallel; keep each simulation single-threaded then.
    const int sim_workers = workers > 1 ? 1 : workers;
    run_jobs([&](const Job& job) {
      GsrmOptions opts;
      opts.params = cfg.gs_params;
      opts.resolution = resolutions.at({job.map->name, job.size});
      opts.simulate.workers = sim_workers;
      return build_gsrm(job.map->grid, opts, job.seed);
    });
  }

  std::map<std::tuple<std::string, std::size_t, std::size_t>, std::pair<std::size_t, std::size_t>> gsrm_counts;
  for (const auto& o : outcomes) {
    if (o.info.builder == Builder::gsrm && !o.info.error)
      gsrm_counts[{o.info.map, o.info.size, o.info.repetition}] = {o.info.vertices, o.info.edges};
  }

  for (auto b : cfg.builders) {
    if (b != Builder::gsrm) add_jobs(b);
  }
  for (const auto& ext : cfg.external) {
    const MapEntry& m = find_map(ext.map);
    for (std::size_t r = 0; r < ext.files.size(); ++r) {
      // External roadmaps carry their own seed; an unreadable file fails in the job like any builder.
      std::uint64_t seed = 0;
      try {
        seed = load_roadmap(ext.files[r]).seed;
      } catch (const std::exception&) {
      }
      jobs.push_back({&m, ext.builder, ext.size, r, seed, ext.files[r]});
    }
  }
  run_jobs([&](const Job& job) -> Roadmap {
    if (job.file) return load_roadmap(*job.file);
    if (job.builder == Builder::grid8) return build_gridmap8(job.map->grid, job.size);
    // PRM: same vertex count as the matching GSRM roadmap, delta tuned to its edge count.
    std::size_t n = job.size;
    std::size_t target_edges = static_cast<std::size_t>(std::lround(cfg.prm_edges_per_vertex * n));
    if (auto it = gsrm_counts.find({job.map->name, job.size, job.repetition}); it != gsrm_counts.end()) {
      n = std::max<std::size_t>(it->second.first, 1);
      target_edges = it->second.second;
    }
    DeltaTuning tuning;
    try {
      tuning = tune_prm_delta(job.map->grid, n, target_edges, job.seed);
    } catch (const TargetUnreachable& e) {
      tuning = e.closest();
    }
    return build_prm(job.map->grid, {n, tuning.delta, job.seed});
  });

  BenchResult result;
  for (auto& o : outcomes) {
    result.roadmaps.push_back(o.info);
    for (auto& rec : o.records) result.records.push_back(std::move(rec));
  }
  std::sort(result.records.begin(), result.records.end(),
            [](const BenchRecord& a, const BenchRecord& b) { return record_key(a) < record_key(b); });
  std::sort(result.roadmaps.begin(), result.roadmaps.end(), [](const BenchRoadmap& a, const BenchRoadmap& b) {
    return std::make_tuple(std::cref(a.map), to_string(a.builder), a.size, a.repetition) <
           std::make_tuple(std::cref(b.map), to_string(b.builder), b.size, b.repetition);
  });
  return result;
}

std::vector<BenchSummary> summarize(const std::vector<BenchRecord>& records, const std::vector<BenchRoadmap>& roadmaps) {
  using Key = std::tuple<std::string, std::string_view, std::size_t>;
  std::map<Key, std::vector<const BenchRecord*>> groups;
  for (const auto& r : records) groups[{r.map, to_string(r.builder), r.size}].push_back(&r);

  // GSRM lengths keyed by (map, size, repetition, query).
  std::map<std::tuple<std::string, std::size_t, std::size_t, std::size_t>, double> gsrm_len;
  for (const auto& r : records) {
    if (r.builder == Builder::gsrm && r.success) gsrm_len[{r.map, r.size, r.repetition, r.query_id}] = *r.path_length;
  }

  std::vector<BenchSummary> out;
  for (const auto& [key, rows] : groups) {
    BenchSummary s;
    s.map = std::get<0>(key);
    s.builder = rows.front()->builder;
    s.size = std::get<2>(key);
    s.queries = rows.size();
    std::vector<double> lengths;
    double visited = 0.0, build = 0.0, regret_sum = 0.0;
    for (const auto* r : rows) {
      build += r->build_ms;
      if (!r->success) continue;
      lengths.push_back(*r->path_length);
      visited += static_cast<double>(r->visited);
      auto it = gsrm_len.find({r->map, r->size, r->repetition, r->query_id});
      if (it != gsrm_len.end() && *r->path_length > 0.0) {
        regret_sum += regret(*r->path_length, it->second);
        ++s.regret_pairs;
      }
    }
    s.success_rate = static_cast<double>(lengths.size()) / static_cast<double>(rows.size());
    s.mean_build_ms = build / static_cast<double>(rows.size());
    if (!lengths.empty()) {
      double sum = 0.0;
      for (double l : lengths) sum += l;
      const double mean = sum / static_cast<double>(lengths.size());
      double sq = 0.0;
      for (double l : lengths) sq += (l - mean) * (l - mean);
      s.mean_length = mean;
      s.stddev_length = std::sqrt(sq / static_cast<double>(lengths.size()));
      s.mean_visited = visited / static_cast<double>(lengths.size());
    }
    if (s.regret_pairs > 0) s.mean_regret = regret_sum / static_cast<double>(s.regret_pairs);

    double nv = 0.0, ne = 0.0;
    std::size_t nr = 0;
    for (const auto& rm : roadmaps) {
      if (rm.map != s.map || rm.builder != s.builder || rm.size != s.size) continue;
      nv += static_cast<double>(rm.vertices);
      ne += static_cast<double>(rm.edges);
      ++nr;
    }
    if (nr > 0) {
      s.mean_vertices = nv / static_cast<double>(nr);
      s.mean_edges = ne / static_cast<double>(nr);
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::string records_to_csv(const std::vector<BenchRecord>& records) {
  std::string out = "map,builder,size,roadmap_seed,query_id,success,path_length,visited,build_ms\n";
  for (const auto& r : records) {
    out += r.map;
    out += ',';
    out += to_string(r.builder);
    out += ',' + std::to_string(r.size) + ',' + std::to_string(r.roadmap_seed) + ',' + std::to_string(r.query_id) +
           ',' + (r.success ? "1" : "0") + ',' + fmt_opt(r.path_length) + ',' + std::to_string(r.visited) + ',' +
           fmt_ms(r.build_ms) + '\n';
  }
  return out;
}

std::string summaries_to_csv(const std::vector<BenchSummary>& summaries) {
  std::string out =
      "map,builder,size,queries,success_rate,mean_length,stddev_length,mean_regret,regret_pairs,mean_visited,"
      "mean_build_ms,mean_vertices,mean_edges\n";
  for (const auto& s : summaries) {
    out += s.map;
    out += ',';
    out += to_string(s.builder);
    out += ',' + std::to_string(s.size) + ',' + std::to_string(s.queries) + ',' + fmt_real(s.success_rate) + ',' +
           fmt_opt(s.mean_length) + ',' + fmt_opt(s.stddev_length) + ',' + fmt_opt(s.mean_regret) + ',' +
           std::to_string(s.regret_pairs) + ',' + fmt_opt(s.mean_visited) + ',' + fmt_ms(s.mean_build_ms) + ',' +
           fmt_opt(s.mean_vertices) + ',' + fmt_opt(s.mean_edges) + '\n';
  }
  return out;
}

}  // namespace gsrm
