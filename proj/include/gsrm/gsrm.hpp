#pragma once

#include <cstdint>
#include <optional>

#include "gsrm/gray_scott.hpp"
#include "gsrm/map_io.hpp"
#include "gsrm/roadmap.hpp"

namespace gsrm {

struct GsrmOptions {
  GsParams params;
  /// Simulation cells along the map's longer side (l = k for square maps).
  int resolution = 300;
  /// Dummy lattice stride in simulation cells; default matches the spot spacing.
  std::optional<int> dummy_stride;
  SimulateOptions simulate;
};

/// Full pipeline: resample the map to the simulation grid, run the reaction
/// diffusion, extract spot centroids, triangulate together with dummy
/// vertices inside obstacles, and keep the free real-real edges. Edges are
/// checked against the native map; a vertex that lands in a native obstacle
/// pixel moves to the nearest free pixel center. Sets build_ms.
Roadmap build_gsrm(const OccupancyGrid& map, const GsrmOptions& options, std::uint64_t seed);

struct Calibration {
  int resolution = 0;
  std::size_t vertices = 0;
};

/// Finds a resolution whose vertex count lands within `tolerance` (relative)
/// of target_n, assuming count grows with resolution^2 and bisecting once the
/// target is bracketed. Returns the closest resolution tried if none hits.
Calibration calibrate_resolution(const OccupancyGrid& map, std::size_t target_n, const GsrmOptions& base,
                                 std::uint64_t seed, double tolerance = 0.10);

}  // namespace gsrm
