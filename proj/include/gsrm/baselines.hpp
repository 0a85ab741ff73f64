#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "gsrm/map_io.hpp"
#include "gsrm/rng.hpp"
#include "gsrm/roadmap.hpp"

namespace gsrm {

/// Largest lattice resolution m (cells of side 1/m) whose free cell count is
/// <= target_n; vertices at free lattice cell centers, edges between
/// 8-neighbors with a free connecting segment. Throws std::runtime_error if no
/// resolution yields a free lattice cell within the target.
Roadmap build_gridmap8(const OccupancyGrid& grid, std::size_t target_n);

/// Same construction at a fixed lattice resolution.
Roadmap build_gridmap8_at(const OccupancyGrid& grid, int lattice);

struct PrmParams {
  std::size_t n = 0;
  double delta = 0.0;  // connection radius, unit-square units
  std::uint64_t seed = 0;
};

class SamplingFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Uniform point in free space: uniform raster cell by rejection, then
/// uniform within the cell. Throws SamplingFailed after `max_rejections`.
Point sample_free_point(const OccupancyGrid& grid, Rng& rng, std::size_t max_rejections = 1'000'000);

/// n free samples, connected pairwise within delta when the segment is free.
/// Throws SamplingFailed if 100*n rejections pass without placing n distinct samples.
Roadmap build_prm(const OccupancyGrid& grid, const PrmParams& params);

struct DeltaTuning {
  double delta = 0.0;
  std::size_t edges = 0;
};

class TargetUnreachable : public std::runtime_error {
 public:
  TargetUnreachable(const DeltaTuning& closest, std::size_t target)
      : std::runtime_error("prm: " + std::to_string(target) + " edges unreachable, closest " +
                           std::to_string(closest.edges)),
        closest_(closest) {}
  const DeltaTuning& closest() const { return closest_; }

 private:
  DeltaTuning closest_;
};

/// Bisection on delta in (0, sqrt 2] over the PRM sample set for `seed` until
/// the edge count is within 2% of target_edges (at most 40 iterations).
/// Throws TargetUnreachable when no delta gets within tolerance.
DeltaTuning tune_prm_delta(const OccupancyGrid& grid, std::size_t n, std::size_t target_edges,
                           std::uint64_t seed);

}  // namespace gsrm
