#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gsrm/map_io.hpp"

namespace gsrm {

/// Reaction and diffusion constants plus initialization bounds.
/// Defaults are the operating point that yields a stationary spot pattern.
struct GsParams {
  double feed = 0.035;       // A
  double kill = 0.065;       // B
  double diffusion_u = 0.14;
  double diffusion_v = 0.06;
  int steps = 10'000;
  double u_low = 0.8;
  double u_high = 1.0;
  double v_low = 0.0;
  double v_high = 0.2;

  /// Throws std::invalid_argument when a bound is negative or inverted.
  void validate() const;
};

/// Row-major real field matching an OccupancyGrid's dimensions.
struct Field {
  int width = 0;
  int height = 0;
  std::vector<double> values;

  Field() = default;
  Field(int w, int h, double fill = 0.0)
      : width(w), height(h), values(static_cast<std::size_t>(w) * h, fill) {}

  double& at(int x, int y) { return values[static_cast<std::size_t>(y) * width + x]; }
  double at(int x, int y) const { return values[static_cast<std::size_t>(y) * width + x]; }
  double max() const;

  friend bool operator==(const Field&, const Field&) = default;
};

struct GsState {
  Field u;
  Field v;
  long step = 0;
};

class SimulationDiverged : public std::runtime_error {
 public:
  explicit SimulationDiverged(long step)
      : std::runtime_error("gray-scott simulation diverged (non-finite value) by step " + std::to_string(step)),
        step_(step) {}
  long step() const { return step_; }

 private:
  long step_;
};

/// u ~ U[u_low, u_high], then v ~ U[v_low, v_high], each drawn row-major over
/// the whole raster; obstacle cells are zeroed afterwards.
GsState init_state(const GsParams& params, const OccupancyGrid& grid, std::uint64_t seed);

/// 5-point stencil, unit spacing; neighbors outside the raster read as 0.
/// Throws std::invalid_argument on a dimension mismatch.
Field laplacian(const Field& field, const OccupancyGrid& grid);

/// One synchronous update with implicit dt = 1. Obstacle cells are zeroed
/// first and are never written.
GsState step(const GsState& state, const GsParams& params, const OccupancyGrid& grid);

struct SimulateOptions {
  /// Row-partition workers; 0 = worker_count() (GSRM_WORKERS or 1).
  int workers = 0;
  /// Called with the current state every `observe_every` steps (and at step 0).
  int observe_every = 0;
  std::function<void(const GsState&)> observer;
};

/// init_state followed by params.steps updates. Bitwise identical for any
/// worker count. Throws SimulationDiverged.
GsState simulate(const GsParams& params, const OccupancyGrid& grid, std::uint64_t seed,
                 const SimulateOptions& options = {});

/// Linear map of [min, max] to 0..255 as a P5 image, for inspecting a field.
std::vector<std::uint8_t> field_to_pgm(const Field& field);

/// Worker count from the GSRM_WORKERS environment variable, default 1.
int worker_count();

}  // namespace gsrm
