#include "gsrm/gray_scott.hpp"

#include <algorithm>
#include <barrier>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>

#include "gsrm/rng.hpp"

namespace gsrm {

void GsParams::validate() const {
  const bool nonneg = feed >= 0 && kill >= 0 && diffusion_u >= 0 && diffusion_v >= 0 && u_low >= 0 &&
                      u_high >= 0 && v_low >= 0 && v_high >= 0;
  if (!nonneg) throw std::invalid_argument("gray-scott params must be nonnegative");
  if (u_low > u_high || v_low > v_high) throw std::invalid_argument("gray-scott init bounds inverted");
  if (steps < 0) throw std::invalid_argument("gray-scott step count must be nonnegative");
}

double Field::max() const {
  return values.empty() ? 0.0 : *std::max_element(values.begin(), values.end());
}

int worker_count() {
  if (const char* env = std::getenv("GSRM_WORKERS")) {
    const int n = std::atoi(env);
    if (n > 0) return std::min(n, 256);
  }
  return 1;
}

namespace {

void check_dims(const Field& f, const OccupancyGrid& grid) {
  if (f.width != grid.width() || f.height != grid.height() ||
      f.values.size() != static_cast<std::size_t>(f.width) * f.height) {
    throw std::invalid_argument("field dimensions do not match grid");
  }
}

// Padded double-buffered fields; the one-cell frame stays 0 (Dirichlet border).
class Integrator {
 public:
  Integrator(const GsParams& p, const OccupancyGrid& grid, const GsState& state)
      : w_(grid.width()), h_(grid.height()), pw_(w_ + 2), params_(p), step_(state.step) {
    const std::size_t n = static_cast<std::size_t>(pw_) * (h_ + 2);
    for (auto* buf : {&u_[0], &u_[1], &v_[0], &v_[1]}) buf->assign(n, 0.0);
    free_.assign(n, 0);
    for (int y = 0; y < h_; ++y) {
      for (int x = 0; x < w_; ++x) {
        const auto i = index(x, y);
        if (!grid.is_free(x, y)) continue;
        free_[i] = 1;
        u_[0][i] = state.u.at(x, y);
        v_[0][i] = state.v.at(x, y);
      }
    }
  }

  int height() const { return h_; }
  long step_count() const { return step_; }

  // Writes rows [y0, y1) of the next buffer from the current one.
  void update_rows(int y0, int y1) {
    const double* u = u_[cur_].data();
    const double* v = v_[cur_].data();
    double* nu = u_[cur_ ^ 1].data();
    double* nv = v_[cur_ ^ 1].data();
    const std::uint8_t* fr = free_.data();
    const double du_coef = params_.diffusion_u;
    const double dv_coef = params_.diffusion_v;
    const double feed = params_.feed;
    const double feed_kill = params_.feed + params_.kill;
    const std::ptrdiff_t up = -pw_;
    const std::ptrdiff_t down = pw_;
    for (int y = y0; y < y1; ++y) {
      const std::size_t row = static_cast<std::size_t>(y + 1) * pw_ + 1;
      for (int x = 0; x < w_; ++x) {
        const std::size_t i = row + x;
        const double uc = u[i];
        const double vc = v[i];
        const double lap_u = u[i - 1] + u[i + 1] + u[i + up] + u[i + down] - 4.0 * uc;
        const double lap_v = v[i - 1] + v[i + 1] + v[i + up] + v[i + down] - 4.0 * vc;
        const double uvv = uc * vc * vc;
        const double du = du_coef * lap_u - uvv + feed * (1.0 - uc);
        const double dv = dv_coef * lap_v + uvv - feed_kill * vc;
        nu[i] = fr[i] ? uc + du : 0.0;
        nv[i] = fr[i] ? vc + dv : 0.0;
      }
    }
  }

  void commit() {
    cur_ ^= 1;
    ++step_;
  }

  bool finite() const {
    const auto& u = u_[cur_];
    const auto& v = v_[cur_];
    for (std::size_t i = 0; i < u.size(); ++i) {
      if (!std::isfinite(u[i]) || !std::isfinite(v[i])) return false;
    }
    return true;
  }

  GsState snapshot() const {
    GsState s{Field(w_, h_), Field(w_, h_), step_};
    for (int y = 0; y < h_; ++y) {
      for (int x = 0; x < w_; ++x) {
        s.u.at(x, y) = u_[cur_][index(x, y)];
        s.v.at(x, y) = v_[cur_][index(x, y)];
      }
    }
    return s;
  }

 private:
  std::size_t index(int x, int y) const { return static_cast<std::size_t>(y + 1) * pw_ + x + 1; }

  int w_, h_, pw_;
  GsParams params_;
  long step_;
  int cur_ = 0;
  std::vector<double> u_[2];
  std::vector<double> v_[2];
  std::vector<std::uint8_t> free_;
};

constexpr int kDivergenceCheckInterval = 100;

}  // namespace

GsState init_state(const GsParams& params, const OccupancyGrid& grid, std::uint64_t seed) {
  params.validate();
  GsState s{Field(grid.width(), grid.height()), Field(grid.width(), grid.height()), 0};
  Rng rng(seed);
  for (auto& x : s.u.values) x = rng.uniform(params.u_low, params.u_high);
  for (auto& x : s.v.values) x = rng.uniform(params.v_low, params.v_high);
  for (int y = 0; y < grid.height(); ++y) {
    for (int x = 0; x < grid.width(); ++x) {
      if (!grid.is_free(x, y)) {
        s.u.at(x, y) = 0.0;
        s.v.at(x, y) = 0.0;
      }
    }
  }
  return s;
}

Field laplacian(const Field& f, const OccupancyGrid& grid) {
  check_dims(f, grid);
  const auto get = [&](int x, int y) {
    return (x < 0 || y < 0 || x >= f.width || y >= f.height) ? 0.0 : f.at(x, y);
  };
  Field out(f.width, f.height);
  for (int y = 0; y < f.height; ++y) {
    for (int x = 0; x < f.width; ++x) {
      out.at(x, y) = get(x - 1, y) + get(x + 1, y) + get(x, y - 1) + get(x, y + 1) - 4.0 * f.at(x, y);
    }
  }
  return out;
}

GsState step(const GsState& state, const GsParams& params, const OccupancyGrid& grid) {
  check_dims(state.u, grid);
  check_dims(state.v, grid);
  Integrator integ(params, grid, state);
  integ.update_rows(0, grid.height());
  integ.commit();
  if (!integ.finite()) throw SimulationDiverged(integ.step_count());
  return integ.snapshot();
}

GsState simulate(const GsParams& params, const OccupancyGrid& grid, std::uint64_t seed,
                 const SimulateOptions& options) {
  params.validate();
  Integrator integ(params, grid, init_state(params, grid, seed));
  const long total = params.steps;
  const auto observe = [&] {
    if (options.observer && options.observe_every > 0 && integ.step_count() % options.observe_every == 0) {
      options.observer(integ.snapshot());
    }
  };
  observe();

  const int workers = std::clamp(options.workers > 0 ? options.workers : worker_count(), 1,
                                 std::max(1, integ.height()));
  if (workers == 1) {
    for (long s = 0; s < total; ++s) {
      integ.update_rows(0, integ.height());
      integ.commit();
      if (integ.step_count() % kDivergenceCheckInterval == 0 && !integ.finite()) {
        throw SimulationDiverged(integ.step_count());
      }
      observe();
    }
  } else if (total > 0) {
    bool stop = false;
    bool diverged = false;
    std::exception_ptr observer_error;
    auto on_step = [&]() noexcept {
      integ.commit();
      if (integ.step_count() % kDivergenceCheckInterval == 0 && !integ.finite()) diverged = true;
      try {
        if (!diverged) observe();
      } catch (...) {
        observer_error = std::current_exception();
      }
      stop = diverged || observer_error || integ.step_count() >= total;
    };
    std::barrier sync(workers, on_step);
    const int h = integ.height();
    auto work = [&](int wi) {
      const int y0 = static_cast<int>(static_cast<long>(h) * wi / workers);
      const int y1 = static_cast<int>(static_cast<long>(h) * (wi + 1) / workers);
      while (!stop) {
        integ.update_rows(y0, y1);
        sync.arrive_and_wait();
      }
    };
    {
      std::vector<std::jthread> threads;
      for (int wi = 1; wi < workers; ++wi) threads.emplace_back(work, wi);
      work(0);
    }
    if (observer_error) std::rethrow_exception(observer_error);
    if (diverged) throw SimulationDiverged(integ.step_count());
  }
  if (!integ.finite()) throw SimulationDiverged(integ.step_count());
  return integ.snapshot();
}

std::vector<std::uint8_t> field_to_pgm(const Field& field) {
  double lo = 0.0, hi = 0.0;
  if (!field.values.empty()) {
    const auto [mn, mx] = std::minmax_element(field.values.begin(), field.values.end());
    lo = *mn;
    hi = *mx;
  }
  const std::string header =
      "P5\n" + std::to_string(field.width) + " " + std::to_string(field.height) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  const double span = hi - lo;
  for (double x : field.values) {
    const double t = span > 0.0 ? (x - lo) / span : 0.0;
    out.push_back(static_cast<std::uint8_t>(std::lround(std::clamp(t, 0.0, 1.0) * 255.0)));
  }
  return out;
}

}  // namespace gsrm
