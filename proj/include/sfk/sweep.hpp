#pragma once

#include <cstddef>
#include <exception>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sfk/mass_penrose.hpp"
#include "sfk/ode_engine.hpp"
#include "sfk/phase_core.hpp"

namespace sfk {

/// Rectangular seed grid "x0:x1:steps,y0:y1:steps"; steps counts points per
/// axis, both ends included (steps = 1 keeps only the first value).
struct SeedGrid {
  double x_lo = 0.0;
  double x_hi = 0.0;
  int x_steps = 1;
  double y_lo = 0.0;
  double y_hi = 0.0;
  int y_steps = 1;

  /// Throws std::invalid_argument on malformed input.
  static SeedGrid parse(std::string_view text);

  /// Row-major in x, then y.
  std::vector<PhasePoint> points() const;
  std::size_t size() const noexcept {
    return static_cast<std::size_t>(x_steps) * static_cast<std::size_t>(y_steps);
  }
};

enum class Execution { Serial, Parallel };

template <class R>
struct SweepItem {
  PhasePoint seed;
  std::optional<R> value;
  std::string error;  // set when the computation threw
};

/// Applies f to every seed, one result per seed in input order. The parallel
/// path distributes seeds over OpenMP threads; results are written by index so
/// both paths produce identical output.
template <class R, class F>
std::vector<SweepItem<R>> map_seeds(const std::vector<PhasePoint>& seeds, F&& f, Execution exec) {
  std::vector<SweepItem<R>> out(seeds.size());
  const auto count = static_cast<long long>(seeds.size());
  auto run = [&](long long i) {
    auto& item = out[static_cast<std::size_t>(i)];
    item.seed = seeds[static_cast<std::size_t>(i)];
    try {
      item.value = f(item.seed);
    } catch (const std::exception& e) {
      item.error = e.what();
    }
  };
  if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic, 16)
    for (long long i = 0; i < count; ++i) run(i);
  } else {
    for (long long i = 0; i < count; ++i) run(i);
  }
  return out;
}

/// Largest |F(t)/F(0) - 1| over the samples of a trajectory with x0*y0 != 0.
double level_drift(const Trajectory& trajectory);

std::vector<SweepItem<RegionLabel>> classify_sweep(Dimension n, const std::vector<PhasePoint>& seeds,
                                                   Execution exec);

std::vector<SweepItem<PenroseReport>> dichotomy_sweep(Dimension n, const std::vector<PhasePoint>& seeds,
                                                      const IntegrationOptions& options, Execution exec);

std::vector<SweepItem<double>> level_drift_sweep(Dimension n, const std::vector<PhasePoint>& seeds,
                                                 const IntegrationOptions& options, Execution exec);

}  // namespace sfk
