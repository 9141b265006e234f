#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "sfk/phase_core.hpp"

namespace sfk {

/// One point of an integral curve of the augmented system (x, y, v),
/// v_t = 1 + x + y, v(0) = 0.
struct Sample {
  double t = 0.0;
  double x = 0.0;
  double y = 0.0;
  double v = 0.0;
  /// 1 + x + y, integrated as its own component w_t = -w (n x + (n-1) y) so
  /// that it keeps full relative accuracy where x + y is close to -1.
  double w = 1.0;

  PhasePoint phase() const noexcept { return {x, y}; }
};

enum class Termination {
  ConvergedToOrigin,
  AdmissibleLineAsymptote,
  FiniteTimeBlowup,
  MaxTimeReached,
  StepSizeUnderflow,
};

std::string_view to_string(Termination t) noexcept;

struct TerminationReason {
  Termination kind = Termination::MaxTimeReached;
  double t_stop = 0.0;  // time of the last emitted sample in this direction
  double blowup_time = std::numeric_limits<double>::quiet_NaN();
  double line_abscissa = std::numeric_limits<double>::quiet_NaN();  // limit point (w, -1-w)

  PhasePoint limit_point() const noexcept { return {line_abscissa, -1.0 - line_abscissa}; }
};

struct IntegrationOptions {
  double t_max = 60.0;
  double t_min = -60.0;
  double tol = 1e-10;
  /// Extra sample times, emitted through the continuous extension.
  std::vector<double> output_times;

  double origin_eps = 1e-13;     // on |(x, y)|
  double blowup_radius = 1e8;    // on |(x, y)|
  double line_eps = 1e-11;       // on 1 + x + y
  double min_step = 1e-14;
  std::size_t max_steps = 4'000'000;
};

/// Sampled integral curve. Immutable once built.
///
/// Between samples the state is reconstructed by quintic Hermite
/// interpolation using the exact first and second t-derivatives from the
/// vector field. Past a ConvergedToOrigin end the state continues along the
/// asymptotic flow near the origin, x = x_e e^{-n(v - v_e)},
/// y = y_e e^{(1-n)(v - v_e)}, so profiles can be evaluated on the whole AE end.
class Trajectory {
 public:
  Trajectory(Dimension n, std::vector<Sample> samples, TerminationReason forward,
             TerminationReason backward, bool fixed_point = false);

  Dimension dimension() const noexcept { return n_; }
  std::span<const Sample> samples() const noexcept { return samples_; }
  const TerminationReason& forward_end() const noexcept { return forward_; }
  const TerminationReason& backward_end() const noexcept { return backward_; }
  bool is_fixed_point() const noexcept { return fixed_point_; }

  PhasePoint seed() const noexcept { return seed_; }

  /// Maximal interval (a, b), a < 0 < b, with infinite ends where the
  /// curve exists for all time in that direction.
  std::pair<double, double> span() const noexcept;

  double first_time() const noexcept { return samples_.front().t; }
  double last_time() const noexcept { return samples_.back().t; }

  bool can_evaluate(double t) const noexcept;

  /// Throws DomainError when t is outside the evaluable range.
  Sample state_at(double t) const;

 private:
  Dimension n_;
  std::vector<Sample> samples_;
  TerminationReason forward_;
  TerminationReason backward_;
  bool fixed_point_;
  PhasePoint seed_;
};

Trajectory integrate(Dimension n, PhasePoint p0, const IntegrationOptions& options = {});
Trajectory integrate(Dimension n, PhasePoint p0, double t_max, double t_min, double tol);

enum class Axis { X, Y };

/// Time at which the coordinate `axis` of the orbit through p0 equals
/// `target` (may be +-infinity), from the implicit quadrature along the level
/// curve. Requires x0*y0 != 0.
double time_to_reach(Dimension n, PhasePoint p0, double target, Axis axis);

/// Signed escape time of the orbit through p0 (negative: the blow-up lies in
/// the past), or nullopt when the orbit exists without escaping.
std::optional<double> blowup_time(Dimension n, PhasePoint p0,
                                  const IntegrationOptions& options = {});

}  // namespace sfk
