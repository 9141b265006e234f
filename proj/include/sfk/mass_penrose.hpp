#pragma once

#include <cstddef>
#include <optional>

#include "sfk/ode_engine.hpp"
#include "sfk/phase_core.hpp"

namespace sfk {

/// Volume of the unit (2n-1)-sphere, 2 pi^n / (n-1)!.
double unit_sphere_volume(Dimension n);

/// Area of a stable minimal sphere sitting at t = 0 with phase abscissa x0:
/// (2 pi)^n / (n-1)! * sqrt(2 (x0 - n + 1) / n). Requires n-1 < x0 <= 2n-1.
double minimal_sphere_volume(Dimension n, double x0);

struct ReducedPenrose {
  double lhs = 0.0;  // -y0/(n-1)
  double rhs = 0.0;  // 1 + x0 + y0
  double gap = 0.0;
  bool holds() const noexcept { return gap >= 0.0; }
};

inline constexpr double kMinimalLineTol = 1e-9;

/// Throws DomainError unless (x0, y0) is admissible and on the minimal line.
ReducedPenrose penrose_reduced(Dimension n, double x0, double y0);

struct FullPenrose {
  double rhs = 0.0;  // (1/2) (V / V_E)^{(2n-2)/(2n-1)}
  bool holds = false;
};

FullPenrose penrose_full(Dimension n, double m, double volume);

/// Everything known about one seed: classification, minimal spheres, mass
/// and the two Penrose-type checks at the stable sphere, if any. Optional
/// fields are absent when there is no stable sphere (or no AE end for the
/// numeric mass).
struct PenroseReport {
  Dimension n{2};
  PhasePoint seed;
  RegionLabel region;
  std::size_t minimal_sphere_count = 0;
  bool stable_sphere = false;
  std::optional<double> t_star;
  std::optional<double> x0;
  std::optional<double> y0;
  std::optional<double> V_sigma;
  std::optional<double> m_paper;
  std::optional<double> m_numeric;  // normalised at the stable sphere
  std::optional<double> reduced_lhs;
  std::optional<double> reduced_rhs;
  std::optional<double> gap;
  std::optional<double> full_rhs;
  std::optional<bool> holds_reduced;
  std::optional<bool> holds_full;
  bool divisor_present = false;
  bool dichotomy_ok = true;
};

PenroseReport dichotomy_report(Dimension n, PhasePoint seed, const IntegrationOptions& options = {});

}  // namespace sfk
