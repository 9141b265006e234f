#pragma once

#include <string_view>
#include <vector>

#include "sfk/metric_profile.hpp"

namespace sfk {

enum class Stability { Stable, WeaklyStable, Unstable };

std::string_view to_string(Stability s) noexcept;

/// A sphere {t = t_star} that is minimal for the reconstructed metric.
struct SphereReport {
  double t_star = 0.0;
  PhasePoint phase_point;
  Stability stability = Stability::Stable;
  double area = 0.0;
  bool outermost = false;
};

/// Area of S^{2n-1}(t): (2 pi)^n / (n-1)! * u_t^{n-1} sqrt(2 u_tt).
double sphere_area(const MetricProfile& profile, double t);

/// Volume enclosed by S^{2n-1}(t): (2 pi)^n / n! * (u_t(t)^n - L), where L is
/// the limit of u_t^n at the lower end of the span. Throws DomainError when
/// that limit cannot be determined.
double ball_volume(const MetricProfile& profile, double t);

/// Lower-end limit of u_t (see ball_volume).
double lower_end_u_t(const MetricProfile& profile);

/// H = -(2(n-1) u_tt^2 + u_ttt u_t) / ((2n-1) sqrt(2) u_t u_tt^{3/2}).
double mean_curvature(const MetricProfile& profile, double t);

/// The same quantity written in phase variables:
/// H = -((n-1)x + ny + 2n-1) / ((2n-1) sqrt(2) e^{v/2} (1+x+y)^{1/2}).
double mean_curvature_phase(Dimension n, PhasePoint p, double v);
/// Same with v_t = 1+x+y read from the integrated component of the sample.
double mean_curvature_phase(Dimension n, const Sample& s);

/// u_t^2 u_tttt - 2(n-1)(4n-3) u_tt^3; nonnegative at a minimal sphere iff it
/// is stable.
double stability_functional(const MetricProfile& profile, double t);

/// e^{-3v} times the difference between the stability functional computed
/// from the derivative chain and its factorisation
///   (1+x+y) [M^2 - 6(n-1)(1+x+y) M + n(n-1)(-x-y)(1+x+y)],
/// M = (n-1)x + ny + 2n-1.
double stability_identity_residual(Dimension n, PhasePoint p, double v);

/// Window test on the abscissa of a minimal point: Stable for n-1 < x < 2n-1,
/// WeaklyStable within 1e-9 of 2n-1, Unstable beyond.
Stability classify_stability(Dimension n, double x) noexcept;

inline constexpr double kWeakStabilityTol = 1e-9;

/// Minimal spheres along the profile, in increasing t. Closed-form profiles
/// never cross the minimal line and return an empty list.
std::vector<SphereReport> find_minimal_spheres(const MetricProfile& profile);

}  // namespace sfk
