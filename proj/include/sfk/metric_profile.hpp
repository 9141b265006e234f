#pragma once

#include <array>
#include <optional>
#include <utility>
#include <variant>

#include "sfk/ode_engine.hpp"
#include "sfk/phase_core.hpp"

namespace sfk {

/// Exact solutions u_t = A (B + e^{kt})^{1/k}, k in {n-1, n}, A > 0, B > -1.
/// k = n-1 lies on the y axis (Burns-Simanca type), k = n on the x axis
/// (Eguchi-Hanson type, Ricci-flat).
struct ClosedFormFamily {
  Dimension n{2};
  int k = 1;
  double A = 1.0;
  double B = 0.0;

  /// Throws std::invalid_argument unless k in {n-1, n}, A > 0 and B > -1.
  void validate() const;

  /// Lower end of the t-domain: log(-B)/k for -1 < B < 0, -infinity otherwise.
  double t_lower() const noexcept;
};

/// t = log(r^2 / 2).
namespace coordinates {
double t_from_radius(double r);
double radius_from_t(double t) noexcept;
}  // namespace coordinates

/// Radial derivatives of the potential at one t.
struct MetricJet {
  double t = 0.0;
  double x = 0.0;
  double y = 0.0;
  double v = 0.0;
  double v_t = 0.0;
  double v_tt = 0.0;
  double v_ttt = 0.0;
  double u_t = 0.0;
  double u_tt = 0.0;
  double u_ttt = 0.0;
  double u_tttt = 0.0;
  /// 1 - v_t = -(x + y), kept separately so u_t - u_tt = u_t (1 - v_t) never
  /// suffers cancellation on the AE end.
  double one_minus_v_t = 0.0;
  /// (log v_t)_t = v_tt / v_t and (log v_t)_tt / v_t, taken from the phase
  /// point so that neither divides by a small v_t.
  double log_v_t_t = 0.0;
  double log_v_t_tt_per_v_t = 0.0;
};

/// Derivative chain from a phase point:
///   v_t = 1+x+y,  v_tt = -v_t (n x + (n-1) y),
///   v_ttt = -v_tt (n x + (n-1) y) + v_t^2 (n^2 x + (n-1)^2 y),
///   u_t = e^v, u_tt = v_t u_t, u_ttt = (v_tt + v_t^2) u_t,
///   u_tttt = (v_ttt + 3 v_t v_tt + v_t^3) u_t.
MetricJet jet_from_phase(Dimension n, PhasePoint p, double v, double t = 0.0) noexcept;
/// Same chain with v_t taken from the integrated component w of the sample.
MetricJet jet_from_sample(Dimension n, const Sample& s) noexcept;

class MetricProfile {
 public:
  explicit MetricProfile(Trajectory trajectory);
  explicit MetricProfile(ClosedFormFamily family);

  Dimension dimension() const noexcept;

  const Trajectory* trajectory() const noexcept { return std::get_if<Trajectory>(&source_); }
  const ClosedFormFamily* family() const noexcept { return std::get_if<ClosedFormFamily>(&source_); }

  /// Open interval of t where the metric is defined (extended reals).
  std::pair<double, double> span() const noexcept;
  bool contains(double t) const noexcept;

  /// Throws DomainError outside the evaluable range.
  MetricJet jet(double t) const;
  PhasePoint phase_at(double t) const;

  double u_t(double t) const { return jet(t).u_t; }
  double u_tt(double t) const { return jet(t).u_tt; }
  double u_ttt(double t) const { return jet(t).u_ttt; }
  double u_tttt(double t) const { return jet(t).u_tttt; }
  double v_t(double t) const { return jet(t).v_t; }
  double v_tt(double t) const { return jet(t).v_tt; }
  double v_ttt(double t) const { return jet(t).v_ttt; }

 private:
  std::variant<Trajectory, ClosedFormFamily> source_;
};

MetricProfile profile_from_trajectory(Trajectory trajectory);
MetricProfile closed_form_profile(const ClosedFormFamily& family);

/// Scalar curvature from
///   v_t e^v scal = n(n-1)(1-v_t)v_t - (2n-1) v_tt - (v_ttt v_t - v_tt^2)/v_t^2,
/// evaluated after dividing through by v_t with the last term as (log v_t)_tt.
double scalar_curvature(const MetricProfile& profile, double t);

/// d/dt log(u_t^{n-1} u_tt e^{-nt}) = n v_t + v_tt/v_t - n, which is the phase
/// coordinate y; zero exactly for radially Ricci-flat metrics.
double ricci_defect(const MetricProfile& profile, double t);

struct MassEstimate {
  double m_numeric = 0.0;
  /// -y0/(n-1) for trajectory profiles normalised at t = 0.
  std::optional<double> m_paper;
  /// The limit vanishes: the mass term decays faster than the ALE threshold.
  bool vanishing = false;
  bool converged = false;
  std::array<double, 3> ladder_t{10.0, 20.0, 40.0};
  std::array<double, 3> ladder_values{};
  std::array<double, 2> extrapolants{};
};

/// m = lim_{t->inf} e^{(n-2)t} (u_t - u_tt)/(n-1), Richardson-extrapolated over
/// t in {10, 20, 40} assuming an e^{-t} correction. Throws DomainError without
/// an AE end, or when the extrapolants disagree.
MassEstimate adm_mass(const MetricProfile& profile);

struct FyzLimit {
  PhasePoint seed;
  PhasePoint limit;  // last backward sample
  TerminationReason backward_end;
  TerminationReason forward_end;
};

/// Follows the inner branch of the critical level backwards towards the
/// tangency point (n-1, -n).
FyzLimit fyz_limit_check(Dimension n);
/// Same from a caller-chosen seed; throws DomainError unless the seed lies on
/// the inner critical arc.
FyzLimit fyz_limit_check(Dimension n, PhasePoint seed);

/// Point of the inner critical arc with abscissa x in (0, n-1).
PhasePoint critical_arc_point(Dimension n, double x);

}  // namespace sfk
