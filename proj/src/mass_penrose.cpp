#include "sfk/mass_penrose.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "sfk/metric_profile.hpp"
#include "sfk/sphere_geometry.hpp"

namespace sfk {

double unit_sphere_volume(Dimension n) {
  return 2.0 * std::pow(std::numbers::pi, n.real()) / std::tgamma(n.real());
}

double minimal_sphere_volume(Dimension n, double x0) {
  const double nn = n.real();
  if (!(x0 > nn - 1.0 && x0 <= 2.0 * nn - 1.0 + kWeakStabilityTol)) {
    throw DomainError("x0 outside the stability window (n-1, 2n-1]");
  }
  return std::pow(2.0 * std::numbers::pi, nn) / std::tgamma(nn) * std::sqrt(2.0 * (x0 - nn + 1.0) / nn);
}

ReducedPenrose penrose_reduced(Dimension n, double x0, double y0) {
  if (!is_admissible({x0, y0})) throw DomainError("inadmissible point: 1+x+y <= 0");
  if (std::abs(minimal_line_residual(n, {x0, y0})) > kMinimalLineTol) {
    throw DomainError("seed not minimal: point is off the minimal line");
  }
  ReducedPenrose r;
  r.lhs = -y0 / (n.real() - 1.0);
  r.rhs = 1.0 + x0 + y0;
  r.gap = r.lhs - r.rhs;
  return r;
}

FullPenrose penrose_full(Dimension n, double m, double volume) {
  if (!(volume > 0.0)) throw DomainError("minimal sphere volume must be positive");
  const double nn = n.real();
  FullPenrose f;
  f.rhs = 0.5 * std::pow(volume / unit_sphere_volume(n), (2.0 * nn - 2.0) / (2.0 * nn - 1.0));
  f.holds = m >= f.rhs;
  return f;
}

PenroseReport dichotomy_report(Dimension n, PhasePoint seed, const IntegrationOptions& options) {
  PenroseReport rep;
  rep.n = n;
  rep.seed = seed;
  rep.region = classify(n, seed);
  if (rep.region.tag == Region::Inadmissible) throw DomainError("inadmissible: 1+x+y <= 0");
  rep.divisor_present = (rep.region.tag == Region::AxisX || rep.region.tag == Region::AxisY) &&
                        rep.region.divisor_possible;

  const MetricProfile profile(integrate(n, seed, options));
  const auto spheres = find_minimal_spheres(profile);
  rep.minimal_sphere_count = spheres.size();

  // Prefer the outermost stable sphere, otherwise the last stable one in t.
  const SphereReport* chosen = nullptr;
  for (const auto& s : spheres) {
    if (s.stability == Stability::Unstable) continue;
    if (chosen == nullptr || s.outermost || !chosen->outermost) chosen = &s;
  }
  rep.stable_sphere = chosen != nullptr;
  rep.dichotomy_ok = !(rep.stable_sphere && rep.divisor_present);
  if (chosen == nullptr) return rep;

  // The system is autonomous: moving t = 0 to the sphere keeps its phase point.
  const double nn = n.real();
  const double x0 = chosen->phase_point.x;
  const double y0 = chosen->phase_point.y;
  rep.t_star = chosen->t_star;
  rep.x0 = x0;
  rep.y0 = y0;
  rep.V_sigma = minimal_sphere_volume(n, std::min(x0, 2.0 * nn - 1.0));
  rep.m_paper = -y0 / (nn - 1.0);
  const ReducedPenrose red = penrose_reduced(n, x0, y0);
  rep.reduced_lhs = red.lhs;
  rep.reduced_rhs = red.rhs;
  rep.gap = red.gap;
  rep.holds_reduced = red.holds();
  const FullPenrose full = penrose_full(n, *rep.m_paper, *rep.V_sigma);
  rep.full_rhs = full.rhs;
  rep.holds_full = full.holds;

  const Trajectory& tr = *profile.trajectory();
  if (tr.forward_end().kind == Termination::ConvergedToOrigin) {
    try {
      const MassEstimate m = adm_mass(profile);
      // Renormalising u so that t* -> 0 and u_t(t*) = 1 scales the mass by
      // e^{-(n-2) t* - v(t*)}.
      const double v_star = tr.state_at(chosen->t_star).v;
      rep.m_numeric = m.m_numeric * std::exp(-(nn - 2.0) * chosen->t_star - v_star);
    } catch (const DomainError&) {
    }
  }
  return rep;
}

}  // namespace sfk
