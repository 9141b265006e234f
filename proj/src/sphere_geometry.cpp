#include "sfk/sphere_geometry.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/tools/roots.hpp>

namespace sfk {

std::string_view to_string(Stability s) noexcept {
  switch (s) {
    case Stability::Stable: return "Stable";
    case Stability::WeaklyStable: return "WeaklyStable";
    case Stability::Unstable: return "Unstable";
  }
  return "?";
}

namespace {

double factorial(int k) { return std::tgamma(static_cast<double>(k) + 1.0); }

double two_pi_pow(int n) { return std::pow(2.0 * std::numbers::pi, n); }

}  // namespace

double sphere_area(const MetricProfile& profile, double t) {
  const MetricJet j = profile.jet(t);
  const int n = profile.dimension().value();
  return two_pi_pow(n) / factorial(n - 1) * std::pow(j.u_t, n - 1) * std::sqrt(2.0 * j.u_tt);
}

double lower_end_u_t(const MetricProfile& profile) {
  if (const auto* f = profile.family()) {
    if (f->B > 0.0) return f->A * std::pow(f->B, 1.0 / f->k);
    return 0.0;
  }
  const Trajectory& tr = *profile.trajectory();
  if (tr.is_fixed_point()) return 0.0;
  const TerminationReason& end = tr.backward_end();
  const double n = tr.dimension().real();
  const PhasePoint p0 = tr.seed();
  switch (end.kind) {
    case Termination::FiniteTimeBlowup:
      // v -> -infinity at the escape time.
      return 0.0;
    case Termination::AdmissibleLineAsymptote: {
      // x e^{nv} and y e^{(n-1)v} are constant along the orbit.
      const double w = end.line_abscissa;
      if (p0.x != 0.0 && w != 0.0) return std::pow(p0.x / w, 1.0 / n);
      return std::pow(p0.y / (-1.0 - w), 1.0 / (n - 1.0));
    }
    default:
      throw DomainError("lower end of the span is not determinable (backward end: " +
                        std::string(to_string(end.kind)) + ")");
  }
}

double ball_volume(const MetricProfile& profile, double t) {
  const int n = profile.dimension().value();
  const double u_t = profile.jet(t).u_t;
  const double low = lower_end_u_t(profile);
  return two_pi_pow(n) / factorial(n) * (std::pow(u_t, n) - std::pow(low, n));
}

double mean_curvature(const MetricProfile& profile, double t) {
  const MetricJet j = profile.jet(t);
  if (!(j.u_tt > 0.0)) throw DomainError("mean curvature needs u_tt > 0");
  const double n = profile.dimension().real();
  return -(2.0 * (n - 1.0) * j.u_tt * j.u_tt + j.u_ttt * j.u_t) /
         ((2.0 * n - 1.0) * std::numbers::sqrt2 * j.u_t * std::pow(j.u_tt, 1.5));
}

double mean_curvature_phase(Dimension n, PhasePoint p, double v) {
  return mean_curvature_phase(n, Sample{0.0, p.x, p.y, v, 1.0 + p.x + p.y});
}

double mean_curvature_phase(Dimension n, const Sample& s) {
  if (!(s.w > 0.0)) throw DomainError("mean curvature needs 1+x+y > 0");
  const double nn = n.real();
  return -minimal_line_residual(n, s.phase()) /
         ((2.0 * nn - 1.0) * std::numbers::sqrt2 * std::exp(0.5 * s.v) * std::sqrt(s.w));
}

double stability_functional(const MetricProfile& profile, double t) {
  const MetricJet j = profile.jet(t);
  const double n = profile.dimension().real();
  return j.u_t * j.u_t * j.u_tttt - 2.0 * (n - 1.0) * (4.0 * n - 3.0) * j.u_tt * j.u_tt * j.u_tt;
}

double stability_identity_residual(Dimension n, PhasePoint p, double v) {
  // Both sides are quartic in (x, y) with large cancelling terms, so the
  // chain is evaluated in extended precision.
  using real = long double;
  const real nn = n.real();
  const real x = p.x;
  const real y = p.y;
  const real a = nn * x + (nn - 1) * y;
  const real b = nn * nn * x + (nn - 1) * (nn - 1) * y;
  const real v_t = 1 + x + y;
  const real v_tt = -v_t * a;
  const real v_ttt = -v_tt * a + v_t * v_t * b;
  // e^{-3v} LHS is formed from the jets divided by u_t, which keeps the
  // Euclidean point exact.
  const real u_t = std::exp(static_cast<real>(v));
  const real u_tt = v_t * u_t;
  const real u_tttt = (v_ttt + 3 * v_t * v_tt + v_t * v_t * v_t) * u_t;
  const real s_tt = u_tt / u_t;
  const real s_tttt = u_tttt / u_t;
  const real lhs = s_tttt - 2 * (nn - 1) * (4 * nn - 3) * s_tt * s_tt * s_tt;
  const real m = (nn - 1) * x + nn * y + 2 * nn - 1;
  const real rhs = v_t * (m * m - 6 * (nn - 1) * v_t * m + nn * (nn - 1) * (-x - y) * v_t);
  return static_cast<double>(lhs - rhs);
}

Stability classify_stability(Dimension n, double x) noexcept {
  const double edge = 2.0 * n.real() - 1.0;
  if (std::abs(x - edge) <= kWeakStabilityTol) return Stability::WeaklyStable;
  return x < edge ? Stability::Stable : Stability::Unstable;
}

std::vector<SphereReport> find_minimal_spheres(const MetricProfile& profile) {
  std::vector<SphereReport> out;
  const Trajectory* tr = profile.trajectory();
  // On either axis the residual stays above n-1 > 0 because 1+x+y > 0.
  if (tr == nullptr || tr->is_fixed_point()) return out;

  const Dimension n = tr->dimension();
  const auto samples = tr->samples();
  auto residual_at = [&](double t) { return minimal_line_residual(n, tr->state_at(t).phase()); };

  std::vector<double> res(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) res[i] = minimal_line_residual(n, samples[i].phase());

  std::vector<std::pair<double, std::size_t>> roots;  // (t*, index of the first sample after t*)
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (res[i] == 0.0) {
      roots.emplace_back(samples[i].t, i + 1);
      continue;
    }
    if (i + 1 < samples.size() && res[i + 1] != 0.0 && (res[i] < 0.0) != (res[i + 1] < 0.0)) {
      std::uintmax_t iters = 200;
      boost::math::tools::eps_tolerance<double> tol(52);
      auto [a, b] = boost::math::tools::toms748_solve(residual_at, samples[i].t, samples[i + 1].t,
                                                      res[i], res[i + 1], tol, iters);
      const double ra = std::abs(residual_at(a));
      const double rb = std::abs(residual_at(b));
      roots.emplace_back(ra <= rb ? a : b, i + 1);
    }
  }

  for (std::size_t r = 0; r < roots.size(); ++r) {
    const auto [t_star, after] = roots[r];
    SphereReport s;
    s.t_star = t_star;
    s.phase_point = tr->state_at(t_star).phase();
    s.stability = classify_stability(n, s.phase_point.x);
    s.area = sphere_area(profile, t_star);
    bool constant_sign = true;
    if (after < samples.size()) {
      const bool negative = res[after] < 0.0;
      for (std::size_t i = after; i < samples.size(); ++i) {
        if (res[i] == 0.0 || (res[i] < 0.0) != negative) {
          constant_sign = false;
          break;
        }
      }
    }
    s.outermost = constant_sign;
    out.push_back(s);
  }
  return out;
}

}  // namespace sfk
