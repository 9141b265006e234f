#include "sfk/metric_profile.hpp"

#include <cmath>
#include <limits>
#include <string>

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace sfk {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

MetricJet closed_form_jet(const ClosedFormFamily& f, double t) {
  const double k = static_cast<double>(f.k);
  const double kt = k * t;
  double w = 1.0;       // v_t = e^{kt} / (B + e^{kt})
  double omw = 0.0;     // 1 - v_t = B / (B + e^{kt})
  double log_s = kt;    // log(B + e^{kt})
  if (f.B != 0.0) {
    if (kt > 0.0) {
      const double q = f.B * std::exp(-kt);
      w = 1.0 / (1.0 + q);
      omw = q / (1.0 + q);
      log_s = kt + std::log1p(q);
    } else {
      const double e = std::exp(kt);
      w = e / (f.B + e);
      omw = f.B / (f.B + e);
      log_s = std::log(f.B + e);
    }
  }
  MetricJet j;
  j.t = t;
  const int n = f.n.value();
  if (f.k == n - 1) {
    j.x = 0.0;
    j.y = -omw;
  } else {
    j.x = -omw;
    j.y = 0.0;
  }
  j.v = std::log(f.A) + log_s / k;
  j.v_t = w;
  j.one_minus_v_t = omw;
  j.v_tt = k * w * omw;
  j.v_ttt = k * k * w * omw * (omw - w);
  j.log_v_t_t = k * omw;
  j.log_v_t_tt_per_v_t = -k * k * omw;
  j.u_t = f.B == 0.0 ? f.A * std::exp(t) : f.A * std::exp(log_s / k);
  j.u_tt = w * j.u_t;
  j.u_ttt = (j.v_tt + w * w) * j.u_t;
  j.u_tttt = (j.v_ttt + 3.0 * w * j.v_tt + w * w * w) * j.u_t;
  return j;
}

}  // namespace

void ClosedFormFamily::validate() const {
  const int nv = n.value();
  if (k != nv - 1 && k != nv) {
    throw std::invalid_argument("closed-form family needs k in {n-1, n}, got k = " + std::to_string(k));
  }
  if (!(A > 0.0) || !std::isfinite(A)) throw std::invalid_argument("closed-form family needs A > 0");
  if (!(B > -1.0) || !std::isfinite(B)) throw std::invalid_argument("closed-form family needs B > -1");
}

double ClosedFormFamily::t_lower() const noexcept {
  if (B < 0.0) return std::log(-B) / static_cast<double>(k);
  return -kInf;
}

namespace coordinates {

double t_from_radius(double r) {
  if (!(r > 0.0)) throw DomainError("radius must be positive");
  return std::log(r * r / 2.0);
}

double radius_from_t(double t) noexcept { return std::sqrt(2.0 * std::exp(t)); }

}  // namespace coordinates

MetricJet jet_from_phase(Dimension n, PhasePoint p, double v, double t) noexcept {
  return jet_from_sample(n, Sample{t, p.x, p.y, v, 1.0 + p.x + p.y});
}

MetricJet jet_from_sample(Dimension n, const Sample& s) noexcept {
  const double nn = n.real();
  const PhasePoint p = s.phase();
  MetricJet j;
  j.t = s.t;
  j.x = p.x;
  j.y = p.y;
  j.v = s.v;
  const double a = nn * p.x + (nn - 1.0) * p.y;
  const double b = nn * nn * p.x + (nn - 1.0) * (nn - 1.0) * p.y;
  j.v_t = s.w;
  j.one_minus_v_t = -(p.x + p.y);
  j.v_tt = -j.v_t * a;
  j.v_ttt = -j.v_tt * a + j.v_t * j.v_t * b;
  j.log_v_t_t = -a;
  j.log_v_t_tt_per_v_t = b;
  j.u_t = std::exp(s.v);
  j.u_tt = j.v_t * j.u_t;
  j.u_ttt = (j.v_tt + j.v_t * j.v_t) * j.u_t;
  j.u_tttt = (j.v_ttt + 3.0 * j.v_t * j.v_tt + j.v_t * j.v_t * j.v_t) * j.u_t;
  return j;
}

MetricProfile::MetricProfile(Trajectory trajectory) : source_(std::move(trajectory)) {}

MetricProfile::MetricProfile(ClosedFormFamily family) : source_(family) { family.validate(); }

Dimension MetricProfile::dimension() const noexcept {
  if (const auto* t = trajectory()) return t->dimension();
  return family()->n;
}

std::pair<double, double> MetricProfile::span() const noexcept {
  if (const auto* t = trajectory()) return t->span();
  return {family()->t_lower(), kInf};
}

bool MetricProfile::contains(double t) const noexcept {
  if (const auto* tr = trajectory()) return tr->can_evaluate(t);
  return std::isfinite(t) && t > family()->t_lower();
}

MetricJet MetricProfile::jet(double t) const {
  if (!contains(t)) {
    throw DomainError("t = " + std::to_string(t) + " is outside the span of the metric profile");
  }
  if (const auto* tr = trajectory()) {
    return jet_from_sample(tr->dimension(), tr->state_at(t));
  }
  return closed_form_jet(*family(), t);
}

PhasePoint MetricProfile::phase_at(double t) const {
  const MetricJet j = jet(t);
  return {j.x, j.y};
}

MetricProfile profile_from_trajectory(Trajectory trajectory) { return MetricProfile(std::move(trajectory)); }

MetricProfile closed_form_profile(const ClosedFormFamily& family) { return MetricProfile(family); }

double scalar_curvature(const MetricProfile& profile, double t) {
  const MetricJet j = profile.jet(t);
  if (!(j.v_t > 0.0)) throw DomainError("scalar curvature needs v_t > 0");
  const double n = profile.dimension().real();
  const double lhs_per_v_t =
      n * (n - 1.0) * j.one_minus_v_t - (2.0 * n - 1.0) * j.log_v_t_t - j.log_v_t_tt_per_v_t;
  return lhs_per_v_t / j.u_t;
}

double ricci_defect(const MetricProfile& profile, double t) {
  const MetricJet j = profile.jet(t);
  if (!(j.v_t > 0.0)) throw DomainError("Ricci defect needs v_t > 0");
  const double n = profile.dimension().real();
  if (profile.trajectory() == nullptr) return j.v_tt / j.v_t - n * j.one_minus_v_t;
  // Near an escape |x|, |y| reach 1e8 while the defect stays O(|y|); the
  // cancellation between n v_t and v_tt/v_t is resolved in quad precision.
  using quad = boost::multiprecision::cpp_bin_float_quad;
  const quad x = j.x;
  const quad y = j.y;
  const quad nq = n;
  const quad v_t = 1 + x + y;
  const quad v_tt = -v_t * (nq * x + (nq - 1) * y);
  return static_cast<double>(nq * v_t + v_tt / v_t - nq);
}

MassEstimate adm_mass(const MetricProfile& profile) {
  const double n = profile.dimension().real();
  MassEstimate m;
  if (const auto* tr = profile.trajectory()) {
    m.m_paper = -tr->seed().y / (n - 1.0);
    if (tr->is_fixed_point()) {
      m.ladder_values.fill(0.0);
      m.extrapolants.fill(0.0);
      m.m_numeric = 0.0;
      m.vanishing = true;
      m.converged = true;
      return m;
    }
    if (tr->forward_end().kind != Termination::ConvergedToOrigin) {
      throw DomainError("ADM mass needs an asymptotically Euclidean end (forward orbit must reach the origin)");
    }
  }
  for (std::size_t i = 0; i < 3; ++i) {
    const double t = m.ladder_t[i];
    const MetricJet j = profile.jet(t);
    // e^{(n-2)t} u_t (1 - v_t) / (n-1), with u_t = e^v folded into the exponent.
    m.ladder_values[i] = std::exp((n - 2.0) * t + j.v) * j.one_minus_v_t / (n - 1.0);
  }
  for (std::size_t i = 0; i < 2; ++i) {
    const double r = std::exp(-(m.ladder_t[i + 1] - m.ladder_t[i]));
    m.extrapolants[i] = (m.ladder_values[i + 1] - r * m.ladder_values[i]) / (1.0 - r);
  }
  m.m_numeric = m.extrapolants[1];
  const double diff = std::abs(m.extrapolants[1] - m.extrapolants[0]);
  m.converged = diff <= 1e-6 * std::abs(m.m_numeric) || diff <= 1e-12;
  if (!m.converged) {
    throw DomainError("ADM mass extrapolation did not converge");
  }
  m.vanishing = std::abs(m.m_numeric) <= 1e-10;
  if (m.vanishing) m.m_numeric = 0.0;
  return m;
}

PhasePoint critical_arc_point(Dimension n, double x) {
  const double nn = n.real();
  if (!(x > 0.0 && x < nn - 1.0)) throw DomainError("inner critical arc needs 0 < x < n-1");
  const double c = std::pow(lambda_critical(n), 1.0 / nn);
  return {x, -c * std::pow(x, 1.0 - 1.0 / nn)};
}

FyzLimit fyz_limit_check(Dimension n) { return fyz_limit_check(n, critical_arc_point(n, 0.5 * (n.real() - 1.0))); }

FyzLimit fyz_limit_check(Dimension n, PhasePoint seed) {
  const RegionLabel label = classify(n, seed);
  if (label.tag != Region::Region3_CriticalLevel || label.arc != CriticalArc::Inner) {
    throw DomainError("seed not on the inner arc of the critical level");
  }
  IntegrationOptions o;
  // The approach to the tangency point is algebraic (1+x+y ~ 1/t^2).
  o.t_min = -1e8;
  const Trajectory tr = integrate(n, seed, o);
  return {seed, tr.samples().front().phase(), tr.backward_end(), tr.forward_end()};
}

}  // namespace sfk
