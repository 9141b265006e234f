#include "sfk/ode_engine.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace sfk {

std::string_view to_string(Termination t) noexcept {
  switch (t) {
    case Termination::ConvergedToOrigin: return "ConvergedToOrigin";
    case Termination::AdmissibleLineAsymptote: return "AdmissibleLineAsymptote";
    case Termination::FiniteTimeBlowup: return "FiniteTimeBlowup";
    case Termination::MaxTimeReached: return "MaxTimeReached";
    case Termination::StepSizeUnderflow: return "StepSizeUnderflow";
  }
  return "?";
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct State {
  double x = 0.0;
  double y = 0.0;
  double v = 0.0;
  double w = 1.0;
};

State operator+(const State& a, const State& b) { return {a.x + b.x, a.y + b.y, a.v + b.v, a.w + b.w}; }
State operator-(const State& a, const State& b) { return {a.x - b.x, a.y - b.y, a.v - b.v, a.w - b.w}; }
State operator*(double s, const State& a) { return {s * a.x, s * a.y, s * a.v, s * a.w}; }

State field(double n, const State& s) {
  return {-n * s.x * s.w, (1.0 - n) * s.y * s.w, s.w, -s.w * (n * s.x + (n - 1.0) * s.y)};
}

bool finite(const State& s) {
  return std::isfinite(s.x) && std::isfinite(s.y) && std::isfinite(s.v) && std::isfinite(s.w);
}

// Dormand-Prince 5(4) tableau with Hairer's dense-output coefficients.
namespace dp {
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784,
                 a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;
constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;
}  // namespace dp

struct StepResult {
  State y1;
  State k7;
  std::array<State, 5> cont;  // dense output coefficients
  double err = kInf;
};

// Scaled error: pure relative on x, y and w (they decay to 0 exponentially and
// the conserved level depends on their ratios), mixed on v.
double error_norm(const State& err, const State& y0, const State& y1, double tol) {
  auto comp = [tol](double e, double a, double b, double floor) {
    const double sc = tol * (floor + std::max(std::abs(a), std::abs(b)));
    if (sc == 0.0) return e == 0.0 ? 0.0 : kInf;
    const double r = e / sc;
    return r * r;
  };
  constexpr double tiny = std::numeric_limits<double>::min();
  const double sum = comp(err.x, y0.x, y1.x, tiny) + comp(err.y, y0.y, y1.y, tiny) +
                     comp(err.v, y0.v, y1.v, 1.0) + comp(err.w, y0.w, y1.w, tiny);
  return std::sqrt(sum / 4.0);
}

StepResult dopri_step(double n, const State& y0, const State& k1, double h, double tol) {
  using namespace dp;
  StepResult r;
  const State k2 = field(n, y0 + h * (a21 * k1));
  const State k3 = field(n, y0 + h * (a31 * k1 + a32 * k2));
  const State k4 = field(n, y0 + h * (a41 * k1 + a42 * k2 + a43 * k3));
  const State k5 = field(n, y0 + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
  const State k6 = field(n, y0 + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
  r.y1 = y0 + h * (a71 * k1 + a73 * k3 + a74 * k4 + a75 * k5 + a76 * k6);
  r.k7 = field(n, r.y1);
  if (!finite(r.y1) || !finite(r.k7) || !(r.y1.w > 0.0)) return r;
  const State err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * r.k7);
  r.err = error_norm(err, y0, r.y1, tol);

  const State ydiff = r.y1 - y0;
  const State bspl = h * k1 - ydiff;
  r.cont[0] = y0;
  r.cont[1] = ydiff;
  r.cont[2] = bspl;
  r.cont[3] = ydiff - h * r.k7 - bspl;
  r.cont[4] = h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * r.k7);
  return r;
}

State dense(const std::array<State, 5>& c, double theta) {
  const double theta1 = 1.0 - theta;
  return c[0] + theta * (c[1] + theta1 * (c[2] + theta * (c[3] + theta1 * c[4])));
}

// Restores w = 1 + x + y after a step. The residual is split in proportion
// to the squared magnitudes, so the large components absorb it and each one
// moves by a relative amount of the order of the local error.
bool project_onto_constraint(State& s) {
  const double r = s.w - (1.0 + s.x + s.y);
  if (r == 0.0) return false;
  const double d = s.x * s.x + s.y * s.y + s.w * s.w;
  s.x += r * (s.x * s.x / d);
  s.y += r * (s.y * s.y / d);
  s.w -= r * (s.w * s.w / d);
  return true;
}

struct Leg {
  std::vector<Sample> samples;  // excludes t = 0
  TerminationReason end;
};

// Integrates from t = 0 towards t_end (either sign) until an event fires.
Leg run_leg(double n, PhasePoint p0, double t_end, const std::vector<double>& outputs,
            const IntegrationOptions& o) {
  Leg leg;
  const double dir = t_end >= 0.0 ? 1.0 : -1.0;
  double t = 0.0;
  State y{p0.x, p0.y, 0.0, 1.0 + p0.x + p0.y};
  State k1 = field(n, y);

  const double speed = std::hypot(k1.x, k1.y, k1.v);
  double h = dir * std::min(1e-2, 1e-2 / std::max(speed, 1e-300));
  double err_old = 1e-4;
  std::size_t next_out = 0;
  double r_prev = std::hypot(y.x, y.y);

  auto finish = [&](Termination kind) {
    leg.end.kind = kind;
    leg.end.t_stop = t;
    return leg;
  };

  for (std::size_t step = 0;; ++step) {
    if (step >= o.max_steps) return finish(Termination::StepSizeUnderflow);
    const double remaining = t_end - t;
    if (dir * remaining <= 0.0) return finish(Termination::MaxTimeReached);
    bool last = false;
    if (std::abs(h) >= std::abs(remaining)) {
      h = remaining;
      last = true;
    }
    if (std::abs(h) < o.min_step) return finish(Termination::StepSizeUnderflow);

    const StepResult r = dopri_step(n, y, k1, h, o.tol);
    if (!(r.err <= 1.0)) {
      const double fac = std::isfinite(r.err) ? std::max(0.2, 0.9 * std::pow(r.err, -0.2)) : 0.2;
      h *= fac;
      continue;
    }

    State y_new = r.y1;
    const bool projected = project_onto_constraint(y_new);
    if (!is_admissible({y_new.x, y_new.y})) {
      // Within rounding of the line: 1+x+y no longer resolves w.
      leg.end.line_abscissa = y.x;
      return finish(Termination::AdmissibleLineAsymptote);
    }

    const double t_new = last ? t_end : t + h;
    while (next_out < outputs.size() && dir * (outputs[next_out] - t_new) < 0.0) {
      const double theta = (outputs[next_out] - t) / h;
      const State s = dense(r.cont, theta);
      leg.samples.push_back({outputs[next_out], s.x, s.y, s.v, s.w});
      ++next_out;
    }
    if (next_out < outputs.size() && outputs[next_out] == t_new) ++next_out;

    t = t_new;
    y = y_new;
    k1 = projected ? field(n, y) : r.k7;
    leg.samples.push_back({t, y.x, y.y, y.v, y.w});

    // Events.
    const double w = y.w;
    const double radius = std::hypot(y.x, y.y);
    if (w < o.line_eps) {
      leg.end.line_abscissa = y.x;
      return finish(Termination::AdmissibleLineAsymptote);
    }
    if (radius > 0.0 && radius < o.origin_eps && radius < r_prev) {
      return finish(Termination::ConvergedToOrigin);
    }
    if (radius > o.blowup_radius) {
      const double rate = std::hypot(k1.x, k1.y);
      leg.end.blowup_time = t + dir * radius / rate;
      return finish(Termination::FiniteTimeBlowup);
    }
    r_prev = radius;

    // PI step-size control.
    constexpr double beta = 0.04;
    constexpr double alpha = 0.2 - 0.75 * beta;
    double fac = 0.9 * std::pow(std::max(r.err, 1e-10), -alpha) * std::pow(err_old, beta);
    fac = std::clamp(fac, 0.2, 10.0);
    err_old = std::max(r.err, 1e-4);
    h *= fac;
  }
}

// Quintic Hermite reconstruction from values and the exact first and second
// derivatives supplied by the vector field.
struct Jet2 {
  double f, d1, d2;
};

std::array<Jet2, 4> state_jets(double n, const Sample& s) {
  const double w = s.w;
  const double a = n * s.x + (n - 1.0) * s.y;
  const double xt = -n * s.x * w;
  const double yt = (1.0 - n) * s.y * w;
  const double wt = -w * a;
  const double xtt = -n * (xt * w + s.x * wt);
  const double ytt = (1.0 - n) * (yt * w + s.y * wt);
  const double wtt = -wt * a - w * (n * xt + (n - 1.0) * yt);
  return {Jet2{s.x, xt, xtt}, Jet2{s.y, yt, ytt}, Jet2{s.v, w, wt}, Jet2{w, wt, wtt}};
}

double hermite5(const Jet2& a, const Jet2& b, double h, double s) {
  const double s2 = s * s, s3 = s2 * s, s4 = s3 * s, s5 = s4 * s;
  const double h0 = 1.0 - 10.0 * s3 + 15.0 * s4 - 6.0 * s5;
  const double h1 = s - 6.0 * s3 + 8.0 * s4 - 3.0 * s5;
  const double h2 = 0.5 * s2 - 1.5 * s3 + 1.5 * s4 - 0.5 * s5;
  const double h3 = 10.0 * s3 - 15.0 * s4 + 6.0 * s5;
  const double h4 = -4.0 * s3 + 7.0 * s4 - 3.0 * s5;
  const double h5 = 0.5 * s3 - s4 + 0.5 * s5;
  return a.f * h0 + h * a.d1 * h1 + h * h * a.d2 * h2 + b.f * h3 + h * b.d1 * h4 + h * h * b.d2 * h5;
}

}  // namespace

Trajectory::Trajectory(Dimension n, std::vector<Sample> samples, TerminationReason forward,
                       TerminationReason backward, bool fixed_point)
    : n_(n),
      samples_(std::move(samples)),
      forward_(forward),
      backward_(backward),
      fixed_point_(fixed_point) {
  if (samples_.empty()) throw std::invalid_argument("trajectory needs at least one sample");
  bool has_origin = false;
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    if (i > 0 && !(samples_[i].t > samples_[i - 1].t)) {
      throw std::invalid_argument("trajectory samples must be strictly increasing in t");
    }
    if (samples_[i].t == 0.0) {
      has_origin = true;
      seed_ = samples_[i].phase();
    }
  }
  if (!has_origin) throw std::invalid_argument("trajectory must contain the sample at t = 0");
}

std::pair<double, double> Trajectory::span() const noexcept {
  if (fixed_point_) return {-kInf, kInf};
  double a = backward_.t_stop;
  double b = forward_.t_stop;
  switch (backward_.kind) {
    case Termination::FiniteTimeBlowup: a = backward_.blowup_time; break;
    case Termination::AdmissibleLineAsymptote: a = -kInf; break;
    default: break;
  }
  switch (forward_.kind) {
    case Termination::ConvergedToOrigin:
    case Termination::AdmissibleLineAsymptote: b = kInf; break;
    case Termination::FiniteTimeBlowup: b = forward_.blowup_time; break;
    default: break;
  }
  return {a, b};
}

bool Trajectory::can_evaluate(double t) const noexcept {
  if (!std::isfinite(t)) return false;
  if (fixed_point_) return true;
  if (t >= first_time() && t <= last_time()) return true;
  return t > last_time() && forward_.kind == Termination::ConvergedToOrigin;
}

Sample Trajectory::state_at(double t) const {
  if (!can_evaluate(t)) {
    throw DomainError("time " + std::to_string(t) + " is outside the sampled span of the trajectory");
  }
  if (fixed_point_) return {t, seed_.x, seed_.y, t, 1.0};
  const double n = n_.real();
  if (t > last_time()) {
    const Sample& e = samples_.back();
    const double dt = t - e.t;
    // Linearised drift of v; the neglected terms are O(|p_e|^2).
    const double v = e.v + dt + e.x * (1.0 - std::exp(-n * dt)) / n +
                     e.y * (1.0 - std::exp((1.0 - n) * dt)) / (n - 1.0);
    const double dv = v - e.v;
    const double x = e.x * std::exp(-n * dv);
    const double y = e.y * std::exp((1.0 - n) * dv);
    return {t, x, y, v, 1.0 + x + y};
  }
  auto it = std::lower_bound(samples_.begin(), samples_.end(), t,
                             [](const Sample& s, double value) { return s.t < value; });
  if (it->t == t) return *it;
  const Sample& b = *it;
  const Sample& a = *(it - 1);
  const double h = b.t - a.t;
  const double s = (t - a.t) / h;
  const auto ja = state_jets(n, a);
  const auto jb = state_jets(n, b);
  return {t, hermite5(ja[0], jb[0], h, s), hermite5(ja[1], jb[1], h, s), hermite5(ja[2], jb[2], h, s),
          hermite5(ja[3], jb[3], h, s)};
}

Trajectory integrate(Dimension n, PhasePoint p0, const IntegrationOptions& o) {
  if (!std::isfinite(p0.x) || !std::isfinite(p0.y) || !std::isfinite(o.tol) ||
      std::isnan(o.t_max) || std::isnan(o.t_min)) {
    throw std::invalid_argument("integrate: non-finite input");
  }
  if (!is_admissible(p0)) throw DomainError("inadmissible initial point: 1+x+y <= 0");
  if (!(o.tol > 0.0)) throw std::invalid_argument("integrate: tol must be positive");
  if (!(o.t_min < 0.0 && o.t_max > 0.0)) throw std::invalid_argument("integrate: need t_min < 0 < t_max");

  std::vector<double> forward_out, backward_out;
  for (double t : o.output_times) {
    if (t > 0.0 && t <= o.t_max) forward_out.push_back(t);
    if (t < 0.0 && t >= o.t_min) backward_out.push_back(t);
  }
  std::sort(forward_out.begin(), forward_out.end());
  std::sort(backward_out.begin(), backward_out.end(), std::greater<>());
  forward_out.erase(std::unique(forward_out.begin(), forward_out.end()), forward_out.end());
  backward_out.erase(std::unique(backward_out.begin(), backward_out.end()), backward_out.end());

  if (p0.x == 0.0 && p0.y == 0.0) {
    // Euclidean fixed point: v = t exactly.
    std::vector<Sample> samples;
    samples.push_back({o.t_min, 0.0, 0.0, o.t_min});
    for (auto it = backward_out.rbegin(); it != backward_out.rend(); ++it) {
      if (*it > o.t_min) samples.push_back({*it, 0.0, 0.0, *it});
    }
    samples.push_back({0.0, 0.0, 0.0, 0.0});
    for (double t : forward_out) {
      if (t < o.t_max) samples.push_back({t, 0.0, 0.0, t});
    }
    samples.push_back({o.t_max, 0.0, 0.0, o.t_max});
    TerminationReason fwd{Termination::MaxTimeReached, o.t_max};
    TerminationReason bwd{Termination::MaxTimeReached, o.t_min};
    return Trajectory(n, std::move(samples), fwd, bwd, true);
  }

  const double nn = n.real();
  Leg fwd = run_leg(nn, p0, o.t_max, forward_out, o);
  Leg bwd = run_leg(nn, p0, o.t_min, backward_out, o);

  std::vector<Sample> samples;
  samples.reserve(fwd.samples.size() + bwd.samples.size() + 1);
  samples.insert(samples.end(), bwd.samples.rbegin(), bwd.samples.rend());
  samples.push_back({0.0, p0.x, p0.y, 0.0, 1.0 + p0.x + p0.y});
  samples.insert(samples.end(), fwd.samples.begin(), fwd.samples.end());
  return Trajectory(n, std::move(samples), fwd.end, bwd.end);
}

Trajectory integrate(Dimension n, PhasePoint p0, double t_max, double t_min, double tol) {
  IntegrationOptions o;
  o.t_max = t_max;
  o.t_min = t_min;
  o.tol = tol;
  return integrate(n, p0, o);
}

double time_to_reach(Dimension n, PhasePoint p0, double target, Axis axis) {
  if (!is_admissible(p0)) throw DomainError("inadmissible initial point: 1+x+y <= 0");
  if (p0.x == 0.0 || p0.y == 0.0) throw DomainError("time_to_reach requires x0*y0 != 0");
  if (std::isnan(target)) throw std::invalid_argument("time_to_reach: target is NaN");

  const double start = axis == Axis::X ? p0.x : p0.y;
  if (target == start) return 0.0;
  if (target == 0.0 || (target > 0.0) != (start > 0.0)) {
    throw DomainError("target not reachable: the coordinate keeps its sign along the orbit");
  }
  const double lo = std::min(start, target);
  const double hi = std::max(start, target);
  for (double w : admissible_line_crossings(n, p0)) {
    const double c = axis == Axis::X ? w : -1.0 - w;
    if (c >= lo && c <= hi) {
      throw DomainError("integrand singularity: the branch meets the admissible line before the target");
    }
  }

  const double nn = n.real();
  const double lambda = level_value(n, p0).lambda;
  double result = 0.0;
  double error = 0.0;
  using boost::math::quadrature::gauss_kronrod;
  if (axis == Axis::X) {
    const double c = (p0.y > 0.0 ? 1.0 : -1.0) * std::pow(lambda, 1.0 / nn);
    auto f = [&](double x) {
      return 1.0 / (-nn * x * (1.0 + x + c * std::pow(std::abs(x), 1.0 - 1.0 / nn)));
    };
    result = gauss_kronrod<double, 31>::integrate(f, lo, hi, 20, 1e-13, &error);
  } else {
    const double c = (p0.x > 0.0 ? 1.0 : -1.0) * std::pow(lambda, -1.0 / (nn - 1.0));
    auto f = [&](double y) {
      return 1.0 / ((1.0 - nn) * y * (1.0 + y + c * std::pow(std::abs(y), nn / (nn - 1.0))));
    };
    result = gauss_kronrod<double, 31>::integrate(f, lo, hi, 20, 1e-13, &error);
  }
  return target >= start ? result : -result;
}

std::optional<double> blowup_time(Dimension n, PhasePoint p0, const IntegrationOptions& options) {
  const Trajectory traj = integrate(n, p0, options);
  if (traj.backward_end().kind == Termination::FiniteTimeBlowup) return traj.backward_end().blowup_time;
  if (traj.forward_end().kind == Termination::FiniteTimeBlowup) return traj.forward_end().blowup_time;
  return std::nullopt;
}

}  // namespace sfk
