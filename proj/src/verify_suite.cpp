#include "sfk/verify_suite.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include <boost/math/tools/roots.hpp>
#include <fmt/format.h>

#include "sfk/mass_penrose.hpp"
#include "sfk/metric_profile.hpp"
#include "sfk/phase_core.hpp"
#include "sfk/report_io.hpp"
#include "sfk/sphere_geometry.hpp"
#include "sfk/sweep.hpp"

namespace sfk::verify {

namespace {

using Clock = std::chrono::steady_clock;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(gen_); }
  int integer(int a, int b) { return std::uniform_int_distribution<int>(a, b)(gen_); }

  PhasePoint admissible(double x_lo, double x_hi, double y_lo, double y_hi) {
    for (;;) {
      const PhasePoint p{uniform(x_lo, x_hi), uniform(y_lo, y_hi)};
      if (is_admissible(p) && p.x != 0.0 && p.y != 0.0) return p;
    }
  }

 private:
  std::mt19937_64 gen_;
};

template <class F>
void parallel_for(std::size_t count, F&& f) {
  const auto n = static_cast<long long>(count);
#pragma omp parallel for schedule(dynamic, 4)
  for (long long i = 0; i < n; ++i) f(static_cast<std::size_t>(i));
}

struct Seeded {
  Dimension n;
  PhasePoint p;
};

// Random seeds shared by the level, curvature and Ricci criteria.
std::vector<Seeded> drift_seeds(Mode mode) {
  const std::size_t count = mode == Mode::Full ? 1000 : 150;
  Rng rng(20240601);
  std::vector<Seeded> seeds;
  seeds.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    seeds.push_back({Dimension(2 + static_cast<int>(i % 3)), rng.admissible(-3.0, 10.0, -8.0, 6.0)});
  }
  return seeds;
}

std::vector<Trajectory> integrate_all(const std::vector<Seeded>& seeds) {
  std::vector<std::optional<Trajectory>> slots(seeds.size());
  parallel_for(seeds.size(), [&](std::size_t i) { slots[i].emplace(integrate(seeds[i].n, seeds[i].p)); });
  std::vector<Trajectory> out;
  out.reserve(seeds.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

// Times spread over the middle 80% of the sampled span.
std::vector<double> interior_times(const Trajectory& tr, int count) {
  const double a = tr.first_time();
  const double b = tr.last_time();
  const double lo = a + 0.1 * (b - a);
  const double hi = b - 0.1 * (b - a);
  std::vector<double> ts;
  for (int i = 0; i < count; ++i) ts.push_back(lo + (hi - lo) * (i + 0.5) / count);
  return ts;
}

double rel_err(double value, double reference) {
  return std::abs(value - reference) / std::max(std::abs(reference), std::numeric_limits<double>::min());
}

CheckResult verdict(std::string name, bool passed, std::string detail) {
  return {std::move(name), passed, std::move(detail), 0.0};
}

// 1. Euclidean baselines.
CheckResult euclidean_exactness(Mode) {
  const Dimension n(2);
  const MetricProfile traj(integrate(n, {0.0, 0.0}));
  const MetricProfile flat(ClosedFormFamily{n, 1, 1.0, 0.0});
  const double pi2 = std::numbers::pi * std::numbers::pi;
  double worst = 0.0;
  for (const MetricProfile* p : {&traj, &flat}) {
    const double t1 = coordinates::t_from_radius(1.0);
    worst = std::max(worst, std::abs(sphere_area(*p, t1) - 2.0 * pi2));
    worst = std::max(worst, std::abs(ball_volume(*p, t1) - pi2 / 2.0));
    for (int i = 0; i < 20; ++i) {
      const double r = 0.1 * std::pow(100.0, i / 19.0);
      worst = std::max(worst, std::abs(mean_curvature(*p, coordinates::t_from_radius(r)) + 1.0 / r));
    }
  }
  return verdict("", worst <= 1e-12, fmt::format("max abs error {:.3e} (tol 1e-12)", worst));
}

// 2. Level conservation.
CheckResult level_conservation(Mode mode) {
  const auto start = Clock::now();
  const auto seeds = drift_seeds(mode);
  std::vector<double> drift(seeds.size(), 0.0);
  parallel_for(seeds.size(), [&](std::size_t i) { drift[i] = level_drift(integrate(seeds[i].n, seeds[i].p)); });
  const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
  const double worst = *std::max_element(drift.begin(), drift.end());
  const bool ok = worst <= 1e-8 && seconds <= 30.0;
  return verdict("", ok,
                 fmt::format("{} seeds, max |F/F0-1| = {:.3e} (tol 1e-8), {:.2f} s (limit 30 s)", seeds.size(),
                             worst, seconds));
}

// 3. Axis trajectories against the closed forms.
CheckResult closed_form_equivalence(Mode) {
  Rng rng(31337);
  double worst_phase = 0.0;
  double worst_ut = 0.0;
  double worst_axis = 0.0;
  // Same sup restricted to |phase| <= 10: near an escape the relative error
  // grows like |phase| times the accumulated shift of the blowup time.
  double bounded_phase = 0.0;
  double bounded_ut = 0.0;
  for (int i = 0; i < 50; ++i) {
    const Dimension n(2 + i % 5);
    double b = rng.uniform(-0.9, 3.0);
    if (std::abs(b) < 1e-3) b = 0.5;
    for (const int k : {n.value() - 1, n.value()}) {
      const double c = -b / (1.0 + b);
      const bool on_y_axis = k == n.value() - 1;
      const PhasePoint seed = on_y_axis ? PhasePoint{0.0, c} : PhasePoint{c, 0.0};
      const Trajectory tr = integrate(n, seed);
      const MetricProfile exact(ClosedFormFamily{n, k, std::pow(1.0 + b, -1.0 / k), b});
      for (const Sample& s : tr.samples()) {
        const MetricJet j = exact.jet(s.t);
        const double phase_err = on_y_axis ? rel_err(s.y, j.y) : rel_err(s.x, j.x);
        const double ut_err = rel_err(std::exp(s.v), j.u_t);
        worst_phase = std::max(worst_phase, phase_err);
        worst_ut = std::max(worst_ut, ut_err);
        worst_axis = std::max(worst_axis, std::abs(on_y_axis ? s.x : s.y));
        if (std::abs(s.x) + std::abs(s.y) <= 10.0) {
          bounded_phase = std::max(bounded_phase, phase_err);
          bounded_ut = std::max(bounded_ut, ut_err);
        }
      }
    }
  }
  const bool ok = worst_phase <= 1e-8 && worst_ut <= 1e-8 && worst_axis <= 1e-12;
  return verdict("", ok,
                 fmt::format("sup rel error phase {:.3e}, u_t {:.3e} (tol 1e-8); off-axis drift {:.1e}; "
                             "on |phase| <= 10: phase {:.3e}, u_t {:.3e}",
                             worst_phase, worst_ut, worst_axis, bounded_phase, bounded_ut));
}

// 4. Scalar-flatness.
CheckResult scalar_flatness(Mode mode) {
  const auto seeds = drift_seeds(mode);
  const auto trajs = integrate_all(seeds);
  std::vector<double> worst_traj(trajs.size(), 0.0);
  parallel_for(trajs.size(), [&](std::size_t i) {
    const MetricProfile p(trajs[i]);
    for (double t : interior_times(trajs[i], 20)) {
      worst_traj[i] = std::max(worst_traj[i], std::abs(scalar_curvature(p, t)));
    }
  });
  const double wt = *std::max_element(worst_traj.begin(), worst_traj.end());

  Rng rng(4242);
  double wc = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const int nv = rng.integer(2, 8);
    ClosedFormFamily f{Dimension(nv), rng.integer(nv - 1, nv), rng.uniform(0.5, 2.0), rng.uniform(-0.9, 3.0)};
    const double t = f.B < 0.0 ? rng.uniform(f.t_lower() + 0.05, f.t_lower() + 5.0) : rng.uniform(-3.0, 3.0);
    wc = std::max(wc, std::abs(scalar_curvature(MetricProfile(f), t)));
  }
  const bool ok = wt <= 1e-6 && wc <= 1e-10;
  return verdict("", ok,
                 fmt::format("trajectories max |scal| {:.3e} (tol 1e-6) over {}x20 times; closed forms {:.3e} (tol "
                             "1e-10) over 1000",
                             wt, trajs.size(), wc));
}

// 5. Ricci defect equals y.
CheckResult ricci_identity(Mode mode) {
  const auto seeds = drift_seeds(mode);
  const auto trajs = integrate_all(seeds);
  std::vector<double> worst(trajs.size(), 0.0);
  parallel_for(trajs.size(), [&](std::size_t i) {
    const MetricProfile p(trajs[i]);
    for (const Sample& s : trajs[i].samples()) {
      worst[i] = std::max(worst[i], std::abs(ricci_defect(p, s.t) - s.y));
    }
  });
  const double wt = *std::max_element(worst.begin(), worst.end());
  Rng rng(555);
  double wc = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const int nv = rng.integer(2, 8);
    ClosedFormFamily f{Dimension(nv), nv, rng.uniform(0.5, 2.0), rng.uniform(-0.9, 3.0)};
    const double t = f.B < 0.0 ? rng.uniform(f.t_lower() + 0.05, f.t_lower() + 5.0) : rng.uniform(-5.0, 5.0);
    wc = std::max(wc, std::abs(ricci_defect(MetricProfile(f), t)));
  }
  const bool ok = wt <= 1e-12 && wc <= 1e-12;
  return verdict("", ok,
                 fmt::format("max |defect - y| {:.3e} on all samples; k=n closed forms max |defect| {:.3e} (tol 1e-12)",
                             wt, wc));
}

// 6. Minimal spheres of the reference orbits.
CheckResult minimality_reproduction(Mode) {
  const Dimension n(2);
  std::vector<std::string> problems;
  const auto a = find_minimal_spheres(MetricProfile(integrate(n, {2.0, -2.5})));
  if (a.size() != 1) problems.push_back(fmt::format("(2,-2.5): {} minimal spheres, expected exactly 1", a.size()));
  const auto at_zero = std::find_if(a.begin(), a.end(), [](const SphereReport& s) { return std::abs(s.t_star) <= 1e-9; });
  if (at_zero == a.end()) {
    problems.push_back("(2,-2.5): no sphere at t=0");
  } else if (at_zero->stability != Stability::Stable || !at_zero->outermost) {
    problems.push_back("(2,-2.5): sphere at t=0 is not Stable and outermost");
  }
  for (const auto& s : a) {
    if (std::abs(s.t_star) > 1e-9) {
      problems.push_back(fmt::format("(2,-2.5): extra {} sphere at t={:.6f}, x={:.6f}", to_string(s.stability), s.t_star,
                                     s.phase_point.x));
    }
  }
  const auto b = find_minimal_spheres(MetricProfile(integrate(n, {9.0, -6.0})));
  if (b.size() != 1 || b.front().stability != Stability::Unstable) {
    problems.push_back(fmt::format("(9,-6): {} spheres, expected exactly 1 Unstable", b.size()));
  }
  const auto bs = find_minimal_spheres(MetricProfile(integrate(n, {0.0, -0.5})));
  const auto eh = find_minimal_spheres(MetricProfile(integrate(n, {-0.2, 0.0})));
  const auto bs_cf = find_minimal_spheres(MetricProfile(ClosedFormFamily{n, 1, 1.0, 1.0}));
  const auto eh_cf = find_minimal_spheres(MetricProfile(ClosedFormFamily{n, 2, 1.0, 0.25}));
  if (!bs.empty() || !eh.empty() || !bs_cf.empty() || !eh_cf.empty()) {
    problems.push_back("Burns-Simanca/Eguchi-Hanson: minimal spheres found");
  }
  std::string detail = problems.empty() ? "all reference orbits reproduced" : problems.front();
  for (std::size_t i = 1; i < problems.size(); ++i) detail += "; " + problems[i];
  return verdict("", problems.empty(), detail);
}

// 7. Stability identity.
CheckResult stability_identity(Mode) {
  Rng rng(777);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const Dimension n(rng.integer(2, 8));
    const PhasePoint p = rng.admissible(-5.0, 12.0, -10.0, 10.0);
    worst = std::max(worst, std::abs(stability_identity_residual(n, p, rng.uniform(-3.0, 3.0))));
  }
  return verdict("", worst <= 1e-10, fmt::format("max |residual| {:.3e} over 1000 points (tol 1e-10)", worst));
}

// 8. Mass of the Burns-Simanca family and of flat space.
CheckResult mass_reproduction(Mode) {
  Rng rng(8888);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const int nv = 2 + i % 7;
    double b = rng.uniform(0.05, 5.0);
    if (i % 4 == 3) b = -rng.uniform(0.05, 0.9);
    const MassEstimate m = adm_mass(MetricProfile(ClosedFormFamily{Dimension(nv), nv - 1, 1.0, b}));
    worst = std::max(worst, rel_err(m.m_numeric, b / (nv - 1.0)));
  }
  const double flat_traj = adm_mass(MetricProfile(integrate(Dimension(2), {0.0, 0.0}))).m_numeric;
  const double flat_cf = adm_mass(MetricProfile(ClosedFormFamily{Dimension(3), 2, 1.0, 0.0})).m_numeric;
  const bool ok = worst <= 1e-4 && flat_traj == 0.0 && flat_cf == 0.0;
  return verdict("", ok,
                 fmt::format("max rel error {:.3e} over 20 (n,B) (tol 1e-4); Euclidean mass {} / {}", worst, flat_traj,
                             flat_cf));
}

// 9. Penrose gap identity.
CheckResult penrose_gap(Mode) {
  double worst = 0.0;
  int holds_reduced = 0;
  int holds_full = 0;
  int total = 0;
  for (int nv = 2; nv <= 8; ++nv) {
    const Dimension n(nv);
    for (int i = 1; i <= 200; ++i) {
      const double x0 = (nv - 1.0) + nv * (i / 200.0);
      const double y0 = -((nv - 1.0) * x0 + 2.0 * nv - 1.0) / nv;
      const ReducedPenrose r = penrose_reduced(n, x0, y0);
      worst = std::max(worst, std::abs(r.gap - nv / (nv - 1.0)));
      holds_reduced += r.holds();
      holds_full += penrose_full(n, -y0 / (nv - 1.0), minimal_sphere_volume(n, x0)).holds;
      ++total;
    }
  }
  const bool ok = worst <= 1e-12 && holds_reduced == total;
  return verdict("", ok,
                 fmt::format("max |gap - n/(n-1)| {:.3e} (tol 1e-12); reduced holds {}/{}; full holds {}/{} "
                             "(informational)",
                             worst, holds_reduced, total, holds_full, total));
}

// 10. Dichotomy sweep.
CheckResult dichotomy(Mode mode) {
  const auto start = Clock::now();
  const std::size_t count = mode == Mode::Full ? 10000 : 1500;
  Rng rng(1010);
  std::vector<Seeded> seeds;
  seeds.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const Dimension n(2 + static_cast<int>(i % 3));
    const double nn = n.real();
    const int kind = rng.integer(0, 19);
    PhasePoint p;
    if (kind < 2) {
      p = {0.0, rng.uniform(-0.95, 4.0)};
    } else if (kind < 4) {
      p = {rng.uniform(-0.95, 4.0), 0.0};
    } else if (kind < 7) {
      const double x0 = rng.uniform(nn - 1.0 + 1e-3, 2.0 * nn + 3.0);
      p = {x0, -((nn - 1.0) * x0 + 2.0 * nn - 1.0) / nn};
    } else {
      p = rng.admissible(-2.0, 10.0, -8.0, 5.0);
    }
    seeds.push_back({n, p});
  }
  std::vector<std::optional<PenroseReport>> reports(count);
  std::vector<std::string> errors(count);
  parallel_for(count, [&](std::size_t i) {
    try {
      reports[i] = dichotomy_report(seeds[i].n, seeds[i].p);
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  });
  std::size_t both = 0, stable = 0, divisor = 0, failed = 0;
  for (std::size_t i = 0; i < count; ++i) {
    if (!reports[i]) {
      ++failed;
      continue;
    }
    stable += reports[i]->stable_sphere;
    divisor += reports[i]->divisor_present;
    both += reports[i]->stable_sphere && reports[i]->divisor_present;
  }
  const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
  const bool ok = both == 0 && failed == 0 && stable > 0 && divisor > 0 && seconds <= 120.0;
  return verdict("", ok,
                 fmt::format("{} seeds: {} with stable sphere, {} with divisor, {} with both, {} errors; {:.2f} s "
                             "(limit 120 s)",
                             count, stable, divisor, both, failed, seconds));
}

// 11. Limit of the inner critical arc.
CheckResult fyz_limit(Mode) {
  std::string detail;
  bool ok = true;
  for (int nv = 2; nv <= 4; ++nv) {
    const Dimension n(nv);
    const FyzLimit f = fyz_limit_check(n);
    const PhasePoint target = tangency_point(n);
    const double dist = std::hypot(f.limit.x - target.x, f.limit.y - target.y);
    const bool this_ok = dist <= 1e-4 && f.forward_end.kind == Termination::ConvergedToOrigin;
    ok = ok && this_ok;
    detail += fmt::format("{}n={}: dist {:.2e}, forward {}", detail.empty() ? "" : "; ", nv, dist,
                          to_string(f.forward_end.kind));
  }
  return verdict("", ok, detail + " (tol 1e-4)");
}

// 12. First variation of area.
CheckResult first_variation(Mode) {
  Rng rng(1212);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    std::optional<MetricProfile> profile;
    double t = 0.0;
    if (i % 2 == 0) {
      const int nv = rng.integer(2, 6);
      ClosedFormFamily f{Dimension(nv), rng.integer(nv - 1, nv), rng.uniform(0.5, 2.0), rng.uniform(-0.9, 3.0)};
      profile.emplace(f);
      t = rng.uniform(std::max(f.t_lower() + 0.3, -3.0), 3.0);
    } else {
      const Dimension n(rng.integer(2, 4));
      const Trajectory tr = integrate(n, rng.admissible(-2.0, 6.0, -5.0, 4.0));
      const double lo = std::max(0.7 * tr.first_time(), -3.0);
      const double hi = std::min(0.7 * tr.last_time(), 3.0);
      t = rng.uniform(lo, hi);
      profile.emplace(tr);
    }
    const MetricProfile& p = *profile;
    const double h = 1e-3;
    auto area = [&](double s) { return sphere_area(p, s); };
    const double fd = (-area(t + 2 * h) + 8 * area(t + h) - 8 * area(t - h) + area(t - 2 * h)) / (12 * h);
    const double n = p.dimension().real();
    const double exact = -(2 * n - 1) * mean_curvature(p, t) * std::sqrt(p.u_tt(t) / 2) * area(t);
    worst = std::max(worst, rel_err(fd, exact));
  }
  return verdict("", worst <= 1e-6, fmt::format("max rel error {:.3e} over 100 (profile, t) pairs (tol 1e-6)", worst));
}

using CriterionFn = CheckResult (*)(Mode);

struct Criterion {
  std::string_view title;
  CriterionFn fn;
};

const Criterion kCriteria[kCriterionCount] = {
    {"euclidean exactness", euclidean_exactness},
    {"level conservation", level_conservation},
    {"closed-form equivalence", closed_form_equivalence},
    {"scalar flatness", scalar_flatness},
    {"ricci defect identity", ricci_identity},
    {"minimal sphere reproduction", minimality_reproduction},
    {"stability identity", stability_identity},
    {"mass reproduction", mass_reproduction},
    {"penrose gap identity", penrose_gap},
    {"stable sphere / divisor dichotomy", dichotomy},
    {"critical arc limit", fyz_limit},
    {"first variation of area", first_variation},
};

CheckResult timed(std::string name, const std::function<CheckResult()>& body) {
  const auto start = Clock::now();
  CheckResult r;
  try {
    r = body();
  } catch (const std::exception& e) {
    r = verdict("", false, std::string("exception: ") + e.what());
  }
  r.name = std::move(name);
  r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return r;
}

// ---- module invariants ----

CheckResult inv_level_flow_invariance(Mode mode) {
  Rng rng(1);
  const int count = mode == Mode::Full ? 10000 : 2000;
  double worst = 0.0;
  for (int i = 0; i < count; ++i) {
    const Dimension n(rng.integer(2, 8));
    const PhasePoint p = rng.admissible(-5.0, 12.0, -10.0, 10.0);
    const double nn = n.real();
    const double f = level_value(n, p).lambda;
    const double fx = (1.0 - nn) * f / p.x;
    const double fy = nn * f / p.y;
    const FieldVector v = vector_field(n, p);
    const double dot = fx * v.dx + fy * v.dy;
    const double scale = std::hypot(fx, fy) * std::hypot(v.dx, v.dy);
    if (scale > 0.0) worst = std::max(worst, std::abs(dot) / scale);
  }
  return verdict("", worst <= 1e-12, fmt::format("max |grad F . V| / (|grad F||V|) = {:.3e}", worst));
}

CheckResult inv_field_zero_set(Mode) {
  Rng rng(2);
  int bad = 0;
  for (int i = 0; i < 5000; ++i) {
    const Dimension n(rng.integer(2, 8));
    const double x = rng.uniform(-5.0, 12.0);
    PhasePoint p{x, rng.uniform(-10.0, 10.0)};
    if (i % 3 == 0) p.y = -1.0 - x;
    if (i % 97 == 0) p = {0.0, 0.0};
    const FieldVector v = vector_field(n, p);
    const bool zero = v.dx == 0.0 && v.dy == 0.0;
    const bool expected = 1.0 + p.x + p.y == 0.0 || (p.x == 0.0 && p.y == 0.0);
    bad += zero != expected;
  }
  return verdict("", bad == 0, fmt::format("{} mismatches of the zero set", bad));
}

CheckResult inv_tangency(Mode) {
  double worst = 0.0;
  for (int nv = 2; nv <= 8; ++nv) {
    const Dimension n(nv);
    const PhasePoint t = tangency_point(n);
    worst = std::max({worst, std::abs(1.0 + t.x + t.y), std::abs(minimal_line_residual(n, t)),
                      rel_err(level_value(n, t).lambda, lambda_critical(n))});
  }
  return verdict("", worst <= 1e-12, fmt::format("max defect {:.3e} for 2 <= n <= 8", worst));
}

CheckResult inv_classify_total(Mode) {
  Rng rng(3);
  int bad = 0;
  for (int i = 0; i < 20000; ++i) {
    const Dimension n(rng.integer(2, 8));
    PhasePoint p{rng.uniform(-6.0, 12.0), rng.uniform(-10.0, 10.0)};
    if (i % 5 == 0) p.x = 0.0;
    if (i % 7 == 0) p.y = 0.0;
    const RegionLabel l = classify(n, p);
    bad += (l.tag == Region::Inadmissible) != (1.0 + p.x + p.y <= 0.0);
  }
  return verdict("", bad == 0, fmt::format("{} points with inconsistent admissibility tag", bad));
}

CheckResult inv_axes_invariant(Mode) {
  Rng rng(4);
  int bad = 0;
  for (int i = 0; i < 2000; ++i) {
    const Dimension n(rng.integer(2, 8));
    bad += vector_field(n, {0.0, rng.uniform(-10.0, 10.0)}).dx != 0.0;
    bad += vector_field(n, {rng.uniform(-10.0, 10.0), 0.0}).dy != 0.0;
  }
  return verdict("", bad == 0, fmt::format("{} axis points leaving the axis", bad));
}

CheckResult inv_samples_admissible(Mode mode) {
  const auto seeds = drift_seeds(mode);
  const auto trajs = integrate_all(seeds);
  std::size_t bad = 0, total = 0;
  for (const auto& tr : trajs) {
    for (const Sample& s : tr.samples()) {
      bad += !is_admissible(s.phase());
      ++total;
    }
  }
  return verdict("", bad == 0, fmt::format("{} of {} samples inadmissible", bad, total));
}

CheckResult inv_axis_seeds(Mode) {
  Rng rng(5);
  double worst = 0.0;
  for (int i = 0; i < 40; ++i) {
    const Dimension n(rng.integer(2, 6));
    const double c = rng.uniform(-0.9, 3.0);
    const PhasePoint seed = i % 2 ? PhasePoint{0.0, c} : PhasePoint{c, 0.0};
    for (const Sample& s : integrate(n, seed).samples()) worst = std::max(worst, std::abs(i % 2 ? s.x : s.y));
  }
  return verdict("", worst <= 1e-12, fmt::format("max off-axis drift {:.3e}", worst));
}

CheckResult inv_time_reversal(Mode) {
  Rng rng(6);
  double worst = 0.0;
  int used = 0;
  for (int i = 0; i < 60; ++i) {
    const Dimension n(rng.integer(2, 4));
    const PhasePoint p0 = rng.admissible(-0.8, 3.0, -0.8, 3.0);
    const Trajectory fwd = integrate(n, p0, 2.0, -1e-9, 1e-10);
    if (fwd.forward_end().kind != Termination::MaxTimeReached) continue;
    const PhasePoint p1 = fwd.samples().back().phase();
    const Trajectory back = integrate(n, p1, 1e-9, -2.0, 1e-10);
    if (back.backward_end().kind != Termination::MaxTimeReached) continue;
    const PhasePoint q = back.samples().front().phase();
    worst = std::max(worst, std::hypot(q.x - p0.x, q.y - p0.y));
    ++used;
  }
  return verdict("", used > 0 && worst <= 1e-7, fmt::format("{} seeds, max return error {:.3e}", used, worst));
}

CheckResult inv_quadrature_agreement(Mode) {
  Rng rng(7);
  double worst = 0.0;
  for (int i = 0; i < 40; ++i) {
    const Dimension n(rng.integer(2, 4));
    const PhasePoint p0{rng.uniform(0.05, 3.0), rng.uniform(0.05, 3.0)};
    const Trajectory tr = integrate(n, p0);
    const double t = rng.uniform(-0.1, 2.0);
    if (!tr.can_evaluate(t)) continue;
    const Sample s = tr.state_at(t);
    worst = std::max(worst, std::abs(time_to_reach(n, p0, s.x, Axis::X) - t));
    worst = std::max(worst, std::abs(time_to_reach(n, p0, s.y, Axis::Y) - t));
  }
  return verdict("", worst <= 1e-6, fmt::format("max |t_quad - t_ode| {:.3e} on Region2 seeds", worst));
}

CheckResult inv_derivative_chain(Mode) {
  Rng rng(8);
  double worst = 0.0;
  for (int i = 0; i < 40; ++i) {
    const Dimension n(rng.integer(2, 4));
    const Trajectory tr = integrate(n, rng.admissible(-0.8, 3.0, -0.8, 3.0));
    const double lo = std::max(tr.first_time() * 0.5, -2.0);
    const double hi = std::min(tr.last_time() * 0.5, 2.0);
    const double t = rng.uniform(lo, hi);
    const double h = 1e-3;
    if (!tr.can_evaluate(t - 2 * h) || !tr.can_evaluate(t + 2 * h)) continue;
    const MetricProfile p(tr);
    auto vt = [&](double s) { return p.v_t(s); };
    const double d1 = (-vt(t + 2 * h) + 8 * vt(t + h) - 8 * vt(t - h) + vt(t - 2 * h)) / (12 * h);
    const double d2 = (-vt(t + 2 * h) + 16 * vt(t + h) - 30 * vt(t) + 16 * vt(t - h) - vt(t - 2 * h)) / (12 * h * h);
    const MetricJet j = p.jet(t);
    worst = std::max(worst, std::abs(d1 - j.v_tt) / std::max(1.0, std::abs(j.v_tt)));
    worst = std::max(worst, std::abs(d2 - j.v_ttt) / std::max(1.0, std::abs(j.v_ttt)));
  }
  return verdict("", worst <= 1e-5, fmt::format("max rel error of v_tt, v_ttt vs finite differences {:.3e}", worst));
}

CheckResult inv_ale_coefficient(Mode) {
  Rng rng(9);
  double worst = 0.0;
  int used = 0;
  for (int i = 0; i < 40; ++i) {
    const Dimension n(rng.integer(2, 4));
    const Trajectory tr = integrate(n, rng.admissible(-0.8, 3.0, -0.8, 3.0));
    if (tr.forward_end().kind != Termination::ConvergedToOrigin) continue;
    const MetricProfile p(tr);
    const double a = p.u_t(20.0) * std::exp(-20.0);
    const double b = p.u_t(40.0) * std::exp(-40.0);
    if (!(b > 0.0) || !std::isfinite(b)) return verdict("", false, "ALE coefficient not positive and finite");
    worst = std::max(worst, rel_err(a, b));
    ++used;
  }
  return verdict("", used > 0 && worst <= 1e-6,
                 fmt::format("{} AE profiles, max rel change of u_t e^-t from t=20 to 40: {:.3e}", used, worst));
}

CheckResult inv_mean_curvature_forms(Mode) {
  Rng rng(10);
  double worst = 0.0;
  for (int i = 0; i < 40; ++i) {
    const Dimension n(rng.integer(2, 4));
    const Trajectory tr = integrate(n, rng.admissible(-0.8, 3.0, -0.8, 3.0));
    const MetricProfile p(tr);
    for (const Sample& s : tr.samples()) {
      if (std::abs(s.x) + std::abs(s.y) > 1e3 || std::abs(s.t) > 20.0) continue;
      const double hu = mean_curvature(p, s.t);
      const double hp = mean_curvature_phase(n, s);
      worst = std::max(worst, std::abs(hu - hp) / std::max(1.0, std::abs(hp)));
    }
  }
  return verdict("", worst <= 1e-12, fmt::format("max |H_u - H_phase| {:.3e}", worst));
}

struct MinimalSeed {
  Dimension n;
  PhasePoint p;
};

std::vector<MinimalSeed> minimal_seeds(Rng& rng, int count, double x_hi_extra) {
  std::vector<MinimalSeed> out;
  for (int i = 0; i < count; ++i) {
    const Dimension n(rng.integer(2, 5));
    const double nn = n.real();
    const double x0 = rng.uniform(nn - 1.0 + 1e-2, 2.0 * nn - 1.0 + x_hi_extra);
    out.push_back({n, {x0, -((nn - 1.0) * x0 + 2.0 * nn - 1.0) / nn}});
  }
  return out;
}

CheckResult inv_minimality_roots(Mode) {
  Rng rng(11);
  double worst = 0.0;
  for (const auto& ms : minimal_seeds(rng, 30, 4.0)) {
    const MetricProfile p(integrate(ms.n, ms.p));
    for (const auto& s : find_minimal_spheres(p)) {
      if (std::abs(minimal_line_residual(ms.n, s.phase_point)) > 1e-12) {
        return verdict("", false, fmt::format("residual {:.3e} at a refined root", minimal_line_residual(ms.n, s.phase_point)));
      }
      const double lo = s.t_star - 1e-3;
      const double hi = s.t_star + 1e-3;
      auto h = [&](double t) { return mean_curvature(p, t); };
      if (!p.contains(lo) || !p.contains(hi) || h(lo) * h(hi) > 0.0) continue;
      std::uintmax_t iters = 200;
      const auto [a, b] = boost::math::tools::toms748_solve(h, lo, hi, boost::math::tools::eps_tolerance<double>(50), iters);
      worst = std::max(worst, std::abs(0.5 * (a + b) - s.t_star));
    }
  }
  return verdict("", worst <= 1e-10, fmt::format("max |t(H=0) - t(residual=0)| {:.3e}", worst));
}

CheckResult inv_stability_sign(Mode) {
  Rng rng(12);
  int bad = 0, total = 0;
  for (const auto& ms : minimal_seeds(rng, 40, 4.0)) {
    const MetricProfile p(integrate(ms.n, ms.p));
    for (const auto& s : find_minimal_spheres(p)) {
      const double sum = s.phase_point.x + s.phase_point.y;
      if (std::abs(sum) < 1e-6) continue;
      const double f = stability_functional(p, s.t_star);
      bad += (f > 0.0) != (-sum > 0.0);
      ++total;
    }
  }
  return verdict("", bad == 0 && total > 0, fmt::format("{} of {} minimal points with mismatched sign", bad, total));
}

CheckResult inv_complete_no_spheres(Mode mode) {
  Rng rng(13);
  const int count = mode == Mode::Full ? 600 : 150;
  int bad = 0, used = 0;
  for (int i = 0; i < count; ++i) {
    const Dimension n(2 + i % 3);
    PhasePoint p = rng.admissible(-3.0, 10.0, -8.0, 6.0);
    if (i % 4 == 0) p.x = 0.0;
    if (i % 4 == 1) p.y = 0.0;
    if (!is_admissible(p)) continue;
    const RegionLabel l = classify(n, p);
    if (!l.complete_without_boundary) continue;
    bad += !find_minimal_spheres(MetricProfile(integrate(n, p))).empty();
    ++used;
  }
  return verdict("", bad == 0 && used > 0, fmt::format("{} of {} complete metrics with minimal spheres", bad, used));
}

CheckResult inv_stable_window_seeds(Mode) {
  Rng rng(14);
  int bad = 0, total = 0;
  for (const auto& ms : minimal_seeds(rng, 40, 0.0)) {
    const auto spheres = find_minimal_spheres(MetricProfile(integrate(ms.n, ms.p)));
    const auto stable = std::count_if(spheres.begin(), spheres.end(),
                                      [](const SphereReport& s) { return s.stability != Stability::Unstable; });
    bad += stable != 1;
    ++total;
  }
  return verdict("", bad == 0, fmt::format("{} of {} stable-window seeds without exactly one stable sphere", bad, total));
}

CheckResult inv_volume_monotone(Mode) {
  int bad = 0;
  for (int nv = 2; nv <= 8; ++nv) {
    double prev = 0.0;
    for (int i = 1; i <= 200; ++i) {
      const double v = minimal_sphere_volume(Dimension(nv), (nv - 1.0) + nv * (i / 200.0));
      bad += !(v > prev);
      prev = v;
    }
  }
  return verdict("", bad == 0, fmt::format("{} non-increasing steps of V_sigma", bad));
}

CheckResult inv_mass_consistency(Mode) {
  Rng rng(15);
  double worst = 0.0;
  int used = 0;
  for (const auto& ms : minimal_seeds(rng, 30, 0.0)) {
    const PenroseReport r = dichotomy_report(ms.n, ms.p);
    if (!r.stable_sphere) continue;
    worst = std::max(worst, std::abs(*r.m_paper + *r.y0 / (ms.n.real() - 1.0)));
    worst = std::max(worst, std::abs(*r.x0 - ms.p.x));
    ++used;
  }
  return verdict("", used > 0 && worst <= 1e-9, fmt::format("{} reports, max deviation {:.3e}", used, worst));
}

CheckResult inv_sweep_serial_parallel(Mode) {
  const auto seeds = SeedGrid::parse("-0.9:6:15,-3:3:15").points();
  IntegrationOptions o;
  const auto a = dichotomy_sweep(Dimension(2), seeds, o, Execution::Serial);
  const auto b = dichotomy_sweep(Dimension(2), seeds, o, Execution::Parallel);
  int diff = 0;
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    const bool ha = a[i].value.has_value();
    if (ha != b[i].value.has_value() || a[i].error != b[i].error) {
      ++diff;
      continue;
    }
    if (ha && penrose_json(*a[i].value) != penrose_json(*b[i].value)) ++diff;
  }
  return verdict("", diff == 0, fmt::format("{} of {} items differ", diff, seeds.size()));
}

CheckResult inv_csv_round_trip(Mode) {
  int bad = 0;
  for (const PhasePoint p : {PhasePoint{2.0, -2.5}, PhasePoint{0.0, 0.0}, PhasePoint{0.2, 0.2}}) {
    const TrajectoryTable t = trajectory_table(MetricProfile(integrate(Dimension(2), p)));
    std::stringstream ss;
    write_trajectory_csv(ss, t);
    const TrajectoryTable r = read_trajectory_csv(ss);
    bad += r.rows.size() != t.rows.size() || r.comments != t.comments;
    for (std::size_t i = 0; i < std::min(r.rows.size(), t.rows.size()); ++i) {
      const auto& u = t.rows[i];
      const auto& w = r.rows[i];
      bad += u.t != w.t || u.x != w.x || u.y != w.y || u.v != w.v || u.u_t != w.u_t || u.u_tt != w.u_tt ||
             u.H != w.H || u.scal_residual != w.scal_residual;
    }
  }
  return verdict("", bad == 0, fmt::format("{} mismatching rows", bad));
}

struct Invariant {
  std::string_view name;
  CriterionFn fn;
};

const Invariant kInvariants[] = {
    {"phase_core: level function is invariant under the flow", inv_level_flow_invariance},
    {"phase_core: field vanishes exactly on the admissible line and the origin", inv_field_zero_set},
    {"phase_core: tangency point on both lines and the critical level", inv_tangency},
    {"phase_core: classification is total", inv_classify_total},
    {"phase_core: axes are invariant", inv_axes_invariant},
    {"ode_engine: samples stay admissible", inv_samples_admissible},
    {"ode_engine: axis seeds stay on the axis", inv_axis_seeds},
    {"ode_engine: time reversal returns to the seed", inv_time_reversal},
    {"ode_engine: quadrature agrees with the integrator", inv_quadrature_agreement},
    {"metric_profile: derivative chain matches finite differences", inv_derivative_chain},
    {"metric_profile: ALE coefficient converges", inv_ale_coefficient},
    {"sphere_geometry: phase and potential forms of H agree", inv_mean_curvature_forms},
    {"sphere_geometry: H vanishes at the minimal-line roots", inv_minimality_roots},
    {"sphere_geometry: stability sign matches -(x+y)", inv_stability_sign},
    {"sphere_geometry: complete metrics have no minimal spheres", inv_complete_no_spheres},
    {"sphere_geometry: stable-window seeds carry one stable sphere", inv_stable_window_seeds},
    {"mass_penrose: V_sigma increases across the window", inv_volume_monotone},
    {"mass_penrose: m_paper matches the sphere's phase point", inv_mass_consistency},
    {"sweep: serial and parallel sweeps agree", inv_sweep_serial_parallel},
    {"report_io: CSV round trip is exact", inv_csv_round_trip},
};

}  // namespace

std::string_view criterion_title(int id) {
  if (id < 1 || id > kCriterionCount) throw std::out_of_range("criterion id must be in 1..12");
  return kCriteria[id - 1].title;
}

CheckResult run_criterion(int id, Mode mode) {
  if (id < 1 || id > kCriterionCount) throw std::out_of_range("criterion id must be in 1..12");
  const Criterion& c = kCriteria[id - 1];
  return timed(fmt::format("criterion {:>2}: {}", id, c.title), [&] { return c.fn(mode); });
}

std::vector<CheckResult> run_invariants(Mode mode) {
  std::vector<CheckResult> out;
  for (const Invariant& inv : kInvariants) {
    out.push_back(timed(std::string(inv.name), [&] { return inv.fn(mode); }));
  }
  return out;
}

std::vector<CheckResult> run_all(Mode mode) {
  std::vector<CheckResult> out;
  for (int id = 1; id <= kCriterionCount; ++id) out.push_back(run_criterion(id, mode));
  for (auto& r : run_invariants(mode)) out.push_back(std::move(r));
  return out;
}

std::string format_result(const CheckResult& r) {
  return fmt::format("{}  {}  {} ({:.2f} s)", r.passed ? "PASS" : "FAIL", r.name, r.detail, r.seconds);
}

}  // namespace sfk::verify
