#include <doctest.h>

#include <cmath>
#include <random>

#include "sfk/metric_profile.hpp"
#include "sfk/sphere_geometry.hpp"
#include "sfk/verify_suite.hpp"

using namespace sfk;

TEST_CASE("module invariants (fast samples)") {
  for (const auto& r : verify::run_invariants(verify::Mode::Fast)) {
    INFO(verify::format_result(r));
    CHECK(r.passed);
  }
}

TEST_CASE("jet relations at random phase points") {
  std::mt19937_64 gen(99);
  std::uniform_real_distribution<double> ux(-3.0, 8.0), uy(-6.0, 6.0), uv(-2.0, 2.0);
  int checked = 0;
  while (checked < 2000) {
    const PhasePoint p{ux(gen), uy(gen)};
    if (!is_admissible(p)) continue;
    const int n = 2 + checked % 6;
    const double v = uv(gen);
    const MetricJet j = jet_from_phase(Dimension(n), p, v);
    CHECK(j.u_t == doctest::Approx(std::exp(v)).epsilon(1e-15));
    CHECK(j.u_tt == doctest::Approx(j.v_t * j.u_t).epsilon(1e-15));
    CHECK(j.one_minus_v_t == doctest::Approx(-(p.x + p.y)));
    // y = n v_t + v_tt / v_t - n and x = (1-n) v_t - v_tt / v_t + n - 1.
    CHECK(n * j.v_t + j.v_tt / j.v_t - n == doctest::Approx(p.y).scale(1.0).epsilon(1e-11));
    CHECK((1 - n) * j.v_t - j.v_tt / j.v_t + n - 1 == doctest::Approx(p.x).scale(1.0).epsilon(1e-11));
    ++checked;
  }
}

TEST_CASE("closed-form phase curves solve the system") {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> ub(-0.9, 3.0), ut(-2.0, 2.0);
  for (int i = 0; i < 200; ++i) {
    const int n = 2 + i % 5;
    const int k = i % 2 ? n : n - 1;
    const ClosedFormFamily f{Dimension(n), k, 1.0, ub(gen)};
    const MetricProfile p = closed_form_profile(f);
    const double t = std::max(ut(gen), f.t_lower() + 0.5);
    const double h = 1e-4;
    const PhasePoint a = p.phase_at(t - h), b = p.phase_at(t + h), c = p.phase_at(t);
    const FieldVector v = vector_field(Dimension(n), c);
    CHECK((b.x - a.x) / (2 * h) == doctest::Approx(v.dx).scale(1.0).epsilon(1e-6));
    CHECK((b.y - a.y) / (2 * h) == doctest::Approx(v.dy).scale(1.0).epsilon(1e-6));
  }
}
