#include <doctest.h>

#include <cmath>
#include <limits>

#include "sfk/ode_engine.hpp"

using namespace sfk;

TEST_CASE("y axis seed follows the Burns-Simanca phase curve") {
  const Trajectory tr = integrate(Dimension(2), {0.0, -0.5});
  CHECK(tr.forward_end().kind == Termination::ConvergedToOrigin);
  const Sample s = tr.state_at(1.0);
  CHECK(s.x == 0.0);
  CHECK(s.y == doctest::Approx(-1.0 / (1.0 + std::exp(1.0))).epsilon(1e-9));
  CHECK(s.y == doctest::Approx(-0.268941).epsilon(1e-6));
  for (const Sample& p : tr.samples()) {
    CHECK(p.x == 0.0);
    CHECK(p.y == doctest::Approx(-1.0 / (1.0 + std::exp(p.t))).epsilon(1e-8));
  }
}

TEST_CASE("samples are ordered, admissible and normalized at t = 0") {
  const Trajectory tr = integrate(Dimension(3), {1.5, -1.2});
  double prev = -std::numeric_limits<double>::infinity();
  bool has_zero = false;
  for (const Sample& s : tr.samples()) {
    CHECK(s.t > prev);
    prev = s.t;
    CHECK(is_admissible(s.phase()));
    if (s.t == 0.0) {
      has_zero = true;
      CHECK(s.v == 0.0);
    }
  }
  CHECK(has_zero);
}

TEST_CASE("region 2 seed converges to the origin") {
  const Trajectory tr = integrate(Dimension(2), {0.2, 0.2});
  CHECK(tr.forward_end().kind == Termination::ConvergedToOrigin);
  // The exterior end is a blowup in the past.
  CHECK(tr.backward_end().kind == Termination::FiniteTimeBlowup);
  const auto T = blowup_time(Dimension(2), {0.2, 0.2});
  REQUIRE(T.has_value());
  CHECK(*T < 0.0);
  CHECK(*T == doctest::Approx(tr.backward_end().blowup_time).epsilon(1e-9));
}

TEST_CASE("region 4 seed blows up and ends on the admissible line") {
  const Dimension n(2);
  // x grows towards the past here, so the escape is backward in t; the line
  // is approached slowly and needs a long forward run.
  IntegrationOptions o;
  o.t_max = 1000.0;
  const Trajectory tr = integrate(n, {3.0, -3.5}, o);
  const TerminationReason& blow = tr.backward_end();
  const TerminationReason& line = tr.forward_end();
  REQUIRE(blow.kind == Termination::FiniteTimeBlowup);
  REQUIRE(line.kind == Termination::AdmissibleLineAsymptote);
  CHECK(blow.blowup_time < 0.0);
  CHECK(1.0 + line.limit_point().x + line.limit_point().y == doctest::Approx(0.0));
  // The limit point lies on the same level: (1+w)^2 / w = 12.25 / 3.
  const double w = line.line_abscissa;
  CHECK((1.0 + w) * (1.0 + w) / w == doctest::Approx(12.25 / 3.0).epsilon(1e-6));

  const auto T = blowup_time(n, {3.0, -3.5});
  REQUIRE(T.has_value());
  CHECK(*T == doctest::Approx(blow.blowup_time).epsilon(1e-9));
  const double quad = time_to_reach(n, {3.0, -3.5}, std::numeric_limits<double>::infinity(), Axis::X);
  CHECK(std::abs(quad - *T) <= 1e-5);
}

TEST_CASE("global axis solution has no blowup") {
  CHECK_FALSE(blowup_time(Dimension(2), {0.0, -0.5}).has_value());
}

TEST_CASE("quadrature agrees with the integrator") {
  const Dimension n(2);
  const PhasePoint p0{0.5, -0.25};
  const Trajectory tr = integrate(n, p0);
  const Sample s = tr.state_at(2.0);
  CHECK(std::abs(time_to_reach(n, p0, s.x, Axis::X) - 2.0) <= 1e-6);
  CHECK(std::abs(time_to_reach(n, p0, s.y, Axis::Y) - 2.0) <= 1e-6);
  CHECK(time_to_reach(n, p0, p0.x, Axis::X) == 0.0);
}

TEST_CASE("level is conserved along a generic orbit") {
  const Dimension n(3);
  const PhasePoint p0{2.0, -1.5};
  const Trajectory tr = integrate(n, p0);
  auto F = [](PhasePoint p) { return std::pow(std::abs(p.x), -2.0) * std::pow(std::abs(p.y), 3.0); };
  const double f0 = F(p0);
  for (const Sample& s : tr.samples()) {
    if (s.x == 0.0 || s.y == 0.0) continue;
    CHECK(std::abs(F(s.phase()) / f0 - 1.0) <= 1e-8);
  }
}

TEST_CASE("output times are honoured") {
  IntegrationOptions o;
  o.output_times = {-0.3, 0.25, 1.5};
  const Trajectory tr = integrate(Dimension(2), {0.2, 0.2}, o);
  for (double t : o.output_times) {
    bool found = false;
    for (const Sample& s : tr.samples()) found = found || s.t == t;
    CHECK(found);
  }
}

TEST_CASE("fixed point") {
  const Trajectory tr = integrate(Dimension(2), {0.0, 0.0});
  CHECK(tr.is_fixed_point());
  const Sample s = tr.state_at(3.0);
  CHECK(s.x == 0.0);
  CHECK(s.y == 0.0);
  CHECK(s.v == doctest::Approx(3.0));
}

TEST_CASE("bad input") {
  CHECK_THROWS_AS(integrate(Dimension(2), {-2.0, 0.5}), DomainError);
  CHECK_THROWS(integrate(Dimension(2), {std::nan(""), 0.0}));
  CHECK_THROWS(integrate(Dimension(2), {0.1, 0.1}, 1.0, -1.0, 0.0));
  const Trajectory tr = integrate(Dimension(2), {3.0, -3.5});
  CHECK_THROWS_AS(tr.state_at(1e6), DomainError);
}
