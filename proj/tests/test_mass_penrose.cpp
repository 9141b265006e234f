#include <doctest.h>

#include <cmath>
#include <numbers>

#include "sfk/mass_penrose.hpp"
#include "sfk/sphere_geometry.hpp"

using namespace sfk;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST_CASE("minimal sphere volume") {
  CHECK(minimal_sphere_volume(Dimension(2), 2.0) == doctest::Approx(4 * pi * pi).epsilon(1e-15));
  CHECK(minimal_sphere_volume(Dimension(2), 1.0 + 1e-12) < 1e-4);
  CHECK_THROWS_AS(minimal_sphere_volume(Dimension(2), 1.0), DomainError);
  CHECK_THROWS_AS(minimal_sphere_volume(Dimension(2), 3.5), DomainError);
  const MetricProfile p = profile_from_trajectory(integrate(Dimension(2), {2.0, -2.5}));
  CHECK(std::abs(minimal_sphere_volume(Dimension(2), 2.0) - sphere_area(p, 0.0)) <= 1e-10);
}

TEST_CASE("unit sphere volume") {
  CHECK(unit_sphere_volume(Dimension(2)) == doctest::Approx(2 * pi * pi).epsilon(1e-15));
  CHECK(unit_sphere_volume(Dimension(3)) == doctest::Approx(pi * pi * pi).epsilon(1e-15));
}

TEST_CASE("reduced Penrose inequality") {
  const ReducedPenrose a = penrose_reduced(Dimension(2), 2.0, -2.5);
  CHECK(a.lhs == doctest::Approx(2.5));
  CHECK(a.rhs == doctest::Approx(0.5));
  CHECK(a.gap == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(a.holds());

  const ReducedPenrose b = penrose_reduced(Dimension(3), 2.5, -10.0 / 3.0);
  CHECK(b.lhs == doctest::Approx(5.0 / 3.0));
  CHECK(b.rhs == doctest::Approx(1.0 / 6.0));
  CHECK(b.gap == doctest::Approx(1.5).epsilon(1e-14));

  for (int n = 2; n <= 8; ++n) {
    for (double x0 : {n - 0.9, n - 0.5, n + 0.3, 2.0 * n - 1}) {
      const double y0 = -((n - 1) * x0 + 2.0 * n - 1) / n;
      CHECK(std::abs(penrose_reduced(Dimension(n), x0, y0).gap - n / (n - 1.0)) <= 1e-12);
    }
  }
  CHECK_THROWS_WITH_AS(penrose_reduced(Dimension(2), 2.0, -2.0), doctest::Contains("seed not minimal"), DomainError);
  CHECK_THROWS_AS(penrose_reduced(Dimension(2), -3.0, 0.5), DomainError);
}

TEST_CASE("full Penrose inequality") {
  const FullPenrose a = penrose_full(Dimension(2), 2.5, 4 * pi * pi);
  CHECK(a.rhs == doctest::Approx(0.5 * std::pow(2.0, 2.0 / 3.0)).epsilon(1e-14));
  CHECK(a.rhs == doctest::Approx(0.7937).epsilon(1e-4));
  CHECK(a.holds);

  const FullPenrose b = penrose_full(Dimension(3), 1.0, unit_sphere_volume(Dimension(3)));
  CHECK(b.rhs == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(b.holds);

  CHECK_FALSE(penrose_full(Dimension(2), 0.0, 3.0).holds);
  CHECK_THROWS_AS(penrose_full(Dimension(2), 1.0, 0.0), DomainError);
}

TEST_CASE("dichotomy reports") {
  SUBCASE("Burns-Simanca seed carries a divisor") {
    const PenroseReport r = dichotomy_report(Dimension(2), {0.0, -0.5});
    CHECK(r.divisor_present);
    CHECK_FALSE(r.stable_sphere);
    CHECK(r.dichotomy_ok);
  }
  SUBCASE("minimal seed carries a stable sphere") {
    const PenroseReport r = dichotomy_report(Dimension(2), {2.0, -2.5});
    CHECK(r.stable_sphere);
    CHECK_FALSE(r.divisor_present);
    CHECK(r.dichotomy_ok);
    REQUIRE(r.holds_reduced.has_value());
    CHECK(*r.holds_reduced);
    CHECK(*r.gap == doctest::Approx(2.0));
    CHECK(*r.m_paper == doctest::Approx(2.5));
    CHECK(*r.V_sigma == doctest::Approx(4 * pi * pi));
    CHECK(*r.holds_full);
    CHECK(*r.m_paper == doctest::Approx(-*r.y0 / 1.0).epsilon(1e-9));
  }
  SUBCASE("region 2 seed has neither") {
    const PenroseReport r = dichotomy_report(Dimension(2), {0.2, 0.2});
    CHECK_FALSE(r.divisor_present);
    CHECK_FALSE(r.stable_sphere);
    CHECK(r.dichotomy_ok);
    CHECK_FALSE(r.gap.has_value());
  }
  SUBCASE("inadmissible seed") {
    CHECK_THROWS_AS(dichotomy_report(Dimension(2), {-2.0, 0.5}), DomainError);
  }
}
