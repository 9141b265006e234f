#include <doctest.h>

#include <cmath>

#include "sfk/phase_core.hpp"

using namespace sfk;

TEST_CASE("vector field values") {
  const FieldVector v = vector_field(Dimension(2), {1.0, 1.0});
  CHECK(v.dx == -6.0);
  CHECK(v.dy == -3.0);

  for (int n = 2; n <= 8; ++n) {
    const FieldVector o = vector_field(Dimension(n), {0.0, 0.0});
    CHECK(o.dx == 0.0);
    CHECK(o.dy == 0.0);
  }
  for (double x : {-3.0, -0.5, 0.1, 2.0, 7.25}) {
    const FieldVector z = vector_field(Dimension(3), {x, -1.0 - x});
    CHECK(z.dx == 0.0);
    CHECK(z.dy == 0.0);
  }
}

TEST_CASE("level function") {
  CHECK(level_value(Dimension(2), {1.0, -2.0}).lambda == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(level_value(Dimension(2), {4.0, 1.0}).lambda == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(level_value(Dimension(2), {0.7, 0.0}).lambda == 0.0);
  CHECK(level_value(Dimension(3), {0.0, -0.4}).is_infinite());
  CHECK_THROWS_AS(level_value(Dimension(2), {0.0, 0.0}), DomainError);
}

TEST_CASE("critical level and tangency point") {
  CHECK(lambda_critical(Dimension(2)) == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(lambda_critical(Dimension(3)) == doctest::Approx(6.75).epsilon(1e-15));
  CHECK(lambda_critical(Dimension(4)) == doctest::Approx(256.0 / 27.0).epsilon(1e-15));

  CHECK(tangency_point(Dimension(2)) == PhasePoint{1.0, -2.0});
  CHECK(tangency_point(Dimension(3)) == PhasePoint{2.0, -3.0});
  for (int n = 2; n <= 8; ++n) {
    const Dimension d(n);
    const PhasePoint t = tangency_point(d);
    CHECK(1.0 + t.x + t.y == 0.0);
    CHECK(minimal_line_residual(d, t) == 0.0);
    const double expected = std::pow(n, n) / std::pow(n - 1, n - 1);
    CHECK(level_value(d, t).lambda == doctest::Approx(expected).epsilon(1e-13));
  }
}

TEST_CASE("minimal line residual") {
  CHECK(minimal_line_residual(Dimension(2), {2.0, -2.5}) == 0.0);
  CHECK(minimal_line_residual(Dimension(2), {0.0, 0.0}) == 3.0);
  CHECK(minimal_line_residual(Dimension(2), {9.0, -6.0}) == 0.0);
}

TEST_CASE("classification examples") {
  const Dimension n2(2);
  CHECK(classify(n2, {0.0, 0.0}).tag == Region::EuclideanFixedPoint);
  CHECK(classify(n2, {0.0, 0.0}).domain == DomainKind::WholeSpace);

  const RegionLabel r4 = classify(n2, {3.0, -3.5});
  CHECK(r4.tag == Region::Region4_FiniteTimeBlowup);
  CHECK(r4.domain == DomainKind::BoundedBoundary);
  CHECK_FALSE(r4.complete_without_boundary);

  const RegionLabel r5 = classify(n2, {-0.5, 0.3});
  CHECK(r5.tag == Region::Region5_CompletePunctured);
  CHECK(r5.domain == DomainKind::PuncturedSpace);
  CHECK(r5.complete_without_boundary);

  const RegionLabel bs = classify(n2, {0.0, -0.5});
  CHECK(bs.tag == Region::AxisY);
  CHECK(bs.divisor_possible);

  const RegionLabel eh = classify(n2, {-0.2, 0.0});
  CHECK(eh.tag == Region::AxisX);
  CHECK(eh.divisor_possible);

  CHECK_FALSE(classify(n2, {0.0, 0.5}).divisor_possible);
  CHECK(classify(n2, {0.2, 0.2}).tag == Region::Region2_AE_Exterior);
  CHECK(classify(n2, {-2.0, 0.5}).tag == Region::Inadmissible);
  CHECK(classify(n2, {-2.0, 1.0}).tag == Region::Inadmissible);
}

TEST_CASE("critical level arcs") {
  const Dimension n2(2);
  const RegionLabel inner = classify(n2, {0.25, -1.0});  // 4 * 0.25 = 1 * 16 / 16
  CHECK(classify_with_level(n2, {0.25, -1.0}, 4.0).tag == Region::Region3_CriticalLevel);
  CHECK(inner.tag == Region::Region3_CriticalLevel);
  CHECK(inner.arc == CriticalArc::Inner);

  const RegionLabel outer = classify(n2, {9.0, -6.0});
  CHECK(outer.tag == Region::Region3_CriticalLevel);
  CHECK(outer.arc == CriticalArc::Outer);

  const RegionLabel upper = classify(n2, {1.0, 2.0});
  CHECK(upper.tag == Region::Region3_CriticalLevel);
  CHECK(upper.arc == CriticalArc::Upper);
}

TEST_CASE("admissible line crossings") {
  // F = 4.0833 > 4 on the n = 2 branch x > 0, y < 0 meets the line twice.
  const auto w = admissible_line_crossings(Dimension(2), {3.0, -3.5});
  REQUIRE(w.size() == 2);
  const double lambda = 12.25 / 3.0;
  for (double a : w) CHECK(std::pow(1.0 + a, 2) / a == doctest::Approx(lambda).epsilon(1e-12));
}

TEST_CASE("dimension must be at least two") {
  CHECK_THROWS_AS(Dimension(1), std::invalid_argument);
  CHECK(Dimension(5).value() == 5);
}
