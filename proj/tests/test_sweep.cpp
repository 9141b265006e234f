#include <doctest.h>

#include "sfk/report_io.hpp"
#include "sfk/sweep.hpp"

using namespace sfk;

TEST_CASE("seed grid parsing") {
  const SeedGrid g = SeedGrid::parse("-1:1:3,0:2:2");
  CHECK(g.size() == 6);
  const auto pts = g.points();
  REQUIRE(pts.size() == 6);
  CHECK(pts[0] == PhasePoint{-1.0, 0.0});
  CHECK(pts[1] == PhasePoint{-1.0, 2.0});
  CHECK(pts[2] == PhasePoint{0.0, 0.0});
  CHECK(pts[5] == PhasePoint{1.0, 2.0});
  CHECK(SeedGrid::parse("0.5:3:1,-1:-1:1").points() == std::vector<PhasePoint>{{0.5, -1.0}});

  CHECK_THROWS_AS(SeedGrid::parse(""), std::invalid_argument);
  CHECK_THROWS_AS(SeedGrid::parse("0:1:3"), std::invalid_argument);
  CHECK_THROWS_AS(SeedGrid::parse("0:1:0,0:1:2"), std::invalid_argument);
  CHECK_THROWS_AS(SeedGrid::parse("0:a:3,0:1:2"), std::invalid_argument);
}

TEST_CASE("serial and parallel sweeps agree") {
  const auto seeds = SeedGrid::parse("-0.9:8:12,-4:3:12").points();
  const Dimension n(2);

  const auto ca = classify_sweep(n, seeds, Execution::Serial);
  const auto cb = classify_sweep(n, seeds, Execution::Parallel);
  REQUIRE(ca.size() == seeds.size());
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    CHECK(ca[i].seed == seeds[i]);
    CHECK(cb[i].seed == seeds[i]);
    CHECK(ca[i].value->tag == cb[i].value->tag);
  }

  const auto da = dichotomy_sweep(n, seeds, {}, Execution::Serial);
  const auto db = dichotomy_sweep(n, seeds, {}, Execution::Parallel);
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    REQUIRE(da[i].value.has_value() == db[i].value.has_value());
    CHECK(da[i].error == db[i].error);
    if (da[i].value) CHECK(penrose_json(*da[i].value) == penrose_json(*db[i].value));
  }
}

TEST_CASE("errors are captured per seed") {
  const std::vector<PhasePoint> seeds{{0.2, 0.2}, {-3.0, 0.5}, {0.0, -0.5}};
  const auto d = dichotomy_sweep(Dimension(2), seeds, {}, Execution::Parallel);
  CHECK(d[0].value.has_value());
  CHECK_FALSE(d[1].value.has_value());
  CHECK_FALSE(d[1].error.empty());
  CHECK(d[2].value.has_value());
}

TEST_CASE("level drift") {
  const std::vector<PhasePoint> seeds{{0.3, 0.4}, {2.0, -1.5}, {-0.4, 0.6}};
  for (const auto& item : level_drift_sweep(Dimension(3), seeds, {}, Execution::Parallel)) {
    REQUIRE(item.value.has_value());
    CHECK(*item.value <= 1e-8);
  }
}
