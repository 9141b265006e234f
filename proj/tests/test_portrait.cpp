#include <doctest.h>

#include <cmath>
#include <string>

#include "sfk/portrait.hpp"

using namespace sfk;

namespace {

std::size_t count(const std::string& hay, const std::string& needle) {
  std::size_t c = 0;
  for (auto pos = hay.find(needle); pos != std::string::npos; pos = hay.find(needle, pos + 1)) ++c;
  return c;
}

}  // namespace

TEST_CASE("window and level parsing") {
  const PortraitWindow w = PortraitWindow::parse("-1:2,-3:4");
  CHECK(w.x_lo == -1.0);
  CHECK(w.x_hi == 2.0);
  CHECK(w.y_lo == -3.0);
  CHECK(w.y_hi == 4.0);
  CHECK_THROWS_AS(PortraitWindow::parse("2:1,0:1"), std::invalid_argument);
  CHECK_THROWS_AS(PortraitWindow::parse("0:1"), std::invalid_argument);

  const auto levels = parse_levels(Dimension(3), "critical, 0.5,7");
  REQUIRE(levels.size() == 3);
  CHECK(levels[0] == doctest::Approx(6.75));
  CHECK(levels[1] == 0.5);
  CHECK(parse_levels(Dimension(2), "").empty());
  CHECK_THROWS_AS(parse_levels(Dimension(2), "-1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_levels(Dimension(2), "abc"), std::invalid_argument);
}

TEST_CASE("level seeds lie on the level") {
  for (int n = 2; n <= 4; ++n) {
    const Dimension d(n);
    for (double level : {0.5, lambda_critical(d), 2.0 * lambda_critical(d)}) {
      const auto seeds = level_seeds(d, level);
      CHECK_FALSE(seeds.empty());
      for (const PhasePoint& p : seeds) {
        CHECK(is_admissible(p));
        CHECK(level_value(d, p).lambda == doctest::Approx(level).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("critical level arcs of n = 2") {
  PortraitOptions o;
  const auto arcs = trace_levels(o);
  bool inner = false, outer = false, upper = false;
  for (const auto& a : arcs) {
    if (a.seed.x < 0.0) {
      CHECK(a.label.tag == Region::Region5_CompletePunctured);
      continue;
    }
    CHECK(a.label.tag == Region::Region3_CriticalLevel);
    inner = inner || a.label.arc == CriticalArc::Inner;
    outer = outer || a.label.arc == CriticalArc::Outer;
    upper = upper || a.label.arc == CriticalArc::Upper;
  }
  CHECK(inner);
  CHECK(outer);
  CHECK(upper);

  const std::string svg = render_portrait(o);
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("viewBox") != std::string::npos);
  CHECK(svg.find("href") == std::string::npos);
  CHECK(svg.find("id=\"admissible-line\"") != std::string::npos);
  CHECK(svg.find("id=\"minimal-line\"") != std::string::npos);
  CHECK(svg.find("id=\"stable-window\"") != std::string::npos);
  CHECK(svg.find("stroke:#000000;stroke-width:2") != std::string::npos);
  CHECK(svg.find("stroke:#1f4fd8") != std::string::npos);
  CHECK(svg.find("stroke:#e0a800") != std::string::npos);
}

TEST_CASE("empty level list draws only axes and lines") {
  PortraitOptions o;
  o.levels = std::vector<double>{};
  const std::string svg = render_portrait(o);
  CHECK(count(svg, "level-arc") == 0);
  CHECK(svg.find("id=\"axis-x\"") != std::string::npos);
  CHECK(svg.find("id=\"axis-y\"") != std::string::npos);
  CHECK(svg.find("id=\"admissible-line\"") != std::string::npos);
}

TEST_CASE("tangency marker for n = 3") {
  PortraitOptions o;
  o.n = Dimension(3);
  o.levels = std::vector<double>{};
  const std::string svg = render_portrait(o);
  // (2, -3) in the default window at 50 px per unit.
  CHECK(svg.find("id=\"tangency-point\" cx=\"350.00\" cy=\"650.00\"") != std::string::npos);
}
