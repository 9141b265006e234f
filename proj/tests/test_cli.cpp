#include <doctest.h>

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"
#include "sfk/report_io.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = sfk::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("classify") {
  const Result a = run({"classify", "-n", "2", "-x", "0", "-y", "-0.5"});
  REQUIRE(a.code == 0);
  const auto j = nlohmann::json::parse(a.out);
  CHECK(j["region"] == "AxisY");
  CHECK(j["divisor_possible"] == true);

  const Result o = run({"classify", "-n", "2", "-x", "0", "-y", "0"});
  CHECK(o.code == 0);
  CHECK(o.out.find("EuclideanFixedPoint") != std::string::npos);

  const Result bad = run({"classify", "-n", "2", "-x", "-2", "-y", "0.5"});
  CHECK(bad.code == 1);
  CHECK(bad.err.find("inadmissible: 1+x+y ≤ 0") != std::string::npos);

  const Result grid = run({"classify", "-n", "2", "--grid", "-0.5:1:4,-0.5:1:3"});
  CHECK(grid.code == 0);
  CHECK(nlohmann::json::parse(grid.out).size() == 12);

  const Result csv = run({"classify", "--grid", "0:1:2,0:1:2", "--format", "csv"});
  CHECK(csv.code == 0);
  CHECK(csv.out.rfind("x,y,region,", 0) == 0);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"classify", "-n", "1"}).code == 2);
  CHECK(run({"classify", "-x", "abc"}).code == 2);
  CHECK(run({"integrate", "--tol", "0"}).code == 2);
  CHECK(run({"integrate", "--t-min", "1"}).code == 2);
  CHECK(run({"integrate", "--format", "svg"}).code == 2);
  CHECK(run({"classify", "--grid", "nonsense"}).code == 2);
  CHECK(run({"portrait", "--window", "1:0,0:1"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("integrate") {
  SUBCASE("Euclidean seed") {
    const Result r = run({"integrate", "-n", "2", "-x", "0", "-y", "0"});
    REQUIRE(r.code == 0);
    std::istringstream is(r.out);
    const auto table = sfk::read_trajectory_csv(is);
    REQUIRE_FALSE(table.rows.empty());
    for (const auto& row : table.rows) {
      CHECK(row.x == 0.0);
      CHECK(row.y == 0.0);
      CHECK(row.scal_residual == 0.0);
    }
  }
  SUBCASE("minimal seed") {
    const Result r = run({"integrate", "-n", "2", "-x", "2", "-y", "-2.5"});
    REQUIRE(r.code == 0);
    std::istringstream is(r.out);
    bool found = false;
    for (const auto& row : sfk::read_trajectory_csv(is).rows) {
      if (row.t != 0.0) continue;
      found = true;
      CHECK(row.u_t == 1.0);
      CHECK(row.u_tt == doctest::Approx(0.5));
      CHECK(row.H == 0.0);
    }
    CHECK(found);
  }
  SUBCASE("blowup comment") {
    const Result r = run({"integrate", "-n", "2", "-x", "3", "-y", "-3.5"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("\n# backward: FiniteTimeBlowup T=-") != std::string::npos);
  }
  SUBCASE("uniform grid and json") {
    const Result r = run({"integrate", "-x", "0.2", "-y", "0.2", "--dt", "0.5", "--t-max", "2", "--t-min", "-1",
                          "--format", "json"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["forward"]["kind"] == "MaxTimeReached");
    bool has_half = false;
    for (const auto& row : j["rows"]) has_half = has_half || row[0] == 1.5;
    CHECK(has_half);
  }
  CHECK(run({"integrate", "-x", "-2", "-y", "0.5"}).code == 1);
}

TEST_CASE("spheres and mass") {
  const Result s = run({"spheres", "-n", "2", "-x", "9", "-y", "-6"});
  REQUIRE(s.code == 0);
  const auto j = nlohmann::json::parse(s.out);
  CHECK(j["count"] == 1);
  CHECK(j["spheres"][0]["stability"] == "Unstable");

  const Result m = run({"mass", "-n", "2", "-x", "0", "-y", "-0.5"});
  REQUIRE(m.code == 0);
  CHECK(nlohmann::json::parse(m.out)["m_numeric"].get<double>() == doctest::Approx(0.5).epsilon(1e-6));

  const Result none = run({"mass", "-n", "2", "-x", "3", "-y", "-3.5"});
  CHECK(none.code == 1);
}

TEST_CASE("penrose") {
  const Result r = run({"penrose", "-n", "2", "-x", "2", "-y", "-2.5"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["holds_reduced"] == true);
  CHECK(j["gap"].get<double>() == doctest::Approx(2.0));

  const Result off = run({"penrose", "-n", "2", "-x", "2", "-y", "-2"});
  CHECK(off.code == 1);
  CHECK(off.err.find("seed not minimal") != std::string::npos);

  const Result grid = run({"penrose", "--grid", "0:3:3,-2:0:3"});
  CHECK(grid.code == 0);
  CHECK(nlohmann::json::parse(grid.out).size() == 9);
}

TEST_CASE("portrait") {
  const Result r = run({"portrait", "-n", "3", "--levels", ""});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("<svg", 0) == 0);
  CHECK(r.out.find("level-arc") == std::string::npos);
  CHECK(r.out.find("tangency-point") != std::string::npos);

  const std::string path = std::string(SFK_TEST_TMPDIR) + "/portrait_test.svg";
  const Result f = run({"portrait", "-n", "2", "--levels", "critical,1", "--out", path});
  REQUIRE(f.code == 0);
  CHECK(f.out.empty());
  std::ifstream in(path);
  std::stringstream content;
  content << in.rdbuf();
  CHECK(content.str().find("level-arc") != std::string::npos);

  CHECK(run({"portrait", "--out", "/nonexistent-dir/x.svg"}).code == 1);
}
