#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <ostream>
#include <stdexcept>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "sfk/mass_penrose.hpp"
#include "sfk/metric_profile.hpp"
#include "sfk/portrait.hpp"
#include "sfk/report_io.hpp"
#include "sfk/sphere_geometry.hpp"
#include "sfk/sweep.hpp"
#include "sfk/verify_suite.hpp"

namespace sfk::cli {

namespace {

struct RunConfig {
  int n = 2;
  double x = 0.0;
  double y = 0.0;
  double t_min = -60.0;
  double t_max = 60.0;
  double tol = 1e-10;
  double dt = 0.0;
  std::string format;
  std::string out_path;
  std::string grid;
  std::string window;
  std::string levels;
  bool fast = false;
  bool acceptance = false;
};

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

void validate(const RunConfig& cfg) {
  if (cfg.n < 2) throw UsageError(fmt::format("-n must be >= 2, got {}", cfg.n));
  if (!(cfg.tol > 0.0)) throw UsageError("--tol must be positive");
  if (!(cfg.t_min < 0.0 && 0.0 < cfg.t_max)) throw UsageError("need --t-min < 0 < --t-max");
  if (!(cfg.dt >= 0.0)) throw UsageError("--dt must be nonnegative");
  if (!std::isfinite(cfg.x) || !std::isfinite(cfg.y)) throw UsageError("seed coordinates must be finite");
}

std::string format_or(const RunConfig& cfg, std::string_view fallback, std::initializer_list<std::string_view> allowed) {
  const std::string f = cfg.format.empty() ? std::string(fallback) : cfg.format;
  if (std::find(allowed.begin(), allowed.end(), f) == allowed.end()) {
    throw UsageError(fmt::format("--format {} is not available for this command", f));
  }
  return f;
}

IntegrationOptions integration_options(const RunConfig& cfg) {
  IntegrationOptions o;
  o.t_min = cfg.t_min;
  o.t_max = cfg.t_max;
  o.tol = cfg.tol;
  if (cfg.dt > 0.0) {
    const double first = std::ceil(cfg.t_min / cfg.dt);
    const double last = std::floor(cfg.t_max / cfg.dt);
    if (last - first > 1e6) throw UsageError("--dt produces more than 1e6 output times");
    for (double k = first; k <= last; k += 1.0) o.output_times.push_back(k * cfg.dt);
  }
  return o;
}

PhasePoint admissible_seed(const RunConfig& cfg) {
  const PhasePoint p{cfg.x, cfg.y};
  if (!is_admissible(p)) throw DomainError("inadmissible: 1+x+y ≤ 0");
  return p;
}

std::vector<PhasePoint> grid_points(const RunConfig& cfg) {
  try {
    return SeedGrid::parse(cfg.grid).points();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

void emit_json(std::ostream& os, const json& j) { os << j.dump(2) << '\n'; }

void cmd_classify(const RunConfig& cfg, std::ostream& os) {
  const Dimension n(cfg.n);
  const std::string format = format_or(cfg, "json", {"json", "csv"});
  if (!cfg.grid.empty()) {
    const auto items = classify_sweep(n, grid_points(cfg), Execution::Parallel);
    if (format == "csv") {
      os << "x,y,region,domain,arc,divisor_possible,complete\n";
      for (const auto& it : items) {
        const RegionLabel& l = *it.value;
        os << format_number(it.seed.x) << ',' << format_number(it.seed.y) << ',' << to_string(l.tag) << ','
           << to_string(l.domain) << ',' << to_string(l.arc) << ',' << l.divisor_possible << ','
           << l.complete_without_boundary << '\n';
      }
      return;
    }
    json arr = json::array();
    for (const auto& it : items) {
      arr.push_back(it.value ? classify_json(n, it.seed, *it.value) : json{{"x", it.seed.x}, {"y", it.seed.y}, {"error", it.error}});
    }
    emit_json(os, arr);
    return;
  }
  if (format != "json") throw UsageError("classify of a single seed only emits json");
  const PhasePoint p = admissible_seed(cfg);
  emit_json(os, classify_json(n, p, classify(n, p)));
}

void cmd_integrate(const RunConfig& cfg, std::ostream& os) {
  const Dimension n(cfg.n);
  const std::string format = format_or(cfg, "csv", {"csv", "json"});
  const PhasePoint p = admissible_seed(cfg);
  const MetricProfile profile(integrate(n, p, integration_options(cfg)));
  const TrajectoryTable table = trajectory_table(profile);
  if (format == "csv") {
    write_trajectory_csv(os, table);
    return;
  }
  json j;
  j["n"] = n.value();
  j["x"] = p.x;
  j["y"] = p.y;
  j["columns"] = {"t", "x", "y", "v", "u_t", "u_tt", "H", "scal_residual"};
  json rows = json::array();
  for (const auto& r : table.rows) rows.push_back({r.t, r.x, r.y, r.v, r.u_t, r.u_tt, r.H, r.scal_residual});
  j["rows"] = std::move(rows);
  j["forward"] = termination_json(profile.trajectory()->forward_end());
  j["backward"] = termination_json(profile.trajectory()->backward_end());
  emit_json(os, j);
}

void cmd_portrait(const RunConfig& cfg, std::ostream& os, bool levels_given) {
  format_or(cfg, "svg", {"svg"});
  PortraitOptions o;
  o.n = Dimension(cfg.n);
  o.integration = integration_options(cfg);
  try {
    if (!cfg.window.empty()) o.window = PortraitWindow::parse(cfg.window);
    if (levels_given) o.levels = parse_levels(o.n, cfg.levels);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  os << render_portrait(o);
}

void cmd_spheres(const RunConfig& cfg, std::ostream& os) {
  const Dimension n(cfg.n);
  format_or(cfg, "json", {"json"});
  const PhasePoint p = admissible_seed(cfg);
  emit_json(os, spheres_json(n, p, find_minimal_spheres(MetricProfile(integrate(n, p, integration_options(cfg))))));
}

void cmd_mass(const RunConfig& cfg, std::ostream& os) {
  const Dimension n(cfg.n);
  format_or(cfg, "json", {"json"});
  const PhasePoint p = admissible_seed(cfg);
  emit_json(os, mass_json(n, p, adm_mass(MetricProfile(integrate(n, p, integration_options(cfg))))));
}

void cmd_penrose(const RunConfig& cfg, std::ostream& os) {
  const Dimension n(cfg.n);
  format_or(cfg, "json", {"json"});
  const IntegrationOptions o = integration_options(cfg);
  if (!cfg.grid.empty()) {
    json arr = json::array();
    for (const auto& it : dichotomy_sweep(n, grid_points(cfg), o, Execution::Parallel)) {
      arr.push_back(it.value ? penrose_json(*it.value) : json{{"x", it.seed.x}, {"y", it.seed.y}, {"error", it.error}});
    }
    emit_json(os, arr);
    return;
  }
  const PhasePoint p = admissible_seed(cfg);
  if (std::abs(minimal_line_residual(n, p)) > kMinimalLineTol) {
    throw DomainError(fmt::format("seed not minimal: (n-1)x+ny+2n-1 = {} at ({}, {})", minimal_line_residual(n, p), p.x, p.y));
  }
  emit_json(os, penrose_json(dichotomy_report(n, p, o)));
}

int cmd_verify(const RunConfig& cfg, std::ostream& os) {
  const verify::Mode mode = cfg.fast ? verify::Mode::Fast : verify::Mode::Full;
  std::vector<verify::CheckResult> results;
  auto report = [&](verify::CheckResult r) {
    os << verify::format_result(r) << '\n' << std::flush;
    results.push_back(std::move(r));
  };
  if (cfg.acceptance) {
    for (int id = 1; id <= verify::kCriterionCount; ++id) report(verify::run_criterion(id, mode));
  }
  for (auto& r : verify::run_invariants(mode)) report(std::move(r));
  const auto passed = std::count_if(results.begin(), results.end(), [](const auto& r) { return r.passed; });
  os << fmt::format("{}/{} checks passed\n", passed, results.size());
  return passed == static_cast<long>(results.size()) ? kExitOk : kExitDomain;
}

void add_seed_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("-n", cfg.n, "complex dimension (>= 2)");
  sub->add_option("-x", cfg.x, "seed abscissa");
  sub->add_option("-y", cfg.y, "seed ordinate");
}

void add_integration_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--t-min", cfg.t_min, "backward time limit");
  sub->add_option("--t-max", cfg.t_max, "forward time limit");
  sub->add_option("--tol", cfg.tol, "integrator tolerance");
}

void add_output_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"csv", "json", "svg"}));
  sub->add_option("--out", cfg.out_path, "write to this file instead of stdout");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Scalar-flat U(n)-invariant Kähler metrics: phase plane, spheres, mass and Penrose checks", "sfk"};
  app.require_subcommand(1, 1);
  RunConfig cfg;

  auto* classify_cmd = app.add_subcommand("classify", "region of a seed (or of every seed of --grid)");
  add_seed_options(classify_cmd, cfg);
  add_output_options(classify_cmd, cfg);
  classify_cmd->add_option("--grid", cfg.grid, "seed grid \"x0:x1:steps,y0:y1:steps\"");

  auto* integrate_cmd = app.add_subcommand("integrate", "trajectory table with metric columns");
  add_seed_options(integrate_cmd, cfg);
  add_integration_options(integrate_cmd, cfg);
  add_output_options(integrate_cmd, cfg);
  integrate_cmd->add_option("--dt", cfg.dt, "also sample on the uniform grid with this step");

  auto* portrait_cmd = app.add_subcommand("portrait", "SVG phase portrait");
  portrait_cmd->add_option("-n", cfg.n, "complex dimension (>= 2)");
  add_integration_options(portrait_cmd, cfg);
  add_output_options(portrait_cmd, cfg);
  auto* levels_opt =
      portrait_cmd->add_option("--levels", cfg.levels, "comma separated level values or \"critical\" (empty: none)");
  portrait_cmd->add_option("--window", cfg.window, "plot window \"x0:x1,y0:y1\"");

  auto* spheres_cmd = app.add_subcommand("spheres", "minimal spheres along the trajectory of a seed");
  add_seed_options(spheres_cmd, cfg);
  add_integration_options(spheres_cmd, cfg);
  add_output_options(spheres_cmd, cfg);

  auto* mass_cmd = app.add_subcommand("mass", "ADM mass of the trajectory of a seed");
  add_seed_options(mass_cmd, cfg);
  add_integration_options(mass_cmd, cfg);
  add_output_options(mass_cmd, cfg);

  auto* penrose_cmd = app.add_subcommand("penrose", "Penrose-type checks at a minimal seed (or dichotomy reports on --grid)");
  add_seed_options(penrose_cmd, cfg);
  add_integration_options(penrose_cmd, cfg);
  add_output_options(penrose_cmd, cfg);
  penrose_cmd->add_option("--grid", cfg.grid, "seed grid \"x0:x1:steps,y0:y1:steps\"");

  auto* verify_cmd = app.add_subcommand("verify", "run the invariant suite");
  verify_cmd->add_flag("--fast", cfg.fast, "smaller random samples");
  verify_cmd->add_flag("--acceptance", cfg.acceptance, "also run the twelve acceptance criteria");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  std::ofstream file;
  std::ostream* os = &out;
  try {
    validate(cfg);
    if (!cfg.out_path.empty()) {
      file.open(cfg.out_path);
      if (!file) throw std::runtime_error("cannot open " + cfg.out_path + " for writing");
      os = &file;
    }
    int code = kExitOk;
    if (*classify_cmd) cmd_classify(cfg, *os);
    if (*integrate_cmd) cmd_integrate(cfg, *os);
    if (*portrait_cmd) cmd_portrait(cfg, *os, levels_opt->count() > 0);
    if (*spheres_cmd) cmd_spheres(cfg, *os);
    if (*mass_cmd) cmd_mass(cfg, *os);
    if (*penrose_cmd) cmd_penrose(cfg, *os);
    if (*verify_cmd) code = cmd_verify(cfg, *os);
    os->flush();
    if (!*os) throw std::runtime_error("write failed");
    return code;
  } catch (const DomainError& e) {
    err << e.what() << '\n';
    return kExitDomain;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  }
}

}  // namespace sfk::cli
