#include "sfk/sweep.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>

namespace sfk {

namespace {

double parse_double(std::string_view s) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(value)) {
    throw std::invalid_argument("grid: bad number '" + std::string(s) + "'");
  }
  return value;
}

int parse_steps(std::string_view s) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size() || value < 1) {
    throw std::invalid_argument("grid: bad step count '" + std::string(s) + "'");
  }
  return value;
}

void parse_axis(std::string_view part, double& lo, double& hi, int& steps) {
  const auto c1 = part.find(':');
  const auto c2 = c1 == std::string_view::npos ? c1 : part.find(':', c1 + 1);
  if (c2 == std::string_view::npos || part.find(':', c2 + 1) != std::string_view::npos) {
    throw std::invalid_argument("grid: expected lo:hi:steps, got '" + std::string(part) + "'");
  }
  lo = parse_double(part.substr(0, c1));
  hi = parse_double(part.substr(c1 + 1, c2 - c1 - 1));
  steps = parse_steps(part.substr(c2 + 1));
}

double grid_value(double lo, double hi, int steps, int i) {
  if (steps == 1) return lo;
  return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(steps - 1);
}

}  // namespace

SeedGrid SeedGrid::parse(std::string_view text) {
  const auto comma = text.find(',');
  if (comma == std::string_view::npos) {
    throw std::invalid_argument("grid: expected \"x0:x1:steps,y0:y1:steps\"");
  }
  SeedGrid g;
  parse_axis(text.substr(0, comma), g.x_lo, g.x_hi, g.x_steps);
  parse_axis(text.substr(comma + 1), g.y_lo, g.y_hi, g.y_steps);
  return g;
}

std::vector<PhasePoint> SeedGrid::points() const {
  std::vector<PhasePoint> pts;
  pts.reserve(size());
  for (int i = 0; i < x_steps; ++i) {
    for (int j = 0; j < y_steps; ++j) {
      pts.push_back({grid_value(x_lo, x_hi, x_steps, i), grid_value(y_lo, y_hi, y_steps, j)});
    }
  }
  return pts;
}

double level_drift(const Trajectory& trajectory) {
  const PhasePoint p0 = trajectory.seed();
  if (p0.x == 0.0 || p0.y == 0.0) throw DomainError("level drift needs x0*y0 != 0");
  const Dimension n = trajectory.dimension();
  const double f0 = level_value(n, p0).lambda;
  double worst = 0.0;
  for (const Sample& s : trajectory.samples()) {
    worst = std::max(worst, std::abs(level_value(n, s.phase()).lambda / f0 - 1.0));
  }
  return worst;
}

std::vector<SweepItem<RegionLabel>> classify_sweep(Dimension n, const std::vector<PhasePoint>& seeds,
                                                   Execution exec) {
  return map_seeds<RegionLabel>(seeds, [n](PhasePoint p) { return classify(n, p); }, exec);
}

std::vector<SweepItem<PenroseReport>> dichotomy_sweep(Dimension n, const std::vector<PhasePoint>& seeds,
                                                      const IntegrationOptions& options, Execution exec) {
  return map_seeds<PenroseReport>(
      seeds, [n, &options](PhasePoint p) { return dichotomy_report(n, p, options); }, exec);
}

std::vector<SweepItem<double>> level_drift_sweep(Dimension n, const std::vector<PhasePoint>& seeds,
                                                 const IntegrationOptions& options, Execution exec) {
  return map_seeds<double>(
      seeds, [n, &options](PhasePoint p) { return level_drift(integrate(n, p, options)); }, exec);
}

}  // namespace sfk
