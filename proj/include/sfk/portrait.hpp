#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sfk/ode_engine.hpp"
#include "sfk/phase_core.hpp"

namespace sfk {

struct PortraitWindow {
  double x_lo = -5.0;
  double x_hi = 12.0;
  double y_lo = -10.0;
  double y_hi = 10.0;

  /// "x0:x1,y0:y1"; throws std::invalid_argument when malformed or empty.
  static PortraitWindow parse(std::string_view text);
};

struct PortraitOptions {
  Dimension n{2};
  PortraitWindow window;
  /// Level values to trace; nullopt means the critical level only.
  std::optional<std::vector<double>> levels;
  double pixels_per_unit = 50.0;
  IntegrationOptions integration;
};

/// Parses "critical,0.5,7" style lists; "critical" is lambda_critical(n).
/// An empty string yields an empty list.
std::vector<double> parse_levels(Dimension n, std::string_view text);

/// One traced arc of a level set, clipped to the window.
struct PortraitArc {
  double level = 0.0;
  PhasePoint seed;
  RegionLabel label;
  std::vector<std::vector<PhasePoint>> pieces;
};

/// Seeds on every admissible piece of {F = level}.
std::vector<PhasePoint> level_seeds(Dimension n, double level);

std::vector<PortraitArc> trace_levels(const PortraitOptions& options);

/// Self-contained SVG: axes, admissible line, minimal line with the stability
/// window highlighted, tangency marker and the traced level arcs.
std::string render_portrait(const PortraitOptions& options);

}  // namespace sfk
