#include "sfk/portrait.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>
#include <string>
#include <tuple>

#include <fmt/format.h>

namespace sfk {

namespace {

double parse_real(std::string_view s, const char* what) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(value)) {
    throw std::invalid_argument(fmt::format("{}: bad number '{}'", what, s));
  }
  return value;
}

std::pair<double, double> parse_range(std::string_view s) {
  const auto colon = s.find(':');
  if (colon == std::string_view::npos) throw std::invalid_argument("window: expected lo:hi");
  const double lo = parse_real(s.substr(0, colon), "window");
  const double hi = parse_real(s.substr(colon + 1), "window");
  if (!(lo < hi)) throw std::invalid_argument("window: need lo < hi");
  return {lo, hi};
}

std::string_view arc_color(const RegionLabel& label) {
  switch (label.tag) {
    case Region::Region3_CriticalLevel:
      switch (label.arc) {
        case CriticalArc::Inner: return "#000000";
        case CriticalArc::Outer: return "#1f4fd8";
        default: return "#e0a800";
      }
    case Region::Region2_AE_Exterior: return "#2ca02c";
    case Region::Region4_FiniteTimeBlowup: return "#d62728";
    case Region::Region5_CompletePunctured: return "#9467bd";
    default: return "#7f7f7f";
  }
}

struct Canvas {
  PortraitWindow w;
  double scale;

  double sx(double x) const { return (x - w.x_lo) * scale; }
  double sy(double y) const { return (w.y_hi - y) * scale; }
  bool inside(PhasePoint p) const {
    return p.x >= w.x_lo && p.x <= w.x_hi && p.y >= w.y_lo && p.y <= w.y_hi;
  }
};

// Clips the line a*x + b*y + c = 0 to the window; false when it misses.
bool clip_line(const PortraitWindow& w, double a, double b, double c, PhasePoint& p, PhasePoint& q) {
  std::vector<PhasePoint> hits;
  auto add = [&](PhasePoint r) {
    if (r.x >= w.x_lo - 1e-12 && r.x <= w.x_hi + 1e-12 && r.y >= w.y_lo - 1e-12 && r.y <= w.y_hi + 1e-12) {
      hits.push_back(r);
    }
  };
  if (b != 0.0) {
    add({w.x_lo, -(a * w.x_lo + c) / b});
    add({w.x_hi, -(a * w.x_hi + c) / b});
  }
  if (a != 0.0) {
    add({-(b * w.y_lo + c) / a, w.y_lo});
    add({-(b * w.y_hi + c) / a, w.y_hi});
  }
  if (hits.size() < 2) return false;
  std::sort(hits.begin(), hits.end(), [](PhasePoint l, PhasePoint r) { return l.x < r.x || (l.x == r.x && l.y < r.y); });
  p = hits.front();
  q = hits.back();
  return true;
}

}  // namespace

PortraitWindow PortraitWindow::parse(std::string_view text) {
  const auto comma = text.find(',');
  if (comma == std::string_view::npos) throw std::invalid_argument("window: expected \"x0:x1,y0:y1\"");
  PortraitWindow w;
  std::tie(w.x_lo, w.x_hi) = parse_range(text.substr(0, comma));
  std::tie(w.y_lo, w.y_hi) = parse_range(text.substr(comma + 1));
  return w;
}

std::vector<double> parse_levels(Dimension n, std::string_view text) {
  std::vector<double> levels;
  while (!text.empty()) {
    const auto comma = text.find(',');
    std::string_view item = text.substr(0, comma);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (item == "critical") {
      levels.push_back(lambda_critical(n));
    } else {
      const double level = parse_real(item, "levels");
      if (!(level > 0.0)) throw std::invalid_argument("levels: values must be positive");
      levels.push_back(level);
    }
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return levels;
}

std::vector<PhasePoint> level_seeds(Dimension n, double level) {
  if (!(level > 0.0) || !std::isfinite(level)) throw std::invalid_argument("level must be positive and finite");
  const double nn = n.real();
  const double c = std::pow(level, 1.0 / nn);
  const bool critical = std::abs(level / lambda_critical(n) - 1.0) <= kCriticalLevelRelTol;
  std::vector<PhasePoint> seeds;
  for (const double sx : {1.0, -1.0}) {
    for (const double sy : {1.0, -1.0}) {
      auto point = [&](double u) { return PhasePoint{sx * u, sy * c * std::pow(u, 1.0 - 1.0 / nn)}; };
      std::vector<double> breaks;
      if (critical && sx > 0.0 && sy < 0.0) {
        // Tangent to the admissible line at u = n-1.
        breaks.push_back(nn - 1.0);
      } else {
        for (double w : admissible_line_crossings(n, point(1.0))) breaks.push_back(std::abs(w));
        std::sort(breaks.begin(), breaks.end());
      }
      std::vector<double> candidates;
      if (breaks.empty()) {
        candidates.push_back(1.0);
      } else {
        candidates.push_back(0.5 * breaks.front());
        for (std::size_t i = 0; i + 1 < breaks.size(); ++i) candidates.push_back(std::sqrt(breaks[i] * breaks[i + 1]));
        candidates.push_back(2.0 * breaks.back() + 1.0);
      }
      for (double u : candidates) {
        const PhasePoint p = point(u);
        if (is_admissible(p)) seeds.push_back(p);
      }
    }
  }
  return seeds;
}

std::vector<PortraitArc> trace_levels(const PortraitOptions& options) {
  const std::vector<double> levels = options.levels ? *options.levels : std::vector<double>{lambda_critical(options.n)};
  const Canvas canvas{options.window, options.pixels_per_unit};
  std::vector<PortraitArc> arcs;
  for (double level : levels) {
    for (const PhasePoint seed : level_seeds(options.n, level)) {
      PortraitArc arc;
      arc.level = level;
      arc.seed = seed;
      arc.label = classify(options.n, seed);
      const Trajectory tr = integrate(options.n, seed, options.integration);
      std::vector<PhasePoint> piece;
      for (const Sample& s : tr.samples()) {
        const PhasePoint p = s.phase();
        if (canvas.inside(p)) {
          piece.push_back(p);
        } else if (!piece.empty()) {
          arc.pieces.push_back(std::move(piece));
          piece.clear();
        }
      }
      if (!piece.empty()) arc.pieces.push_back(std::move(piece));
      arcs.push_back(std::move(arc));
    }
  }
  return arcs;
}

std::string render_portrait(const PortraitOptions& options) {
  const PortraitWindow& w = options.window;
  const Canvas canvas{w, options.pixels_per_unit};
  const double width = (w.x_hi - w.x_lo) * canvas.scale;
  const double height = (w.y_hi - w.y_lo) * canvas.scale;
  const double nn = options.n.real();

  std::string svg = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0:.0f}\" height=\"{1:.0f}\" viewBox=\"0 0 {0:.2f} {1:.2f}\">\n",
      width, height);
  svg += fmt::format("<title>Phase portrait, n = {}</title>\n", options.n.value());
  svg += fmt::format("<rect x=\"0\" y=\"0\" width=\"{:.2f}\" height=\"{:.2f}\" style=\"fill:#ffffff;stroke:none\"/>\n",
                     width, height);

  auto line = [&](const char* id, double a, double b, double c, const char* style) {
    PhasePoint p, q;
    if (!clip_line(w, a, b, c, p, q)) return;
    svg += fmt::format("<line id=\"{}\" x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" style=\"{}\"/>\n", id,
                       canvas.sx(p.x), canvas.sy(p.y), canvas.sx(q.x), canvas.sy(q.y), style);
  };
  line("axis-x", 0.0, 1.0, 0.0, "stroke:#999999;stroke-width:1");
  line("axis-y", 1.0, 0.0, 0.0, "stroke:#999999;stroke-width:1");
  line("admissible-line", 1.0, 1.0, 1.0, "stroke:#ff7f0e;stroke-width:2");
  line("minimal-line", nn - 1.0, nn, 2.0 * nn - 1.0, "stroke:#17becf;stroke-width:1.5;stroke-dasharray:6,4");

  // Stable window n-1 < x <= 2n-1 on the minimal line.
  auto on_minimal = [&](double x) { return PhasePoint{x, -((nn - 1.0) * x + 2.0 * nn - 1.0) / nn}; };
  const PhasePoint a = on_minimal(nn - 1.0);
  const PhasePoint b = on_minimal(2.0 * nn - 1.0);
  svg += fmt::format(
      "<line id=\"stable-window\" x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" "
      "style=\"stroke:#00a000;stroke-width:5;stroke-opacity:0.6\"/>\n",
      canvas.sx(a.x), canvas.sy(a.y), canvas.sx(b.x), canvas.sy(b.y));

  for (const PortraitArc& arc : trace_levels(options)) {
    for (const auto& piece : arc.pieces) {
      if (piece.size() < 2) continue;
      std::string points;
      for (const PhasePoint& p : piece) points += fmt::format("{:.2f},{:.2f} ", canvas.sx(p.x), canvas.sy(p.y));
      points.pop_back();
      svg += fmt::format(
          "<polyline class=\"level-arc\" data-level=\"{:.6g}\" data-region=\"{}\" data-arc=\"{}\" points=\"{}\" "
          "style=\"fill:none;stroke:{};stroke-width:2\"/>\n",
          arc.level, to_string(arc.label.tag), to_string(arc.label.arc), points, arc_color(arc.label));
    }
  }

  const PhasePoint tp = tangency_point(options.n);
  if (canvas.inside(tp)) {
    svg += fmt::format(
        "<circle id=\"tangency-point\" cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"5\" style=\"fill:#ff0000;stroke:#000000\"/>\n",
        canvas.sx(tp.x), canvas.sy(tp.y));
  }
  svg += fmt::format(
      "<text x=\"10\" y=\"20\" style=\"font-family:sans-serif;font-size:14px\">n = {}, "
      "critical level {:.6g}, tangency ({:g}, {:g})</text>\n",
      options.n.value(), lambda_critical(options.n), tp.x, tp.y);
  svg += "</svg>\n";
  return svg;
}

}  // namespace sfk
