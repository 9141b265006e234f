#include "sfk/report_io.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <stdexcept>

#include <fmt/format.h>

namespace sfk {

namespace {

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }
json optional_bool(const std::optional<bool>& v) { return v ? json(*v) : json(nullptr); }

// Non-finite values have no JSON number form.
json number(double v) {
  if (std::isnan(v)) return nullptr;
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

}  // namespace

json classify_json(Dimension n, PhasePoint p, const RegionLabel& label) {
  json j;
  j["n"] = n.value();
  j["x"] = p.x;
  j["y"] = p.y;
  j["region"] = std::string(to_string(label.tag));
  j["domain"] = std::string(to_string(label.domain));
  j["domain_description"] = std::string(domain_description(label));
  j["arc"] = std::string(to_string(label.arc));
  j["divisor_possible"] = label.divisor_possible;
  j["complete"] = label.complete_without_boundary;
  if (p.x == 0.0 && p.y == 0.0) {
    j["lambda"] = nullptr;
  } else {
    j["lambda"] = number(level_value(n, p).lambda);
  }
  j["lambda_critical"] = lambda_critical(n);
  return j;
}

json termination_json(const TerminationReason& end) {
  json j;
  j["kind"] = std::string(to_string(end.kind));
  j["t_stop"] = end.t_stop;
  j["blowup_time"] = number(end.blowup_time);
  j["line_abscissa"] = number(end.line_abscissa);
  return j;
}

json spheres_json(Dimension n, PhasePoint seed, const std::vector<SphereReport>& spheres) {
  json j;
  j["n"] = n.value();
  j["x"] = seed.x;
  j["y"] = seed.y;
  j["count"] = spheres.size();
  json list = json::array();
  for (const auto& s : spheres) {
    list.push_back({{"t_star", s.t_star},
                    {"x", s.phase_point.x},
                    {"y", s.phase_point.y},
                    {"stability", std::string(to_string(s.stability))},
                    {"area", s.area},
                    {"outermost", s.outermost}});
  }
  j["spheres"] = std::move(list);
  return j;
}

json mass_json(Dimension n, PhasePoint seed, const MassEstimate& m) {
  json j;
  j["n"] = n.value();
  j["x"] = seed.x;
  j["y"] = seed.y;
  j["m_numeric"] = m.m_numeric;
  j["m_paper"] = optional_number(m.m_paper);
  j["vanishing"] = m.vanishing;
  j["converged"] = m.converged;
  j["ladder_t"] = m.ladder_t;
  j["ladder_values"] = m.ladder_values;
  j["extrapolants"] = m.extrapolants;
  return j;
}

json penrose_json(const PenroseReport& r) {
  json j;
  j["n"] = r.n.value();
  j["x"] = r.seed.x;
  j["y"] = r.seed.y;
  j["region"] = std::string(to_string(r.region.tag));
  j["minimal_sphere_count"] = r.minimal_sphere_count;
  j["stable_sphere"] = r.stable_sphere;
  j["t_star"] = optional_number(r.t_star);
  j["x0"] = optional_number(r.x0);
  j["y0"] = optional_number(r.y0);
  j["V_sigma"] = optional_number(r.V_sigma);
  j["V_E"] = unit_sphere_volume(r.n);
  j["m_paper"] = optional_number(r.m_paper);
  j["m_numeric"] = optional_number(r.m_numeric);
  j["reduced_lhs"] = optional_number(r.reduced_lhs);
  j["reduced_rhs"] = optional_number(r.reduced_rhs);
  j["gap"] = optional_number(r.gap);
  j["full_rhs"] = optional_number(r.full_rhs);
  j["holds_reduced"] = optional_bool(r.holds_reduced);
  j["holds_full"] = optional_bool(r.holds_full);
  j["divisor_present"] = r.divisor_present;
  j["dichotomy_ok"] = r.dichotomy_ok;
  return j;
}

TrajectoryTable trajectory_table(const MetricProfile& profile) {
  const Trajectory* tr = profile.trajectory();
  if (tr == nullptr) throw std::invalid_argument("trajectory_table needs a trajectory profile");
  const Dimension n = tr->dimension();
  TrajectoryTable table;
  table.rows.reserve(tr->samples().size());
  for (const Sample& s : tr->samples()) {
    const MetricJet j = jet_from_sample(n, s);
    TrajectoryRow row;
    row.t = s.t;
    row.x = s.x;
    row.y = s.y;
    row.v = s.v;
    row.u_t = j.u_t;
    row.u_tt = j.u_tt;
    row.H = mean_curvature_phase(n, s);
    row.scal_residual = scalar_curvature(profile, s.t);
    table.rows.push_back(row);
  }
  table.comments.push_back(termination_comment("forward", tr->forward_end()));
  table.comments.push_back(termination_comment("backward", tr->backward_end()));
  return table;
}

std::string termination_comment(const char* direction, const TerminationReason& end) {
  std::string s = fmt::format("{}: {}", direction, to_string(end.kind));
  switch (end.kind) {
    case Termination::FiniteTimeBlowup: return s + " T=" + format_number(end.blowup_time);
    case Termination::AdmissibleLineAsymptote:
      return s + " w=" + format_number(end.line_abscissa) + " t_stop=" + format_number(end.t_stop);
    default: return s + " t_stop=" + format_number(end.t_stop);
  }
}

std::string format_number(double value) { return fmt::format("{:.17g}", value); }

void write_trajectory_csv(std::ostream& os, const TrajectoryTable& table) {
  os << kTrajectoryHeader << '\n';
  for (const auto& r : table.rows) {
    os << fmt::format("{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g}\n", r.t, r.x, r.y,
                      r.v, r.u_t, r.u_tt, r.H, r.scal_residual);
  }
  for (const auto& c : table.comments) os << "# " << c << '\n';
}

TrajectoryTable read_trajectory_csv(std::istream& is) {
  TrajectoryTable table;
  std::string line;
  if (!std::getline(is, line) || line != kTrajectoryHeader) {
    throw std::runtime_error("trajectory CSV: missing or unexpected header");
  }
  std::size_t line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line[0] == '#') {
      table.comments.push_back(line.size() > 2 ? line.substr(2) : std::string());
      continue;
    }
    double values[8];
    int count = 0;
    const char* pos = line.data();
    const char* end = line.data() + line.size();
    while (count < 8) {
      const auto [ptr, ec] = std::from_chars(pos, end, values[count]);
      if (ec != std::errc{}) {
        throw std::runtime_error(fmt::format("trajectory CSV: bad number on line {}", line_no));
      }
      ++count;
      pos = ptr;
      if (pos == end) break;
      if (*pos != ',') throw std::runtime_error(fmt::format("trajectory CSV: bad separator on line {}", line_no));
      ++pos;
    }
    if (count != 8 || pos != end) {
      throw std::runtime_error(fmt::format("trajectory CSV: expected 8 columns on line {}", line_no));
    }
    table.rows.push_back({values[0], values[1], values[2], values[3], values[4], values[5], values[6], values[7]});
  }
  return table;
}

}  // namespace sfk
