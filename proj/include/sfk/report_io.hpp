#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "sfk/mass_penrose.hpp"
#include "sfk/metric_profile.hpp"
#include "sfk/sphere_geometry.hpp"

namespace sfk {

using json = nlohmann::json;

/// Keys: n, x, y, region, domain, domain_description, arc, divisor_possible,
/// complete, lambda, lambda_critical. lambda is null at the origin and the
/// string "inf" on the y axis.
json classify_json(Dimension n, PhasePoint p, const RegionLabel& label);

json termination_json(const TerminationReason& end);

/// Keys: n, x, y, count, spheres[] with t_star, x, y, stability, area, outermost.
json spheres_json(Dimension n, PhasePoint seed, const std::vector<SphereReport>& spheres);

/// Keys: n, x, y, m_numeric, m_paper, vanishing, converged, ladder_t,
/// ladder_values, extrapolants.
json mass_json(Dimension n, PhasePoint seed, const MassEstimate& m);

/// Fixed key set; fields without a stable sphere are null.
json penrose_json(const PenroseReport& report);

/// Trajectory table with columns t,x,y,v,u_t,u_tt,H,scal_residual.
struct TrajectoryRow {
  double t = 0.0;
  double x = 0.0;
  double y = 0.0;
  double v = 0.0;
  double u_t = 0.0;
  double u_tt = 0.0;
  double H = 0.0;
  double scal_residual = 0.0;
};

struct TrajectoryTable {
  std::vector<TrajectoryRow> rows;
  std::vector<std::string> comments;  // without the leading "# "
};

inline constexpr const char* kTrajectoryHeader = "t,x,y,v,u_t,u_tt,H,scal_residual";

/// One row per sample of the trajectory.
TrajectoryTable trajectory_table(const MetricProfile& profile);

/// "forward: FiniteTimeBlowup T=..." style summary of one end.
std::string termination_comment(const char* direction, const TerminationReason& end);

/// 17 significant digits per value; comments go last, prefixed with "# ".
void write_trajectory_csv(std::ostream& os, const TrajectoryTable& table);

/// Inverse of write_trajectory_csv. Throws std::runtime_error on malformed input.
TrajectoryTable read_trajectory_csv(std::istream& is);

/// 17 significant digits, enough to round-trip any double.
std::string format_number(double value);

}  // namespace sfk
