#include "sfk/phase_core.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <boost/math/tools/roots.hpp>

namespace sfk {

Dimension::Dimension(int n) : n_(n) {
  if (n < 2) {
    throw std::invalid_argument("complex dimension must satisfy n >= 2, got " + std::to_string(n));
  }
}

bool LevelValue::is_infinite() const noexcept { return std::isinf(lambda); }

std::string_view to_string(Region r) noexcept {
  switch (r) {
    case Region::Inadmissible: return "Inadmissible";
    case Region::EuclideanFixedPoint: return "EuclideanFixedPoint";
    case Region::AxisX: return "AxisX";
    case Region::AxisY: return "AxisY";
    case Region::Region2_AE_Exterior: return "Region2_AE_Exterior";
    case Region::Region3_CriticalLevel: return "Region3_CriticalLevel";
    case Region::Region4_FiniteTimeBlowup: return "Region4_FiniteTimeBlowup";
    case Region::Region5_CompletePunctured: return "Region5_CompletePunctured";
  }
  return "?";
}

std::string_view to_string(DomainKind d) noexcept {
  switch (d) {
    case DomainKind::None: return "none";
    case DomainKind::WholeSpace: return "whole_space";
    case DomainKind::PuncturedSpace: return "punctured_space";
    case DomainKind::ExteriorDomain: return "exterior_domain";
    case DomainKind::BoundedBoundary: return "bounded_boundary";
  }
  return "?";
}

std::string_view to_string(CriticalArc a) noexcept {
  switch (a) {
    case CriticalArc::None: return "none";
    case CriticalArc::Upper: return "upper";
    case CriticalArc::Inner: return "inner";
    case CriticalArc::Outer: return "outer";
  }
  return "?";
}

std::string_view domain_description(const RegionLabel& label) noexcept {
  switch (label.domain) {
    case DomainKind::None: return "no metric (1+x+y <= 0)";
    case DomainKind::WholeSpace: return "all of C^n";
    case DomainKind::PuncturedSpace:
      return label.divisor_possible ? "C^n minus the origin; extends over the quotient of the blow-up"
                                    : "C^n minus the origin";
    case DomainKind::ExteriorDomain: return "exterior domain {|z|^2 > 2e^{-T}}";
    case DomainKind::BoundedBoundary: return "metric with boundary";
  }
  return "?";
}

FieldVector vector_field(Dimension n, PhasePoint p) noexcept {
  const double nn = n.real();
  const double s = 1.0 + p.x + p.y;
  return {-nn * p.x * s, (1.0 - nn) * p.y * s};
}

LevelValue level_value(Dimension n, PhasePoint p) {
  if (p.x == 0.0 && p.y == 0.0) {
    throw DomainError("level value is undefined at the origin");
  }
  if (p.x == 0.0) return {std::numeric_limits<double>::infinity()};
  if (p.y == 0.0) return {0.0};
  const double nn = n.real();
  // Evaluated in logs so that large |x| or |y| do not overflow intermediate powers.
  const double log_f = (1.0 - nn) * std::log(std::abs(p.x)) + nn * std::log(std::abs(p.y));
  return {std::exp(log_f)};
}

double lambda_critical(Dimension n) noexcept {
  const double nn = n.real();
  return std::pow(nn, nn) / std::pow(nn - 1.0, nn - 1.0);
}

PhasePoint tangency_point(Dimension n) noexcept { return {n.real() - 1.0, -n.real()}; }

double minimal_line_residual(Dimension n, PhasePoint p) noexcept {
  const double nn = n.real();
  return (nn - 1.0) * p.x + nn * p.y + 2.0 * nn - 1.0;
}

double axis_parameter(double axis_coordinate) noexcept {
  return -axis_coordinate / (1.0 + axis_coordinate);
}

namespace {

RegionLabel axis_label(Region tag, double coordinate) {
  const double b = axis_parameter(coordinate);
  RegionLabel label{tag, DomainKind::None, false, false, CriticalArc::None};
  if (b > 0.0) {
    label.domain = DomainKind::PuncturedSpace;
    label.divisor_possible = true;
    label.complete_without_boundary = true;
  } else {
    label.domain = DomainKind::ExteriorDomain;
  }
  return label;
}

}  // namespace

RegionLabel classify_with_level(Dimension n, PhasePoint p, double lambda) {
  const double nn = n.real();
  if (p.x < 0.0) {
    // Admissibility forces y > -1 here.
    return {Region::Region5_CompletePunctured, DomainKind::PuncturedSpace, false, true, CriticalArc::None};
  }
  if (p.y > 0.0) {
    if (std::abs(lambda / lambda_critical(n) - 1.0) <= kCriticalLevelRelTol) {
      return {Region::Region3_CriticalLevel, DomainKind::ExteriorDomain, false, false, CriticalArc::Upper};
    }
    return {Region::Region2_AE_Exterior, DomainKind::ExteriorDomain, false, false, CriticalArc::None};
  }
  // x > 0, y < 0.
  const double rel = lambda / lambda_critical(n) - 1.0;
  if (std::abs(rel) <= kCriticalLevelRelTol) {
    if (p.x < nn - 1.0) {
      return {Region::Region3_CriticalLevel, DomainKind::PuncturedSpace, false, true, CriticalArc::Inner};
    }
    return {Region::Region3_CriticalLevel, DomainKind::ExteriorDomain, false, false, CriticalArc::Outer};
  }
  if (rel < 0.0) {
    // Below the critical level the branch never meets the admissible line,
    // so the forward orbit always reaches the origin.
    return {Region::Region2_AE_Exterior, DomainKind::ExteriorDomain, false, false, CriticalArc::None};
  }
  if (p.x > nn - 1.0) {
    return {Region::Region4_FiniteTimeBlowup, DomainKind::BoundedBoundary, false, false, CriticalArc::None};
  }
  return {Region::Region5_CompletePunctured, DomainKind::PuncturedSpace, false, true, CriticalArc::None};
}

RegionLabel classify(Dimension n, PhasePoint p) {
  if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
    throw std::invalid_argument("phase point must be finite");
  }
  if (!is_admissible(p)) return {};
  if (p.x == 0.0 && p.y == 0.0) {
    return {Region::EuclideanFixedPoint, DomainKind::WholeSpace, false, true, CriticalArc::None};
  }
  if (p.x == 0.0) return axis_label(Region::AxisY, p.y);
  if (p.y == 0.0) return axis_label(Region::AxisX, p.x);
  return classify_with_level(n, p, level_value(n, p).lambda);
}

std::vector<double> admissible_line_crossings(Dimension n, PhasePoint p) {
  if (p.x == 0.0 || p.y == 0.0) {
    throw DomainError("admissible_line_crossings requires x*y != 0");
  }
  const double nn = n.real();
  const double lambda = level_value(n, p).lambda;
  const double c = std::pow(lambda, 1.0 / nn);
  const double sx = p.x > 0.0 ? 1.0 : -1.0;
  const double sy = p.y > 0.0 ? 1.0 : -1.0;
  // Along the branch, x = sx*u, y = sy*c*u^{1-1/n}; g(u) = 1 + x + y.
  auto g = [&](double u) { return 1.0 + sx * u + sy * c * std::pow(u, 1.0 - 1.0 / nn); };

  boost::math::tools::eps_tolerance<double> tol(52);
  std::vector<double> roots;
  auto solve = [&](double lo, double hi) {
    std::uintmax_t iters = 200;
    auto [a, b] = boost::math::tools::toms748_solve(g, lo, hi, tol, iters);
    roots.push_back(sx * 0.5 * (a + b));
  };
  auto upper_bracket = [&](double from) {
    double hi = std::max(2.0 * from, 1.0);
    while (g(hi) > 0.0 && hi < 1e300) hi *= 2.0;
    return hi;
  };

  if (sx > 0.0 && sy > 0.0) return roots;
  if (sx > 0.0) {
    // g convex on u > 0 with minimum at u*.
    const double u_star = lambda * std::pow((nn - 1.0) / nn, nn);
    if (g(u_star) < 0.0) {
      solve(0.0, u_star);
      double hi = u_star;
      do { hi *= 2.0; } while (g(hi) < 0.0);
      solve(u_star, hi);
    } else if (g(u_star) == 0.0) {
      roots.push_back(sx * u_star);
    }
    return roots;
  }
  // x < 0: g(0) = 1 and g -> -inf; exactly one crossing.
  const double hi = upper_bracket(1.0);
  solve(0.0, hi);
  return roots;
}

}  // namespace sfk
