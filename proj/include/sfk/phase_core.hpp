#pragma once

// Algebraic layer of the planar reduction for scalar-flat U(n)-invariant
// Kähler metrics. A radial potential u(t), t = log(|z|^2/2), with
// v = log u_t is encoded by the phase point
//
//   x = (1-n) v_t - v_tt/v_t + n - 1,     y = n v_t + v_tt/v_t - n,
//
// so that v_t = 1 + x + y. Scalar-flatness is equivalent to
//
//   x_t = -n x (1+x+y),   y_t = (1-n) y (1+x+y),   1 + x + y > 0.

#include <stdexcept>
#include <string_view>
#include <vector>

namespace sfk {

/// Raised when an input is outside the mathematical domain of an operation
/// (inadmissible seed, point off the minimal line, undefined level, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Complex dimension n >= 2.
class Dimension {
 public:
  explicit Dimension(int n);

  int value() const noexcept { return n_; }
  double real() const noexcept { return static_cast<double>(n_); }

  friend bool operator==(Dimension, Dimension) = default;

 private:
  int n_;
};

struct PhasePoint {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const PhasePoint&, const PhasePoint&) = default;
};

struct FieldVector {
  double dx = 0.0;
  double dy = 0.0;
};

/// Value of the conserved function F(x, y) = |x|^{1-n} |y|^n.
/// Points on the y axis (x = 0, y != 0) carry +infinity.
struct LevelValue {
  double lambda = 0.0;

  bool is_infinite() const noexcept;
};

enum class Region {
  Inadmissible,
  EuclideanFixedPoint,
  AxisX,  // y0 = 0 family, closed form with k = n
  AxisY,  // x0 = 0 family, closed form with k = n - 1
  Region2_AE_Exterior,
  Region3_CriticalLevel,
  Region4_FiniteTimeBlowup,
  Region5_CompletePunctured,
};

enum class DomainKind {
  None,             // inadmissible
  WholeSpace,       // all of C^n
  PuncturedSpace,   // C^n \ {0} (or the quotient of its blow-up)
  ExteriorDomain,   // {|z|^2 > 2 e^{-T}}
  BoundedBoundary,  // incomplete at both ends, metric with boundary
};

/// Branch of the critical level set F = lambda_crit with x > 0.
enum class CriticalArc {
  None,
  Upper,  // y > 0, joins infinity to the origin
  Inner,  // 0 < x < n-1, y < 0, joins the tangency point to the origin
  Outer,  // x > n-1, y < 0, joins infinity to the tangency point
};

struct RegionLabel {
  Region tag = Region::Inadmissible;
  DomainKind domain = DomainKind::None;
  bool divisor_possible = false;
  bool complete_without_boundary = false;
  CriticalArc arc = CriticalArc::None;
};

std::string_view to_string(Region r) noexcept;
std::string_view to_string(DomainKind d) noexcept;
std::string_view to_string(CriticalArc a) noexcept;
std::string_view domain_description(const RegionLabel& label) noexcept;

/// Relative tolerance on lambda / lambda_crit - 1 for critical-level membership.
inline constexpr double kCriticalLevelRelTol = 1e-9;

inline bool is_admissible(PhasePoint p) noexcept { return 1.0 + p.x + p.y > 0.0; }

FieldVector vector_field(Dimension n, PhasePoint p) noexcept;

/// Throws DomainError at the origin, where the two axis limits disagree.
LevelValue level_value(Dimension n, PhasePoint p);

double lambda_critical(Dimension n) noexcept;

/// Point (n-1, -n) where the critical level touches the admissible line.
PhasePoint tangency_point(Dimension n) noexcept;

/// (n-1) x + n y + 2n - 1; vanishes exactly on the line of minimal spheres.
double minimal_line_residual(Dimension n, PhasePoint p) noexcept;

/// Axis families: B = -y0/(1+y0) on x = 0, B = -x0/(1+x0) on y = 0.
double axis_parameter(double axis_coordinate) noexcept;

RegionLabel classify(Dimension n, PhasePoint p);

/// Same decision tree with lambda supplied by the caller (exact arithmetic
/// callers). Only meaningful for x*y != 0.
RegionLabel classify_with_level(Dimension n, PhasePoint p, double lambda);

/// Abscissae w of the points (w, -1-w) where the level curve through p
/// meets the admissible line, restricted to the branch (same signs as p).
/// Sorted by |w|. Requires x*y != 0.
std::vector<double> admissible_line_crossings(Dimension n, PhasePoint p);

}  // namespace sfk
