#pragma once

#include <array>
#include <functional>
#include <optional>

#include "suspflow/rng.hpp"
#include "suspflow/smoothing.hpp"

namespace suspflow {

/// Small dense 3x3 matrix for Jacobians in (x1, x2, height) coordinates.
struct Mat3 {
  std::array<double, 9> m{};

  double& operator()(int i, int j) { return m[static_cast<std::size_t>(3 * i + j)]; }
  double operator()(int i, int j) const { return m[static_cast<std::size_t>(3 * i + j)]; }

  static Mat3 identity();
  Mat3 operator-(const Mat3& o) const;
  Mat3 operator*(double s) const;
  Mat3 operator+(const Mat3& o) const;
  double max_abs() const;
  double det() const;
};

/// Everything one finite-difference probe produces, ready for JSON-lines.
struct JacobianReport {
  SuspensionPoint point;
  std::optional<Mat3> analytic;
  Mat3 fd;
  double max_abs_error = 0.0;  // entrywise, when analytic is present
  double fd_step = 0.0;
  int richardson_order = 1;
};

using SuspensionMap = std::function<SuspensionPoint(const SuspensionPoint&)>;

/// The closed-form Jacobian of the fiber-scaling equivalence at an interior
/// point 0 < s < c_f(x): base block Dh, zero column, and bottom row
/// (s d(ratio)/dx1, s d(ratio)/dx2, ratio) with ratio = c_g(h(x))/c_f(x).
/// Throws OnSection at s = 0, where the piecewise formula does not apply.
Mat3 analytic_jacobian_piecewise(const EquivalencePair& pair, const SuspensionPoint& p);

/// Central-difference Jacobian with one Richardson level (combining steps
/// h and h/2). Base-coordinate perturbations wrap on the torus; height
/// perturbations must stay inside the fiber, and the stencil outputs must
/// stay on one side of the target seam, otherwise StepTooLarge.
Mat3 fd_jacobian(const SuspensionSystem& domain, const SuspensionSystem& codomain,
                 const SuspensionMap& map, const SuspensionPoint& p, double step);

JacobianReport jacobian_report(const EquivalencePair& pair, const SuspensionPoint& p, double step);

/// Flow-box chart around a section point: (u1, u2, w) -> flow of
/// (anchor + u, 0) by time w. Straightens the seam, so differentiability
/// across the quotient is readable off chart coordinates.
class SectionChart {
 public:
  SectionChart(const SuspensionSystem& sys, const TorusPoint& anchor, double box_radius);

  SuspensionPoint to_manifold(double u1, double u2, double w) const;
  std::array<double, 3> from_manifold(const SuspensionPoint& q) const;

  double box_radius() const { return box_radius_; }
  const TorusPoint& anchor() const { return anchor_; }

 private:
  const SuspensionSystem* sys_;
  TorusPoint anchor_;
  double box_radius_;
};

/// Max entrywise disagreement of the two one-sided Jacobians of the given
/// suspension map in flow-box charts across the seam over x, i.e. between
/// the fiber top (x, c_f(x)-) and the next section (f(x), 0+). Near zero
/// for a map differentiable across the section.
double cross_section_check(const EquivalencePair& pair, const SuspensionMap& map,
                           const TorusPoint& x, double step);

/// The smoothed equivalence through charts (the Theorem A witness).
double cross_section_check(const SmoothedEquivalence& se, const TorusPoint& x, double step);

/// The raw fiber-scaling equivalence (the negative control: one-sided
/// height slopes are c_g(h(x))/c_f(x) vs c_g(h(f x))/c_f(f x)).
double cross_section_check_piecewise(const EquivalencePair& pair, const TorusPoint& x,
                                     double step);

struct DiffProbeResult {
  double exponent = 0.0;   // log-log regression slope; ~1 for differentiable
  double intercept = 0.0;  // log2 of the increment scale
  bool degenerate = false; // zero increments (constant-like map)
};

/// Scaling-exponent estimate of h at x: regression of log |h(x+dv)-h(x)|
/// against log |d| over dyadic offsets 2^-4 .. 2^-20 in random directions.
/// Slope near 1 is consistent with differentiability at x; a Hoelder-gamma
/// singularity shows up as slope near gamma.
DiffProbeResult point_differentiability_probe(const BaseConjugacy& h, const TorusPoint& x,
                                              SplitMix64& rng, int directions = 8);

}  // namespace suspflow
