#pragma once

#include "suspflow/ceiling.hpp"
#include "suspflow/torus.hpp"

namespace suspflow {

/// Canonical representative of a point in the suspension space: base on the
/// torus and height with 0 <= height < c(base). The identified top of each
/// fiber, (x, c(x)), is stored as (f(x), 0).
struct SuspensionPoint {
  TorusPoint base;
  double height = 0.0;
};

struct FlowResult {
  SuspensionPoint point;
  long long steps = 0;  // signed number of fibers crossed
};

/// The suspension of a hyperbolic toral map under a positive roof function:
/// the quotient of {(x, s) : 0 <= s <= c(x)} by (x, c(x)) ~ (f(x), 0),
/// carrying the unit-speed vertical flow.
class SuspensionSystem {
 public:
  SuspensionSystem(HyperbolicToralMap map, CeilingFunction ceiling);

  const HyperbolicToralMap& map() const { return map_; }
  const CeilingFunction& ceiling() const { return ceiling_; }
  double alpha() const { return ceiling_.alpha(); }

  /// Canonical representative of (base, height) for any finite height,
  /// walking the identification forward or backward as needed. Heights
  /// within seam_tolerance of the roof are pushed through the
  /// identification so representatives stay unique at the seam.
  SuspensionPoint normalize(const TorusPoint& base, double height) const;

  /// The unique signed n with S_n <= s + t < S_{n+1}, where S_n is the
  /// signed Birkhoff sum of the ceiling at x. Requires 0 <= s < c(x).
  /// Equality at a partial sum resolves to the larger n (height 0).
  long long step_count(const TorusPoint& x, double s, double t) const;

  SuspensionPoint flow(const SuspensionPoint& p, double t) const;

  /// Flow plus the number of fibers crossed (what trajectory exports log).
  FlowResult flow_detail(const SuspensionPoint& p, double t) const;

  /// Quotient metric between canonical representatives: minimum over q
  /// itself and q pushed once up/down through the identification of
  /// torus distance plus height difference. Symmetric, zero iff equal.
  double section_distance(const SuspensionPoint& p, const SuspensionPoint& q) const;

  static constexpr double seam_tolerance = 1e-12;

 private:
  HyperbolicToralMap map_;
  CeilingFunction ceiling_;
};

}  // namespace suspflow
