#pragma once

#include <utility>

#include "suspflow/suspension.hpp"

namespace suspflow {

/// The per-orbit time change at one (point, time) evaluation: how long the
/// target flow must run so that the fiber-scaling map intertwines the two
/// flows, plus the landing data used by diagnostics.
struct TimeChangeRecord {
  SuspensionPoint point;  // where the source evaluation started
  double t = 0.0;         // source flow time
  long long n = 0;        // fibers crossed in the source
  double tau = 0.0;       // reparametrized target time
  double slope = 0.0;     // d tau / d t = c_g(h(f^n x)) / c_f(f^n x) > 0
};

/// Two suspensions joined by a base conjugacy h with g о h = h о f. Carries
/// the explicit orbit equivalence
///   h_hat(x, s) = (h(x), s * c_g(h(x)) / c_f(x)),
/// its inverse, and the time change tau making the flows correspond.
class EquivalencePair {
 public:
  /// Verifies the conjugacy identity on a uniform grid at construction
  /// (grid_n = 0 skips the check, for deliberately broken fixtures).
  EquivalencePair(SuspensionSystem source, SuspensionSystem target, BaseConjugacy h,
                  int grid_n = 64, double grid_tol = 1e-10);

  const SuspensionSystem& source() const { return source_; }
  const SuspensionSystem& target() const { return target_; }
  const BaseConjugacy& h() const { return h_; }

  /// Common certified lower bound of the two ceilings.
  double alpha() const { return alpha_; }

  /// Fiber ratio c_g(h(x)) / c_f(x).
  double ceiling_ratio(const TorusPoint& x) const;

  SuspensionPoint h_hat(const SuspensionPoint& p) const;
  /// Throws NotInvertible when h has no inverse.
  SuspensionPoint h_hat_inverse(const SuspensionPoint& q) const;

  TimeChangeRecord tau(const SuspensionPoint& p, double t) const;

  /// section_distance in the target between h_hat of the flowed point and
  /// the target flow of h_hat by tau: zero in exact arithmetic.
  double verify_equivalence(const SuspensionPoint& p, double t) const;

  /// Step counts of the corresponding source and target evaluations;
  /// equal by construction.
  std::pair<long long, long long> n_consistency(const SuspensionPoint& p, double t) const;

 private:
  SuspensionSystem source_;
  SuspensionSystem target_;
  BaseConjugacy h_;
  double alpha_ = 0.0;
};

}  // namespace suspflow
