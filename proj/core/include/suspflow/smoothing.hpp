#pragma once

#include <memory>
#include <shared_mutex>
#include <unordered_map>
#include <vector>

#include "suspflow/bump.hpp"
#include "suspflow/equivalence.hpp"

namespace suspflow {

/// The monotone reparametrization of one fiber: Phi(t) = t + integral from 0
/// to t of the fiber bump, mapping [0, c_f(x)] onto [0, c_g(h(x))]. By
/// construction Phi is the identity on [0, epsilon] and a constant shift on
/// [c_f(x) - epsilon, c_f(x)] with epsilon = alpha/3, which is what makes
/// the smoothed equivalence well defined across the section.
///
/// Values come from a cumulative quadrature grid with monotone cubic
/// interpolation; the derivative is always the analytic 1 + bump(t).
class FiberReparam {
 public:
  /// Throws MonotonicityViolation when the bump dips to -1 somewhere, i.e.
  /// when Phi would fail to be a diffeomorphism of the fiber.
  FiberReparam(const TorusPoint& x, double epsilon, double cf_x, double cg_hx, BumpShape shape,
               double delta);

  /// Phi(t). Throws OutOfDomain outside [0, c_f(x)] (up to seam tolerance).
  double value(double t) const;
  /// Phi'(t) = 1 + bump(t), strictly positive.
  double derivative(double t) const;
  std::pair<double, double> eval(double t) const { return {value(t), derivative(t)}; }

  double epsilon() const { return epsilon_; }
  double domain_top() const { return cf_x_; }
  double range_top() const { return cg_hx_; }
  const TorusPoint& base() const { return x_; }
  /// min over the fiber of Phi' (closed form; positive for live instances).
  double derivative_margin() const { return margin_; }

  static constexpr int grid_nodes = 1024;

 private:
  TorusPoint x_;
  double epsilon_;
  double cf_x_;
  double cg_hx_;
  Bump bump_;
  double margin_;
  // cumulative grid over [0, cf_x]: values of Phi and (possibly limited)
  // Hermite slopes
  std::vector<double> values_;
  std::vector<double> slopes_;
};

/// The smoothed orbit equivalence (x, s) -> (h(x), Phi_x(s)). Fiber
/// reparametrizations are built lazily and memoized per base point; the
/// cache takes a shared lock for lookups and an exclusive lock for
/// insertion, so concurrent readers are safe.
class SmoothedEquivalence {
 public:
  explicit SmoothedEquivalence(EquivalencePair pair, BumpShape shape = BumpShape::plateau,
                               double delta = 0.1);

  SmoothedEquivalence(const SmoothedEquivalence&) = delete;
  SmoothedEquivalence& operator=(const SmoothedEquivalence&) = delete;

  const EquivalencePair& pair() const { return pair_; }
  BumpShape shape() const { return shape_; }
  double delta() const { return delta_; }
  /// epsilon = alpha/3 shared by every fiber.
  double epsilon() const { return epsilon_; }

  /// The reparametrization of the fiber over x (memoized). Throws
  /// MonotonicityViolation if the bump for this fiber folds.
  std::shared_ptr<const FiberReparam> fiber(const TorusPoint& x) const;

  /// The smoothed h_hat: (x, s) -> (h(x), Phi_x(s)).
  SuspensionPoint apply(const SuspensionPoint& p) const;

  /// Time change of the smoothed equivalence: the target flow time t' with
  /// flow_target(apply(p), t') = apply(flow_source(p, t)).
  double time_change(const SuspensionPoint& p, double t) const;

 private:
  EquivalencePair pair_;
  BumpShape shape_;
  double delta_;
  double epsilon_;

  struct Key {
    long long k1, k2;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      return std::hash<long long>()(k.k1) * 1000003ULL ^ std::hash<long long>()(k.k2);
    }
  };
  mutable std::unordered_map<Key, std::shared_ptr<const FiberReparam>, KeyHash> cache_;
  mutable std::shared_mutex mutex_;
};

}  // namespace suspflow
