#include "suspflow/equivalence.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace suspflow {

EquivalencePair::EquivalencePair(SuspensionSystem source, SuspensionSystem target, BaseConjugacy h,
                                 int grid_n, double grid_tol)
    : source_(std::move(source)), target_(std::move(target)), h_(std::move(h)) {
  alpha_ = std::min(source_.alpha(), target_.alpha());
  if (grid_n > 0) {
    double worst = 0.0;
    for (int i = 0; i < grid_n; ++i) {
      for (int j = 0; j < grid_n; ++j) {
        const TorusPoint x{static_cast<double>(i) / grid_n, static_cast<double>(j) / grid_n};
        const double r =
            torus_distance(target_.map().apply(h_.apply(x)), h_.apply(source_.map().apply(x)));
        worst = std::max(worst, r);
      }
    }
    if (worst > grid_tol) {
      throw std::invalid_argument("conjugacy identity g(h(x)) = h(f(x)) fails on grid, residual " +
                                  std::to_string(worst));
    }
  }
}

double EquivalencePair::ceiling_ratio(const TorusPoint& x) const {
  return target_.ceiling().eval(h_.apply(x)) / source_.ceiling().eval(x);
}

SuspensionPoint EquivalencePair::h_hat(const SuspensionPoint& p) const {
  const TorusPoint y = h_.apply(p.base);
  return target_.normalize(y, p.height * (target_.ceiling().eval(y) / source_.ceiling().eval(p.base)));
}

SuspensionPoint EquivalencePair::h_hat_inverse(const SuspensionPoint& q) const {
  const TorusPoint x = h_.apply_inverse(q.base);
  return source_.normalize(x, q.height * (source_.ceiling().eval(x) / target_.ceiling().eval(q.base)));
}

TimeChangeRecord EquivalencePair::tau(const SuspensionPoint& p, double t) const {
  const auto landed = source_.flow_detail(p, t);
  const long long n = landed.steps;

  const TorusPoint xn = source_.map().iterate(p.base, n);
  const double residual_height = p.height + t - signed_birkhoff_sum(source_.ceiling(),
                                                                    source_.map(), p.base, n);
  const TorusPoint y0 = h_.apply(p.base);
  const double target_sums = signed_birkhoff_sum(target_.ceiling(), target_.map(), y0, n);

  const double slope = ceiling_ratio(xn);
  const double tau_value = residual_height * slope - p.height * ceiling_ratio(p.base) + target_sums;

  return TimeChangeRecord{p, t, n, tau_value, slope};
}

double EquivalencePair::verify_equivalence(const SuspensionPoint& p, double t) const {
  const SuspensionPoint lhs = h_hat(source_.flow(p, t));
  const TimeChangeRecord rec = tau(p, t);
  const SuspensionPoint rhs = target_.flow(h_hat(p), rec.tau);
  return target_.section_distance(lhs, rhs);
}

std::pair<long long, long long> EquivalencePair::n_consistency(const SuspensionPoint& p,
                                                               double t) const {
  const TimeChangeRecord rec = tau(p, t);
  const SuspensionPoint q = h_hat(p);
  const long long n_target = target_.step_count(q.base, q.height, rec.tau);
  return {rec.n, n_target};
}

}  // namespace suspflow
