#include "suspflow/smoothing.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>
#include <string>

namespace suspflow {

FiberReparam::FiberReparam(const TorusPoint& x, double epsilon, double cf_x, double cg_hx,
                           BumpShape shape, double delta)
    : x_(x),
      epsilon_(epsilon),
      cf_x_(cf_x),
      cg_hx_(cg_hx),
      bump_(BumpSpec{epsilon, cf_x - epsilon, cg_hx - cf_x, shape, delta}),
      margin_(1.0 + bump_.min_value()) {
  if (!(cf_x >= 3.0 * epsilon - 1e-12)) {
    throw std::invalid_argument("fiber shorter than 3*epsilon; epsilon must be alpha/3");
  }
  if (margin_ <= 0.0) {
    throw MonotonicityViolation(
        "fiber bump reaches " + std::to_string(bump_.min_value()) +
            " <= -1; reparametrization would not be monotone (try the plateau shape)",
        x.x1, x.x2, margin_);
  }

  const int n = grid_nodes;
  values_.resize(n);
  slopes_.resize(n);
  const double h = cf_x_ / (n - 1);
  const double support_lo = bump_.spec().a;
  const double support_hi = bump_.spec().b;
  // per-interval quadrature tolerance: 1e-11 total budget across the fiber
  const double tol = std::max(1e-15, 1e-11 / n * std::max(1.0, std::fabs(cg_hx - cf_x)));

  double cumulative = 0.0;
  values_[0] = 0.0;
  slopes_[0] = 1.0 + bump_(0.0);
  for (int i = 1; i < n; ++i) {
    const double lo = (i - 1) * h;
    const double hi = (i == n - 1) ? cf_x_ : i * h;
    const double a = std::max(lo, support_lo);
    const double b = std::min(hi, support_hi);
    if (a < b) {
      cumulative += adaptive_simpson([this](double t) { return bump_(t); }, a, b, tol);
    }
    values_[i] = hi + cumulative;
    slopes_[i] = 1.0 + bump_(hi);
  }

  // Fritsch-Carlson limiter: keeps the Hermite interpolant monotone even
  // where the analytic slopes overshoot a grid secant
  for (int i = 0; i + 1 < n; ++i) {
    const double secant = (values_[i + 1] - values_[i]) / h;
    if (secant <= 0.0) continue;  // guarded above; quadrature noise only
    const double a = slopes_[i] / secant;
    const double b = slopes_[i + 1] / secant;
    const double r = a * a + b * b;
    if (r > 9.0) {
      const double scale = 3.0 / std::sqrt(r);
      slopes_[i] *= scale;
      slopes_[i + 1] *= scale;
    }
  }
}

double FiberReparam::value(double t) const {
  if (t < -SuspensionSystem::seam_tolerance || t > cf_x_ + SuspensionSystem::seam_tolerance) {
    throw OutOfDomain("fiber reparametrization evaluated at " + std::to_string(t) +
                      " outside [0, " + std::to_string(cf_x_) + "]");
  }
  if (t <= 0.0) return 0.0;
  if (t >= cf_x_) return values_.back();

  const int n = grid_nodes;
  const double h = cf_x_ / (n - 1);
  int i = static_cast<int>(t / h);
  if (i > n - 2) i = n - 2;
  const double t0 = i * h;
  const double u = (t - t0) / h;
  const double v0 = values_[i];
  const double v1 = values_[i + 1];
  const double d0 = slopes_[i] * h;
  const double d1 = slopes_[i + 1] * h;

  const double u2 = u * u;
  const double u3 = u2 * u;
  return (2 * u3 - 3 * u2 + 1) * v0 + (u3 - 2 * u2 + u) * d0 + (-2 * u3 + 3 * u2) * v1 +
         (u3 - u2) * d1;
}

double FiberReparam::derivative(double t) const {
  if (t < -SuspensionSystem::seam_tolerance || t > cf_x_ + SuspensionSystem::seam_tolerance) {
    throw OutOfDomain("fiber reparametrization derivative outside the fiber");
  }
  return 1.0 + bump_(t);
}

SmoothedEquivalence::SmoothedEquivalence(EquivalencePair pair, BumpShape shape, double delta)
    : pair_(std::move(pair)), shape_(shape), delta_(delta), epsilon_(pair_.alpha() / 3.0) {}

std::shared_ptr<const FiberReparam> SmoothedEquivalence::fiber(const TorusPoint& x) const {
  // quantized key: probes of the same fiber repeat within 1e-12
  const Key key{std::llround(x.x1 * 1e12), std::llround(x.x2 * 1e12)};
  {
    std::shared_lock lock(mutex_);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  }
  const double cf_x = pair_.source().ceiling().eval(x);
  const double cg_hx = pair_.target().ceiling().eval(pair_.h().apply(x));
  auto rep = std::make_shared<const FiberReparam>(x, epsilon_, cf_x, cg_hx, shape_, delta_);
  std::unique_lock lock(mutex_);
  auto [it, inserted] = cache_.emplace(key, std::move(rep));
  return it->second;  // first insertion wins on a race
}

SuspensionPoint SmoothedEquivalence::apply(const SuspensionPoint& p) const {
  const auto rep = fiber(p.base);
  const TorusPoint y = pair_.h().apply(p.base);
  return pair_.target().normalize(y, rep->value(p.height));
}

double SmoothedEquivalence::time_change(const SuspensionPoint& p, double t) const {
  const auto landed = pair_.source().flow_detail(p, t);
  const double target_sums = signed_birkhoff_sum(pair_.target().ceiling(), pair_.target().map(),
                                                 pair_.h().apply(p.base), landed.steps);
  return target_sums + fiber(landed.point.base)->value(landed.point.height) -
         fiber(p.base)->value(p.height);
}

}  // namespace suspflow
