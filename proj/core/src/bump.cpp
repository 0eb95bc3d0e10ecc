#include "suspflow/bump.hpp"

#include <cmath>
#include <stdexcept>

namespace suspflow {

double exponential_kernel(double a, double b, double t) {
  if (t <= a || t >= b) return 0.0;
  return std::exp(-1.0 / ((t - a) * (b - t)));
}

double smooth_step(double u) {
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return 1.0;
  const double qa = std::exp(-1.0 / u);
  const double qb = std::exp(-1.0 / (1.0 - u));
  return qa / (qa + qb);
}

Bump::Bump(const BumpSpec& spec) : spec_(spec) {
  if (!(spec_.a < spec_.b)) throw std::invalid_argument("bump support needs a < b");
  if (spec_.shape == BumpShape::plateau && !(spec_.delta > 0.0 && spec_.delta < 1.0)) {
    throw std::invalid_argument("plateau shoulder fraction must lie in (0, 1)");
  }
  const double len = spec_.b - spec_.a;
  if (spec_.shape == BumpShape::plateau) {
    // shoulders are mirror images (S(u) + S(1-u) = 1), so each contributes
    // exactly half its width: integral = len - shoulder_width
    kernel_integral_ = len * (1.0 - 0.5 * spec_.delta);
  } else {
    // scale-aware tolerance: the kernel maximum can be astronomically small
    // for short supports
    const double scale = kernel_max() * len;
    if (!(scale > 0.0) || !std::isfinite(scale)) {
      throw QuadratureFailure("exponential kernel underflows on this support");
    }
    kernel_integral_ = adaptive_simpson([this](double t) { return kernel(t); }, spec_.a, spec_.b,
                                        1e-13 * scale);
  }
}

double Bump::kernel(double t) const {
  if (spec_.shape == BumpShape::exponential) {
    return exponential_kernel(spec_.a, spec_.b, t);
  }
  const double w = 0.5 * spec_.delta * (spec_.b - spec_.a);
  return smooth_step((t - spec_.a) / w) * smooth_step((spec_.b - t) / w);
}

double Bump::kernel_max() const {
  if (spec_.shape == BumpShape::plateau) return 1.0;
  const double len = spec_.b - spec_.a;
  return std::exp(-4.0 / (len * len));  // attained at the midpoint
}

double Bump::operator()(double t) const {
  if (spec_.integral == 0.0) return 0.0;
  if (t <= spec_.a || t >= spec_.b) return 0.0;
  return spec_.integral * kernel(t) / kernel_integral_;
}

double Bump::min_value() const {
  if (spec_.integral >= 0.0) return 0.0;
  return spec_.integral * kernel_max() / kernel_integral_;
}

double bump_eval(const BumpSpec& spec, double t) { return Bump(spec)(t); }

double bump_integral(const BumpSpec& spec) {
  const Bump bump(spec);
  if (spec.integral == 0.0) return 0.0;
  const double tol = std::max(1e-14, 1e-12 * std::fabs(spec.integral));
  return adaptive_simpson([&bump](double t) { return bump(t); }, spec.a, spec.b, tol);
}

}  // namespace suspflow
