#pragma once

#include "suspflow/quadrature.hpp"

namespace suspflow {

enum class BumpShape {
  exponential,  // classic exp(-1/((t-a)(b-t))) kernel
  plateau,      // smoothed indicator: flat interior, C-infinity shoulders
};

/// A C-infinity function supported on (a, b) with prescribed integral c.
/// The plateau shape keeps |min| close to |average| (shoulder fraction
/// delta of each half-support), which is what the monotonicity guard of
/// the fiber reparametrization wants; the exponential shape is the
/// sharply peaked classic kernel.
struct BumpSpec {
  double a = 0.0;
  double b = 1.0;
  double integral = 0.0;  // prescribed value of the total integral
  BumpShape shape = BumpShape::plateau;
  double delta = 0.1;  // plateau shoulder fraction, in (0, 1)
};

/// Unnormalized kernel exp(-1/((t-a)(b-t))) on (a, b), zero outside. The
/// product (t-a)(b-t) is positive on the open support, so the exponent
/// tends to -infinity at both endpoints and all one-sided derivatives
/// vanish there.
double exponential_kernel(double a, double b, double t);

/// C-infinity step: 0 for u <= 0, 1 for u >= 1, strictly increasing
/// between, built from the exp(-1/u) gadget.
double smooth_step(double u);

/// Normalized bump: spec.integral * kernel / (integral of kernel).
class Bump {
 public:
  explicit Bump(const BumpSpec& spec);

  double operator()(double t) const;

  /// Minimum over the support, from the closed-form extremum of each
  /// kernel (the kernel maximum scaled by the normalization).
  double min_value() const;

  /// Integral of the kernel over (a, b) used for normalization.
  double kernel_integral() const { return kernel_integral_; }
  const BumpSpec& spec() const { return spec_; }

 private:
  double kernel(double t) const;
  double kernel_max() const;

  BumpSpec spec_;
  double kernel_integral_ = 0.0;
};

/// One-shot evaluation of the normalized bump described by spec.
double bump_eval(const BumpSpec& spec, double t);

/// Fresh adaptive quadrature of the normalized bump over its support;
/// returns spec.integral up to quadrature tolerance by construction.
double bump_integral(const BumpSpec& spec);

}  // namespace suspflow
