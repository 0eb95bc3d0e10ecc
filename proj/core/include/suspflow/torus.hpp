#pragma once

#include <cstdint>
#include <functional>

#include "suspflow/errors.hpp"

namespace suspflow {

/// Reduce mod 1 into [0, 1). Exact 1.0 (which floor-based reduction can
/// produce for tiny negative inputs) maps to 0.0 so representatives are
/// unique.
double wrap_unit(double v);

/// Signed representative of v mod 1 in [-0.5, 0.5).
double wrap_signed(double v);

/// A point on the 2-torus R^2/Z^2, stored as its canonical representative
/// with both coordinates in [0, 1).
struct TorusPoint {
  double x1 = 0.0;
  double x2 = 0.0;

  static TorusPoint wrapped(double a, double b) { return {wrap_unit(a), wrap_unit(b)}; }

  bool operator==(const TorusPoint&) const = default;
};

TorusPoint translate(const TorusPoint& p, double d1, double d2);

/// Flat quotient metric: per coordinate min(|d|, 1-|d|), combined Euclidean.
double torus_distance(const TorusPoint& p, const TorusPoint& q);

struct Vec2 {
  double x1 = 0.0;
  double x2 = 0.0;
};

/// 2x2 integer matrix.
struct Mat2i {
  long long a = 1, b = 0, c = 0, d = 1;

  long long det() const { return a * d - b * c; }
  /// Integer inverse; valid only when |det| = 1.
  Mat2i unimodular_inverse() const;
  bool operator==(const Mat2i&) const = default;
};

/// 2x2 real matrix (Jacobians of base conjugacies).
struct Mat2d {
  double a = 1, b = 0, c = 0, d = 1;
};

struct EigenData {
  double lambda_u = 0.0;  // |lambda_u| > 1
  double lambda_s = 0.0;  // |lambda_s| < 1, lambda_u * lambda_s = det
  Vec2 v_u;               // unit eigenvectors
  Vec2 v_s;
};

/// A hyperbolic automorphism of the 2-torus: an integer matrix with
/// |det| = 1 and no eigenvalue on the unit circle (trace condition
/// |tr| > 2 for det = +1, tr != 0 for det = -1), acting by x -> M x
/// (mod 1). Both conditions are checked at construction, so every live
/// instance is a valid Anosov map of the torus.
class HyperbolicToralMap {
 public:
  explicit HyperbolicToralMap(const Mat2i& m);

  TorusPoint apply(const TorusPoint& p) const;
  TorusPoint apply_inverse(const TorusPoint& p) const;
  /// f^n for any signed n.
  TorusPoint iterate(const TorusPoint& p, long long n) const;

  EigenData eigen_data() const;

  const Mat2i& matrix() const { return m_; }
  const Mat2i& inverse_matrix() const { return inv_; }

 private:
  Mat2i m_;
  Mat2i inv_;
};

/// The base conjugacy h between two toral maps. Built-in kinds (identity,
/// linear, affine) are analytically smooth and invertible; arbitrary
/// callables may be supplied with user-declared smoothness/invertibility.
class BaseConjugacy {
 public:
  enum class Kind { identity, linear, affine, callable };

  struct Callable {
    std::function<TorusPoint(const TorusPoint&)> forward;
    std::function<TorusPoint(const TorusPoint&)> inverse;   // optional
    std::function<Mat2d(const TorusPoint&)> jacobian;       // optional
    bool declared_smooth = false;
  };

  static BaseConjugacy identity();
  static BaseConjugacy linear(const Mat2i& b);
  static BaseConjugacy affine(const Mat2i& b, const TorusPoint& shift);
  static BaseConjugacy callable(Callable fns);

  TorusPoint apply(const TorusPoint& p) const;
  /// Throws NotInvertible for callables without a declared inverse.
  TorusPoint apply_inverse(const TorusPoint& p) const;
  /// Derivative at p. Throws NotDifferentiable for callables not declared
  /// smooth (or lacking a jacobian).
  Mat2d jacobian(const TorusPoint& p) const;

  Kind kind() const { return kind_; }
  bool smooth() const;
  bool invertible() const;
  const Mat2i& matrix() const { return b_; }
  const TorusPoint& shift() const { return shift_; }

 private:
  BaseConjugacy() = default;

  Kind kind_ = Kind::identity;
  Mat2i b_;
  Mat2i binv_;
  TorusPoint shift_;
  Callable fns_;
};

}  // namespace suspflow
