#include "suspflow/torus.hpp"

#include <cmath>
#include <cstdlib>

namespace suspflow {

double wrap_unit(double v) {
  double r = v - std::floor(v);
  return r == 1.0 ? 0.0 : r;
}

double wrap_signed(double v) {
  double r = v - std::floor(v);
  if (r == 1.0) r = 0.0;
  return r >= 0.5 ? r - 1.0 : r;
}

TorusPoint translate(const TorusPoint& p, double d1, double d2) {
  return TorusPoint::wrapped(p.x1 + d1, p.x2 + d2);
}

double torus_distance(const TorusPoint& p, const TorusPoint& q) {
  double d1 = std::fabs(p.x1 - q.x1);
  double d2 = std::fabs(p.x2 - q.x2);
  d1 = std::min(d1, 1.0 - d1);
  d2 = std::min(d2, 1.0 - d2);
  return std::sqrt(d1 * d1 + d2 * d2);
}

Mat2i Mat2i::unimodular_inverse() const {
  const long long dt = det();
  // adj(M)/det with det = +-1 stays integral
  return Mat2i{d * dt, -b * dt, -c * dt, a * dt};
}

HyperbolicToralMap::HyperbolicToralMap(const Mat2i& m) : m_(m) {
  const long long dt = m.det();
  if (std::llabs(dt) != 1) {
    throw std::invalid_argument("toral map must be unimodular (|det| = 1)");
  }
  // no eigenvalue on the unit circle: |trace| > 2 when det = +1, and
  // trace != 0 when det = -1 (eigenvalues lambda, -1/lambda)
  const long long tr = m.a + m.d;
  if ((dt == 1 && std::llabs(tr) <= 2) || (dt == -1 && tr == 0)) {
    throw NotHyperbolic("toral map has an eigenvalue on the unit circle");
  }
  inv_ = m_.unimodular_inverse();
}

namespace {

TorusPoint apply_matrix(const Mat2i& m, const TorusPoint& p) {
  const double y1 = static_cast<double>(m.a) * p.x1 + static_cast<double>(m.b) * p.x2;
  const double y2 = static_cast<double>(m.c) * p.x1 + static_cast<double>(m.d) * p.x2;
  return TorusPoint::wrapped(y1, y2);
}

}  // namespace

TorusPoint HyperbolicToralMap::apply(const TorusPoint& p) const { return apply_matrix(m_, p); }

TorusPoint HyperbolicToralMap::apply_inverse(const TorusPoint& p) const {
  return apply_matrix(inv_, p);
}

TorusPoint HyperbolicToralMap::iterate(const TorusPoint& p, long long n) const {
  TorusPoint q = p;
  if (n >= 0) {
    for (long long i = 0; i < n; ++i) q = apply(q);
  } else {
    for (long long i = 0; i < -n; ++i) q = apply_inverse(q);
  }
  return q;
}

EigenData HyperbolicToralMap::eigen_data() const {
  const double tr = static_cast<double>(m_.a + m_.d);
  const double dt = static_cast<double>(m_.det());
  const double disc = tr * tr - 4.0 * dt;
  const double root = std::sqrt(disc);
  // larger-modulus root first, the other from the determinant to avoid
  // cancellation
  const double big = 0.5 * (tr + std::copysign(root, tr));
  const double small = dt / big;

  EigenData out;
  out.lambda_u = big;
  out.lambda_s = small;

  auto eigenvector = [&](double lambda) -> Vec2 {
    // (M - lambda I) v = 0; pick the better-conditioned row
    double v1, v2;
    if (std::fabs(static_cast<double>(m_.b)) >= std::fabs(static_cast<double>(m_.c))) {
      v1 = static_cast<double>(m_.b);
      v2 = lambda - static_cast<double>(m_.a);
    } else {
      v1 = lambda - static_cast<double>(m_.d);
      v2 = static_cast<double>(m_.c);
    }
    const double norm = std::sqrt(v1 * v1 + v2 * v2);
    v1 /= norm;
    v2 /= norm;
    if (v1 < 0.0 || (v1 == 0.0 && v2 < 0.0)) {  // deterministic orientation
      v1 = -v1;
      v2 = -v2;
    }
    return Vec2{v1, v2};
  };
  out.v_u = eigenvector(out.lambda_u);
  out.v_s = eigenvector(out.lambda_s);
  return out;
}

BaseConjugacy BaseConjugacy::identity() {
  BaseConjugacy h;
  h.kind_ = Kind::identity;
  return h;
}

BaseConjugacy BaseConjugacy::linear(const Mat2i& b) {
  if (std::llabs(b.det()) != 1) {
    throw std::invalid_argument("linear conjugacy matrix must be unimodular");
  }
  BaseConjugacy h;
  h.kind_ = Kind::linear;
  h.b_ = b;
  h.binv_ = b.unimodular_inverse();
  return h;
}

BaseConjugacy BaseConjugacy::affine(const Mat2i& b, const TorusPoint& shift) {
  BaseConjugacy h = linear(b);
  h.kind_ = Kind::affine;
  h.shift_ = shift;
  return h;
}

BaseConjugacy BaseConjugacy::callable(Callable fns) {
  if (!fns.forward) {
    throw std::invalid_argument("callable conjugacy needs a forward map");
  }
  BaseConjugacy h;
  h.kind_ = Kind::callable;
  h.fns_ = std::move(fns);
  return h;
}

TorusPoint BaseConjugacy::apply(const TorusPoint& p) const {
  switch (kind_) {
    case Kind::identity:
      return p;
    case Kind::linear:
      return apply_matrix(b_, p);
    case Kind::affine: {
      const TorusPoint q = apply_matrix(b_, p);
      return translate(q, shift_.x1, shift_.x2);
    }
    case Kind::callable:
      return fns_.forward(p);
  }
  return p;
}

TorusPoint BaseConjugacy::apply_inverse(const TorusPoint& p) const {
  switch (kind_) {
    case Kind::identity:
      return p;
    case Kind::linear:
      return apply_matrix(binv_, p);
    case Kind::affine:
      return apply_matrix(binv_, translate(p, -shift_.x1, -shift_.x2));
    case Kind::callable:
      if (!fns_.inverse) throw NotInvertible("callable conjugacy has no declared inverse");
      return fns_.inverse(p);
  }
  return p;
}

Mat2d BaseConjugacy::jacobian(const TorusPoint& p) const {
  switch (kind_) {
    case Kind::identity:
      return Mat2d{1, 0, 0, 1};
    case Kind::linear:
    case Kind::affine:
      return Mat2d{static_cast<double>(b_.a), static_cast<double>(b_.b),
                   static_cast<double>(b_.c), static_cast<double>(b_.d)};
    case Kind::callable:
      if (!fns_.declared_smooth || !fns_.jacobian) {
        throw NotDifferentiable("callable conjugacy not declared differentiable");
      }
      return fns_.jacobian(p);
  }
  return Mat2d{};
}

bool BaseConjugacy::smooth() const {
  return kind_ != Kind::callable || (fns_.declared_smooth && fns_.jacobian != nullptr);
}

bool BaseConjugacy::invertible() const {
  return kind_ != Kind::callable || fns_.inverse != nullptr;
}

}  // namespace suspflow
