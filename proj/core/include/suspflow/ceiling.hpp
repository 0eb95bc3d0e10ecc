#pragma once

#include <vector>

#include "suspflow/torus.hpp"

namespace suspflow {

/// One term of a cosine polynomial on the torus:
///   amplitude * cos(2*pi*(freq1*x1 + freq2*x2) + phase).
/// Integer frequencies keep the term well defined on R^2/Z^2.
struct TrigTerm {
  double amplitude = 0.0;
  int freq1 = 0;
  int freq2 = 0;
  double phase = 0.0;
};

/// A smooth positive roof function over the torus with a certified lower
/// bound alpha > 0. Two families are supported: constants, and finite
/// cosine polynomials c0 + sum of TrigTerms whose certified bound is
/// c0 - sum |amplitude|. Both have exact analytic gradients.
class CeilingFunction {
 public:
  static CeilingFunction constant(double c0);
  static CeilingFunction trig(double c0, std::vector<TrigTerm> terms);

  double eval(const TorusPoint& x) const;
  Vec2 gradient(const TorusPoint& x) const;

  /// Certified lower bound: eval(x) >= alpha() > 0 everywhere.
  double alpha() const { return alpha_; }

  /// Minimum of eval over a uniform n-by-n grid (certification probe).
  double grid_min(int n) const;

  bool is_constant() const { return terms_.empty(); }
  double base_level() const { return c0_; }
  const std::vector<TrigTerm>& terms() const { return terms_; }

 private:
  CeilingFunction(double c0, std::vector<TrigTerm> terms, double alpha);

  double c0_ = 1.0;
  std::vector<TrigTerm> terms_;
  double alpha_ = 1.0;
};

/// Sum of the ceiling along the forward orbit: sum_{i=0}^{n-1} c(f^i(x)).
/// Empty sum for n = 0. Requires n >= 0.
double birkhoff_sum(const CeilingFunction& c, const HyperbolicToralMap& f, const TorusPoint& x,
                    long long n);

/// Signed extension used by backward flow: for n < 0 returns
/// -sum_{i=1}^{|n|} c(f^{-i}(x)), so that consecutive values always differ
/// by the ceiling at the intermediate orbit point.
double signed_birkhoff_sum(const CeilingFunction& c, const HyperbolicToralMap& f,
                           const TorusPoint& x, long long n);

}  // namespace suspflow
