#include "suspflow/ceiling.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace suspflow {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

CeilingFunction::CeilingFunction(double c0, std::vector<TrigTerm> terms, double alpha)
    : c0_(c0), terms_(std::move(terms)), alpha_(alpha) {}

CeilingFunction CeilingFunction::constant(double c0) {
  if (!(c0 > 0.0)) throw std::invalid_argument("constant ceiling must be positive");
  return CeilingFunction(c0, {}, c0);
}

CeilingFunction CeilingFunction::trig(double c0, std::vector<TrigTerm> terms) {
  double amp_sum = 0.0;
  for (const auto& t : terms) amp_sum += std::fabs(t.amplitude);
  const double alpha = c0 - amp_sum;
  if (!(alpha > 0.0)) {
    throw std::invalid_argument("trig ceiling lower bound c0 - sum|amplitude| must be positive");
  }
  return CeilingFunction(c0, std::move(terms), alpha);
}

double CeilingFunction::eval(const TorusPoint& x) const {
  double v = c0_;
  for (const auto& t : terms_) {
    v += t.amplitude * std::cos(kTwoPi * (t.freq1 * x.x1 + t.freq2 * x.x2) + t.phase);
  }
  return v;
}

Vec2 CeilingFunction::gradient(const TorusPoint& x) const {
  Vec2 g;
  for (const auto& t : terms_) {
    const double s = -t.amplitude * std::sin(kTwoPi * (t.freq1 * x.x1 + t.freq2 * x.x2) + t.phase);
    g.x1 += s * kTwoPi * t.freq1;
    g.x2 += s * kTwoPi * t.freq2;
  }
  return g;
}

double CeilingFunction::grid_min(int n) const {
  double m = eval(TorusPoint{0.0, 0.0});
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const TorusPoint p{static_cast<double>(i) / n, static_cast<double>(j) / n};
      m = std::min(m, eval(p));
    }
  }
  return m;
}

double birkhoff_sum(const CeilingFunction& c, const HyperbolicToralMap& f, const TorusPoint& x,
                    long long n) {
  if (n < 0) throw std::invalid_argument("birkhoff_sum requires n >= 0");
  double sum = 0.0;
  TorusPoint p = x;
  for (long long i = 0; i < n; ++i) {
    sum += c.eval(p);
    p = f.apply(p);
  }
  return sum;
}

double signed_birkhoff_sum(const CeilingFunction& c, const HyperbolicToralMap& f,
                           const TorusPoint& x, long long n) {
  if (n >= 0) return birkhoff_sum(c, f, x, n);
  double sum = 0.0;
  TorusPoint p = x;
  for (long long i = 0; i < -n; ++i) {
    p = f.apply_inverse(p);
    sum += c.eval(p);
  }
  return -sum;
}

}  // namespace suspflow
