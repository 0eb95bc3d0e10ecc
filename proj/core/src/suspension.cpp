#include "suspflow/suspension.hpp"

#include <cmath>
#include <stdexcept>

namespace suspflow {

SuspensionSystem::SuspensionSystem(HyperbolicToralMap map, CeilingFunction ceiling)
    : map_(std::move(map)), ceiling_(std::move(ceiling)) {}

SuspensionPoint SuspensionSystem::normalize(const TorusPoint& base, double height) const {
  if (!std::isfinite(height)) throw std::invalid_argument("height must be finite");
  TorusPoint x = base;
  double h = height;
  while (h < -seam_tolerance) {
    x = map_.apply_inverse(x);
    h += ceiling_.eval(x);
  }
  if (h < 0.0) h = 0.0;
  for (;;) {
    const double cx = ceiling_.eval(x);
    if (h < cx - seam_tolerance) break;
    h -= cx;
    x = map_.apply(x);
    if (h < 0.0) h = 0.0;
  }
  return SuspensionPoint{x, h};
}

long long SuspensionSystem::step_count(const TorusPoint& x, double s, double t) const {
  return flow_detail(SuspensionPoint{x, s}, t).steps;
}

SuspensionPoint SuspensionSystem::flow(const SuspensionPoint& p, double t) const {
  return flow_detail(p, t).point;
}

FlowResult SuspensionSystem::flow_detail(const SuspensionPoint& p, double t) const {
  if (t == 0.0) return FlowResult{p, 0};

  const double total = p.height + t;
  // alpha bounds every fiber crossing from below, so this many iterations
  // always suffice
  const long long cap =
      static_cast<long long>(std::ceil((std::fabs(t) + p.height) / ceiling_.alpha())) + 2;

  TorusPoint x = p.base;
  long long n = 0;
  double s2 = 0.0;

  if (total >= 0.0) {
    double sum = 0.0;  // birkhoff partial sum S_n
    double cx = ceiling_.eval(x);
    while (sum + cx <= total) {
      sum += cx;
      x = map_.apply(x);
      ++n;
      if (n > cap) throw std::runtime_error("flow: forward iteration cap exceeded");
      cx = ceiling_.eval(x);
    }
    s2 = total - sum;
  } else {
    double back = 0.0;  // -S_n for n < 0
    while (total < -back) {
      x = map_.apply_inverse(x);
      back += ceiling_.eval(x);
      --n;
      if (-n > cap) throw std::runtime_error("flow: backward iteration cap exceeded");
    }
    s2 = total + back;
  }

  // seam snap: land exactly on the next section instead of epsilon below
  // the roof
  const double cx = ceiling_.eval(x);
  if (s2 >= cx - seam_tolerance) {
    s2 -= cx;
    if (s2 < 0.0) s2 = 0.0;
    x = map_.apply(x);
    ++n;
  }
  if (s2 < 0.0) s2 = 0.0;
  return FlowResult{SuspensionPoint{x, s2}, n};
}

namespace {

double rep_distance(const SuspensionPoint& a, const TorusPoint& base, double height) {
  return torus_distance(a.base, base) + std::fabs(a.height - height);
}

// min over b itself and b pushed once up/down through the identification
double one_sided_distance(const HyperbolicToralMap& f, const CeilingFunction& c,
                          const SuspensionPoint& a, const SuspensionPoint& b) {
  double best = rep_distance(a, b.base, b.height);
  // up: (x, h) ~ (f(x), h - c(x))
  best = std::min(best, rep_distance(a, f.apply(b.base), b.height - c.eval(b.base)));
  // down: (x, h) ~ (f^{-1}(x), h + c(f^{-1}(x)))
  const TorusPoint down = f.apply_inverse(b.base);
  best = std::min(best, rep_distance(a, down, b.height + c.eval(down)));
  return best;
}

}  // namespace

double SuspensionSystem::section_distance(const SuspensionPoint& p,
                                          const SuspensionPoint& q) const {
  // evaluated from both sides so the result is exactly symmetric
  return std::min(one_sided_distance(map_, ceiling_, p, q),
                  one_sided_distance(map_, ceiling_, q, p));
}

}  // namespace suspflow
