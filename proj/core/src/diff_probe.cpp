#include "suspflow/diff_probe.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace suspflow {

Mat3 Mat3::identity() {
  Mat3 r;
  r(0, 0) = r(1, 1) = r(2, 2) = 1.0;
  return r;
}

Mat3 Mat3::operator-(const Mat3& o) const {
  Mat3 r;
  for (std::size_t i = 0; i < 9; ++i) r.m[i] = m[i] - o.m[i];
  return r;
}

Mat3 Mat3::operator*(double s) const {
  Mat3 r;
  for (std::size_t i = 0; i < 9; ++i) r.m[i] = m[i] * s;
  return r;
}

Mat3 Mat3::operator+(const Mat3& o) const {
  Mat3 r;
  for (std::size_t i = 0; i < 9; ++i) r.m[i] = m[i] + o.m[i];
  return r;
}

double Mat3::max_abs() const {
  double v = 0.0;
  for (double e : m) v = std::max(v, std::fabs(e));
  return v;
}

double Mat3::det() const {
  const auto& a = *this;
  return a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
         a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
         a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
}

Mat3 analytic_jacobian_piecewise(const EquivalencePair& pair, const SuspensionPoint& p) {
  if (p.height == 0.0) {
    throw OnSection("piecewise Jacobian undefined on the section {height = 0}");
  }
  const Mat2d dh = pair.h().jacobian(p.base);  // NotDifferentiable propagates

  const TorusPoint x = p.base;
  const TorusPoint y = pair.h().apply(x);
  const double cf = pair.source().ceiling().eval(x);
  const double cg = pair.target().ceiling().eval(y);
  const Vec2 grad_cf = pair.source().ceiling().gradient(x);
  const Vec2 grad_cg = pair.target().ceiling().gradient(y);
  const double ratio = cg / cf;

  // d/dx_j of c_g(h(x)) by the chain rule through the columns of Dh
  const double dcg_dx1 = grad_cg.x1 * dh.a + grad_cg.x2 * dh.c;
  const double dcg_dx2 = grad_cg.x1 * dh.b + grad_cg.x2 * dh.d;
  const double dratio_dx1 = (dcg_dx1 * cf - cg * grad_cf.x1) / (cf * cf);
  const double dratio_dx2 = (dcg_dx2 * cf - cg * grad_cf.x2) / (cf * cf);

  Mat3 j;
  j(0, 0) = dh.a;
  j(0, 1) = dh.b;
  j(0, 2) = 0.0;
  j(1, 0) = dh.c;
  j(1, 1) = dh.d;
  j(1, 2) = 0.0;
  j(2, 0) = p.height * dratio_dx1;
  j(2, 1) = p.height * dratio_dx2;
  j(2, 2) = ratio;
  return j;
}

namespace {

SuspensionPoint perturb(const SuspensionSystem& domain, const SuspensionPoint& p, int axis,
                        double d) {
  switch (axis) {
    case 0:
      return SuspensionPoint{translate(p.base, d, 0.0), p.height};
    case 1:
      return SuspensionPoint{translate(p.base, 0.0, d), p.height};
    default: {
      const double h = p.height + d;
      if (h < 0.0 || h >= domain.ceiling().eval(p.base) - SuspensionSystem::seam_tolerance) {
        throw StepTooLarge("height stencil leaves the fiber; move the probe off the seam");
      }
      return SuspensionPoint{p.base, h};
    }
  }
}

// signed difference of two nearby suspension points, seam crossings rejected
std::array<double, 3> stencil_delta(const SuspensionSystem& codomain, const SuspensionPoint& a,
                                    const SuspensionPoint& b) {
  const double dh = a.height - b.height;
  if (std::fabs(dh) > 0.5 * codomain.alpha()) {
    throw StepTooLarge("stencil outputs straddle the target seam");
  }
  return {wrap_signed(a.base.x1 - b.base.x1), wrap_signed(a.base.x2 - b.base.x2), dh};
}

Mat3 central_jacobian(const SuspensionSystem& domain, const SuspensionSystem& codomain,
                      const SuspensionMap& map, const SuspensionPoint& p, double h) {
  Mat3 j;
  for (int axis = 0; axis < 3; ++axis) {
    const SuspensionPoint qp = map(perturb(domain, p, axis, h));
    const SuspensionPoint qm = map(perturb(domain, p, axis, -h));
    const auto d = stencil_delta(codomain, qp, qm);
    for (int i = 0; i < 3; ++i) j(i, axis) = d[static_cast<std::size_t>(i)] / (2.0 * h);
  }
  return j;
}

}  // namespace

Mat3 fd_jacobian(const SuspensionSystem& domain, const SuspensionSystem& codomain,
                 const SuspensionMap& map, const SuspensionPoint& p, double step) {
  const Mat3 coarse = central_jacobian(domain, codomain, map, p, step);
  const Mat3 fine = central_jacobian(domain, codomain, map, p, 0.5 * step);
  return fine * (4.0 / 3.0) + coarse * (-1.0 / 3.0);
}

JacobianReport jacobian_report(const EquivalencePair& pair, const SuspensionPoint& p,
                               double step) {
  JacobianReport rep;
  rep.point = p;
  rep.fd_step = step;
  rep.richardson_order = 1;
  rep.fd = fd_jacobian(pair.source(), pair.target(),
                       [&pair](const SuspensionPoint& q) { return pair.h_hat(q); }, p, step);
  rep.analytic = analytic_jacobian_piecewise(pair, p);
  rep.max_abs_error = (*rep.analytic - rep.fd).max_abs();
  return rep;
}

SectionChart::SectionChart(const SuspensionSystem& sys, const TorusPoint& anchor,
                           double box_radius)
    : sys_(&sys), anchor_(anchor), box_radius_(box_radius) {
  if (!(box_radius > 0.0) || box_radius >= 0.5 * sys.alpha()) {
    throw StepTooLarge("section chart box must be positive and below alpha/2");
  }
}

SuspensionPoint SectionChart::to_manifold(double u1, double u2, double w) const {
  if (std::max({std::fabs(u1), std::fabs(u2), std::fabs(w)}) > box_radius_) {
    throw StepTooLarge("chart coordinate outside the flow box");
  }
  return sys_->flow(SuspensionPoint{translate(anchor_, u1, u2), 0.0}, w);
}

std::array<double, 3> SectionChart::from_manifold(const SuspensionPoint& q) const {
  const double cq = sys_->ceiling().eval(q.base);
  TorusPoint base = q.base;
  double w = q.height;
  if (q.height > 0.5 * cq) {
    // below the seam: the chart reaches it as (f(x), negative time)
    base = sys_->map().apply(q.base);
    w = q.height - cq;
  }
  return {wrap_signed(base.x1 - anchor_.x1), wrap_signed(base.x2 - anchor_.x2), w};
}

namespace {

using ChartFn = std::function<std::array<double, 3>(double, double, double)>;

// second-order one-sided derivative in w from the side of sign, with one
// Richardson level
std::array<double, 3> column_one_sided(const ChartFn& f, double h, double sign) {
  auto at = [&](double d) { return f(0.0, 0.0, sign * d); };
  const auto f0 = at(0.0);
  auto diff = [&](double hh) {
    const auto f1 = at(hh);
    const auto f2 = at(2.0 * hh);
    std::array<double, 3> r{};
    for (std::size_t i = 0; i < 3; ++i) {
      r[i] = sign * (-3.0 * f0[i] + 4.0 * f1[i] - f2[i]) / (2.0 * hh);
    }
    return r;
  };
  const auto coarse = diff(h);
  const auto fine = diff(0.5 * h);
  std::array<double, 3> r{};
  for (std::size_t i = 0; i < 3; ++i) r[i] = (4.0 * fine[i] - coarse[i]) / 3.0;
  return r;
}

}  // namespace

double cross_section_check(const EquivalencePair& pair, const SuspensionMap& map,
                           const TorusPoint& x, double step) {
  const TorusPoint x_sec = pair.source().map().apply(x);  // where the fiber over x ends
  const TorusPoint y_sec = pair.h().apply(x_sec);
  const double box = std::min(0.45 * std::min(pair.source().alpha(), pair.target().alpha()), 0.1);
  if (!(step > 0.0) || 2.0 * step > box) {
    throw StepTooLarge("cross-section step too large for the chart box");
  }
  const SectionChart chart_src(pair.source(), x_sec, box);
  const SectionChart chart_tgt(pair.target(), y_sec, box);

  const ChartFn f = [&](double u1, double u2, double w) {
    return chart_tgt.from_manifold(map(chart_src.to_manifold(u1, u2, w)));
  };

  // The tangential columns of the two one-sided Jacobians sample the
  // section itself, so they coincide entry by entry; the disagreement can
  // only live in the flow-time column.
  const auto above = column_one_sided(f, step, +1.0);
  const auto below = column_one_sided(f, step, -1.0);

  double mismatch = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    mismatch = std::max(mismatch, std::fabs(above[i] - below[i]));
  }
  return mismatch;
}

double cross_section_check(const SmoothedEquivalence& se, const TorusPoint& x, double step) {
  return cross_section_check(se.pair(),
                             [&se](const SuspensionPoint& p) { return se.apply(p); }, x, step);
}

double cross_section_check_piecewise(const EquivalencePair& pair, const TorusPoint& x,
                                     double step) {
  return cross_section_check(pair, [&pair](const SuspensionPoint& p) { return pair.h_hat(p); }, x,
                             step);
}

DiffProbeResult point_differentiability_probe(const BaseConjugacy& h, const TorusPoint& x,
                                              SplitMix64& rng, int directions) {
  const TorusPoint hx = h.apply(x);
  std::vector<double> logs_delta;
  std::vector<double> logs_incr;
  int zero_increments = 0;
  int total = 0;

  for (int d = 0; d < directions; ++d) {
    const double angle = rng.next_double() * 2.0 * std::numbers::pi;
    const double v1 = std::cos(angle);
    const double v2 = std::sin(angle);
    for (int k = 4; k <= 20; ++k) {
      const double delta = std::ldexp(1.0, -k);
      const double incr = torus_distance(h.apply(translate(x, delta * v1, delta * v2)), hx);
      ++total;
      if (incr <= 0.0) {
        ++zero_increments;
        continue;
      }
      logs_delta.push_back(std::log2(delta));
      logs_incr.push_back(std::log2(incr));
    }
  }

  DiffProbeResult out;
  if (zero_increments > total / 2 || logs_delta.size() < 4) {
    out.degenerate = true;
    return out;
  }
  // least-squares line through (log delta, log increment)
  const double n = static_cast<double>(logs_delta.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < logs_delta.size(); ++i) {
    sx += logs_delta[i];
    sy += logs_incr[i];
    sxx += logs_delta[i] * logs_delta[i];
    sxy += logs_delta[i] * logs_incr[i];
  }
  out.exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  out.intercept = (sy - out.exponent * sx) / n;
  return out;
}

}  // namespace suspflow
