#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "suspflow/diff_probe.hpp"
#include "support/fixtures.hpp"

using namespace suspflow;

TEST_CASE("analytic piecewise jacobian in degenerate cases") {
  // equal constant roofs, identity h: the equivalence is the identity map
  const auto id_pair = fixtures::constant_pair(1.0, 1.0);
  const Mat3 j = analytic_jacobian_piecewise(id_pair, {{0.2, 0.3}, 0.5});
  CHECK((j - Mat3::identity()).max_abs() == 0.0);

  // constant roofs 1 and 2: diag(1, 1, 2) at any interior height
  const auto pair2 = fixtures::constant_pair(1.0, 2.0);
  const Mat3 k = analytic_jacobian_piecewise(pair2, {{0.7, 0.1}, 0.4});
  Mat3 expect = Mat3::identity();
  expect(2, 2) = 2.0;
  CHECK((k - expect).max_abs() == 0.0);
}

TEST_CASE("piecewise jacobian is undefined on the section") {
  const auto pair = fixtures::demo_pair();
  CHECK_THROWS_AS(analytic_jacobian_piecewise(pair, {{0.2, 0.3}, 0.0}), OnSection);
}

TEST_CASE("fd jacobian of the identity map") {
  const auto sys = SuspensionSystem(fixtures::cat_map(), fixtures::cosine_roof());
  const Mat3 j = fd_jacobian(sys, sys, [](const SuspensionPoint& p) { return p; },
                             {{0.3, 0.6}, 0.4}, 1e-5);
  CHECK((j - Mat3::identity()).max_abs() < 1e-10);
}

TEST_CASE("fd jacobian recovers the base block of a linear conjugacy") {
  const EquivalencePair shear_pair(SuspensionSystem(fixtures::cat_map(),
                                                    CeilingFunction::constant(1.0)),
                                   SuspensionSystem(fixtures::cat_conjugate(),
                                                    CeilingFunction::constant(1.0)),
                                   BaseConjugacy::linear(fixtures::shear()));
  const Mat3 j = fd_jacobian(shear_pair.source(), shear_pair.target(),
                             [&](const SuspensionPoint& p) { return shear_pair.h_hat(p); },
                             {{0.3, 0.6}, 0.4}, 1e-5);
  CHECK(j(0, 0) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(j(0, 1) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(j(1, 0) == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(j(1, 1) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(j(2, 2) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("fd matches the analytic piecewise jacobian at interior points") {
  const auto pair = fixtures::demo_pair();
  SplitMix64 rng(57);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const TorusPoint x = fixtures::random_point(rng);
    const double s = (0.1 + 0.8 * rng.next_double()) * pair.source().ceiling().eval(x);
    const JacobianReport rep = jacobian_report(pair, {x, s}, 1e-5);
    worst = std::max(worst, rep.max_abs_error);
  }
  CHECK(worst < 1e-6);
}

TEST_CASE("plain central differences converge at second order") {
  const auto pair = fixtures::demo_pair();
  SplitMix64 rng(67);
  auto map = [&pair](const SuspensionPoint& p) { return pair.h_hat(p); };

  int checked = 0;
  for (int i = 0; i < 40; ++i) {
    const TorusPoint x = fixtures::random_point(rng);
    const double s = (0.2 + 0.6 * rng.next_double()) * pair.source().ceiling().eval(x);
    const SuspensionPoint p{x, s};
    const Mat3 truth = analytic_jacobian_piecewise(pair, p);

    // raw second-order centrals, no Richardson: halving the step should
    // shrink the error about fourfold
    auto central = [&](double h) {
      Mat3 j;
      for (int axis = 0; axis < 3; ++axis) {
        SuspensionPoint pp = p, pm = p;
        if (axis == 0) {
          pp.base = translate(p.base, h, 0.0);
          pm.base = translate(p.base, -h, 0.0);
        } else if (axis == 1) {
          pp.base = translate(p.base, 0.0, h);
          pm.base = translate(p.base, 0.0, -h);
        } else {
          pp.height += h;
          pm.height -= h;
        }
        const SuspensionPoint qp = map(pp);
        const SuspensionPoint qm = map(pm);
        j(0, axis) = wrap_signed(qp.base.x1 - qm.base.x1) / (2.0 * h);
        j(1, axis) = wrap_signed(qp.base.x2 - qm.base.x2) / (2.0 * h);
        j(2, axis) = (qp.height - qm.height) / (2.0 * h);
      }
      return j;
    };

    const double err_h = (central(1e-3) - truth).max_abs();
    const double err_h2 = (central(5e-4) - truth).max_abs();
    if (err_h < 1e-9) continue;  // truncation term vanishes at this point
    CHECK(err_h / err_h2 >= 3.0);
    ++checked;
  }
  CHECK(checked >= 30);
}

TEST_CASE("height stencils respect the fiber") {
  const auto pair = fixtures::demo_pair();
  auto map = [&pair](const SuspensionPoint& p) { return pair.h_hat(p); };
  CHECK_THROWS_AS(fd_jacobian(pair.source(), pair.target(), map, {{0.2, 0.2}, 1e-9}, 1e-5),
                  StepTooLarge);
}

TEST_CASE("section charts are local inverses across the seam") {
  const auto sys = SuspensionSystem(fixtures::cat_map(), fixtures::cosine_roof());
  const TorusPoint anchor{0.3, 0.4};
  const SectionChart chart(sys, anchor, 0.05);
  for (const double w : {-0.04, -0.01, 0.0, 0.01, 0.04}) {
    for (const double u1 : {-0.03, 0.0, 0.02}) {
      const SuspensionPoint p = chart.to_manifold(u1, 0.01, w);
      const auto back = chart.from_manifold(p);
      CHECK(back[0] == doctest::Approx(u1).epsilon(1e-12));
      CHECK(back[1] == doctest::Approx(0.01).epsilon(1e-12));
      CHECK(back[2] == doctest::Approx(w).epsilon(1e-12));
    }
  }
  CHECK_THROWS_AS(chart.to_manifold(0.2, 0.0, 0.0), StepTooLarge);
  CHECK_THROWS_AS(SectionChart(sys, anchor, 10.0), StepTooLarge);
}

TEST_CASE("cross-section check: conjugacy case is flat") {
  const SmoothedEquivalence ce(fixtures::constant_pair(1.0, 1.0));
  CHECK(cross_section_check(ce, {0.2, 0.7}, 1e-4) < 1e-9);
}

TEST_CASE("cross-section check: smoothing repairs the seam") {
  const auto pair = fixtures::demo_pair();
  const SmoothedEquivalence se(fixtures::demo_pair());
  SplitMix64 rng(73);
  int generic = 0;
  for (int i = 0; i < 50; ++i) {
    const TorusPoint x = fixtures::random_point(rng);
    const double smoothed = cross_section_check(se, x, 1e-4);
    CHECK(smoothed < 1e-5);

    const double jump = std::fabs(pair.ceiling_ratio(x) -
                                  pair.ceiling_ratio(pair.source().map().apply(x)));
    const double piecewise = cross_section_check_piecewise(pair, x, 1e-4);
    if (jump > 0.02) {
      CHECK(piecewise > 1e-2);
      // the mismatch is exactly the jump of the fiber ratio across the seam
      CHECK(piecewise == doctest::Approx(jump).epsilon(1e-3));
      ++generic;
    }
  }
  CHECK(generic >= 20);  // the cosine roofs make most fibers generic
}

TEST_CASE("smoothed jacobian determinant stays positive at probes") {
  const SmoothedEquivalence se(fixtures::demo_pair());
  const auto& pair = se.pair();
  SplitMix64 rng(79);
  for (int i = 0; i < 50; ++i) {
    const TorusPoint x = fixtures::random_point(rng);
    const double s = (0.1 + 0.8 * rng.next_double()) * pair.source().ceiling().eval(x);
    const Mat3 j = fd_jacobian(pair.source(), pair.target(),
                               [&se](const SuspensionPoint& p) { return se.apply(p); }, {x, s},
                               1e-5);
    CHECK(j.det() > 0.0);
  }
}

TEST_CASE("differentiability probe: linear maps score slope one") {
  SplitMix64 rng(97);
  const auto lin = BaseConjugacy::linear(fixtures::shear());
  const DiffProbeResult r = point_differentiability_probe(lin, {0.3, 0.4}, rng);
  CHECK_FALSE(r.degenerate);
  CHECK(r.exponent == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("differentiability probe: a square-root distortion scores 1/2 at its singular point") {
  // w(u) = sqrt(u) on [0, 1) in the first coordinate: a homeomorphism of
  // the torus fixing 0, Hoelder-1/2 at u = 0 and smooth elsewhere
  BaseConjugacy::Callable fns;
  fns.forward = [](const TorusPoint& p) {
    return TorusPoint{std::sqrt(p.x1), p.x2};
  };
  const auto h = BaseConjugacy::callable(fns);

  SplitMix64 rng(103);
  const DiffProbeResult singular = point_differentiability_probe(h, {0.0, 0.0}, rng);
  CHECK_FALSE(singular.degenerate);
  CHECK(std::fabs(singular.exponent - 0.5) < 0.05);

  const DiffProbeResult generic = point_differentiability_probe(h, {0.3, 0.6}, rng);
  CHECK_FALSE(generic.degenerate);
  CHECK(std::fabs(generic.exponent - 1.0) < 0.05);
}

TEST_CASE("differentiability probe flags constant maps as degenerate") {
  BaseConjugacy::Callable fns;
  fns.forward = [](const TorusPoint&) { return TorusPoint{0.25, 0.25}; };
  const auto h = BaseConjugacy::callable(fns);
  SplitMix64 rng(107);
  const DiffProbeResult r = point_differentiability_probe(h, {0.1, 0.9}, rng);
  CHECK(r.degenerate);
}
