#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "suspflow/rng.hpp"
#include "suspflow/smoothing.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace suspflow;

TEST_CASE("fiber reparametrization endpoints and plateaus") {
  const SmoothedEquivalence se(fixtures::demo_pair());
  SplitMix64 rng(19);
  for (int i = 0; i < 25; ++i) {
    const TorusPoint x = fixtures::random_point(rng);
    const auto rep = se.fiber(x);
    const double eps = rep->epsilon();
    const double top = rep->domain_top();
    const double shift = rep->range_top() - top;

    // identity on [0, eps]
    for (double t = 0.0; t <= eps; t += eps / 7.0) {
      CHECK(std::fabs(rep->value(t) - t) < 1e-10);
      CHECK(rep->derivative(t) == 1.0);
    }
    // constant shift on [top - eps, top]
    for (double t = top - eps; t <= top; t += eps / 7.0) {
      CHECK(std::fabs(rep->value(t) - (t + shift)) < 1e-10);
      CHECK(rep->derivative(t) == 1.0);
    }
    CHECK(rep->value(0.0) == 0.0);
    CHECK(std::fabs(rep->value(top) - rep->range_top()) < 1e-9);
  }
}

TEST_CASE("fiber reparametrization is the identity in the conjugacy case") {
  const SmoothedEquivalence se(fixtures::conjugacy_pair());
  SplitMix64 rng(23);
  for (int i = 0; i < 10; ++i) {
    const TorusPoint x = fixtures::random_point(rng);
    const auto rep = se.fiber(x);
    for (int j = 0; j <= 32; ++j) {
      const double t = rep->domain_top() * j / 32.0;
      CHECK(std::fabs(rep->value(t) - t) < 1e-12);
    }
  }
}

TEST_CASE("derivative is analytic 1 + bump and strictly positive") {
  const SmoothedEquivalence se(fixtures::demo_pair());
  SplitMix64 rng(29);
  for (int i = 0; i < 20; ++i) {
    const TorusPoint x = fixtures::random_point(rng);
    const auto rep = se.fiber(x);
    CHECK(rep->derivative_margin() > 0.0);
    double min_d = 1e300;
    for (int j = 0; j <= 10000; ++j) {
      const double t = rep->domain_top() * j / 10000.0;
      const double d = rep->derivative(t);
      min_d = std::min(min_d, d);
      CHECK(d > 0.0);
    }
    CHECK(min_d >= rep->derivative_margin() - 1e-12);
  }
}

TEST_CASE("value is consistent with quadrature of the derivative") {
  const SmoothedEquivalence se(fixtures::demo_pair());
  const auto rep = se.fiber({0.37, 0.81});
  for (const double frac : {0.31, 0.5, 0.77, 0.93}) {
    const double t = rep->domain_top() * frac;
    const double by_quadrature =
        oracles::romberg([&](double u) { return rep->derivative(u); }, 0.0, t, 1e-13);
    CHECK(rep->value(t) == doctest::Approx(by_quadrature).epsilon(1e-9));
  }
}

TEST_CASE("domain is enforced") {
  const SmoothedEquivalence se(fixtures::demo_pair());
  const auto rep = se.fiber({0.1, 0.1});
  CHECK_THROWS_AS(rep->value(-0.5), OutOfDomain);
  CHECK_THROWS_AS(rep->value(rep->domain_top() + 0.5), OutOfDomain);
}

TEST_CASE("eval bundles value and derivative") {
  const SmoothedEquivalence se(fixtures::demo_pair());
  const auto rep = se.fiber({0.6, 0.2});
  const auto [v0, d0] = rep->eval(0.0);
  CHECK(v0 == 0.0);
  CHECK(d0 == 1.0);
  const auto [vt, dt] = rep->eval(rep->domain_top());
  CHECK(vt == doctest::Approx(rep->range_top()).epsilon(1e-9));
  CHECK(dt == 1.0);
}

TEST_CASE("smoothed map equals the raw map near the section and in the conjugacy case") {
  const SmoothedEquivalence se(fixtures::demo_pair());
  SplitMix64 rng(31);
  for (int i = 0; i < 50; ++i) {
    const TorusPoint x = fixtures::random_point(rng);
    const double eps = se.epsilon();
    const double s = rng.next_double() * eps;
    const SuspensionPoint q = se.apply({x, s});
    const TorusPoint hx = se.pair().h().apply(x);
    CHECK(q.base.x1 == hx.x1);
    CHECK(q.base.x2 == hx.x2);
    CHECK(q.height == doctest::Approx(s).epsilon(1e-12));
  }

  const SmoothedEquivalence ce(fixtures::conjugacy_pair());
  for (int i = 0; i < 200; ++i) {
    const SuspensionPoint p = fixtures::random_suspension_point(ce.pair().source(), rng);
    const SuspensionPoint a = ce.apply(p);
    const SuspensionPoint b = ce.pair().h_hat(p);
    CHECK(ce.pair().target().section_distance(a, b) < 1e-12);
  }
}

TEST_CASE("smoothed map is consistent across the seam") {
  const SmoothedEquivalence se(fixtures::demo_pair());
  const auto& src = se.pair().source();
  const auto& tgt = se.pair().target();
  SplitMix64 rng(41);
  for (int i = 0; i < 50; ++i) {
    const TorusPoint x = fixtures::random_point(rng);
    const double cf = src.ceiling().eval(x);
    const double back = 1e-8;
    // just below the roof over x vs just above the section at f(x)
    const SuspensionPoint below = se.apply({x, cf - back});
    const SuspensionPoint above = se.apply(src.normalize(x, cf + back));
    CHECK(tgt.section_distance(below, above) < 1e-7);  // 2*back stretched by slope 1
  }
}

TEST_CASE("smoothed time change intertwines the flows") {
  const SmoothedEquivalence se(fixtures::demo_pair());
  const auto& src = se.pair().source();
  const auto& tgt = se.pair().target();
  SplitMix64 rng(43);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const SuspensionPoint p = fixtures::random_suspension_point(src, rng);
    const double t = rng.next_range(-20.0, 20.0);
    const double tp = se.time_change(p, t);
    const SuspensionPoint lhs = se.apply(src.flow(p, t));
    const SuspensionPoint rhs = tgt.flow(se.apply(p), tp);
    worst = std::max(worst, tgt.section_distance(lhs, rhs));
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("smoothed time change endpoint values") {
  const SmoothedEquivalence se(fixtures::constant_pair(1.0, 2.0));
  const SuspensionPoint p{{0.2, 0.3}, 0.0};
  CHECK(se.time_change(p, 0.0) == 0.0);
  CHECK(se.time_change(p, 1.0) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("monotonicity guard: exponential folds where plateau survives") {
  const auto pair = fixtures::adversarial_pair();

  const SmoothedEquivalence sharp(EquivalencePair(pair.source(), pair.target(), pair.h()),
                                  BumpShape::exponential, 0.1);
  CHECK_THROWS_AS(sharp.fiber({0.3, 0.3}), MonotonicityViolation);

  const SmoothedEquivalence flat(EquivalencePair(pair.source(), pair.target(), pair.h()),
                                 BumpShape::plateau, 0.1);
  const auto rep = flat.fiber({0.3, 0.3});
  CHECK(rep->derivative_margin() > 0.0);
  CHECK(rep->derivative_margin() == doctest::Approx(1.0 - (0.55 / 0.7) / 0.95).epsilon(1e-12));
}

TEST_CASE("violation carries the offending fiber") {
  const SmoothedEquivalence sharp(fixtures::adversarial_pair(), BumpShape::exponential, 0.1);
  try {
    sharp.fiber({0.125, 0.875});
    FAIL("expected MonotonicityViolation");
  } catch (const MonotonicityViolation& e) {
    CHECK(e.fiber_x1 == 0.125);
    CHECK(e.fiber_x2 == 0.875);
    CHECK(e.derivative_margin <= 0.0);
  }
}

TEST_CASE("fiber cache returns the same object for equal bases") {
  const SmoothedEquivalence se(fixtures::demo_pair());
  const auto a = se.fiber({0.25, 0.75});
  const auto b = se.fiber({0.25, 0.75});
  CHECK(a.get() == b.get());
}
