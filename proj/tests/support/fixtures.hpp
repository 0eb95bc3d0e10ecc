#pragma once

// Standard systems shared across the suites: the Arnold cat map, its shear
// conjugate, and the cosine roofs used everywhere.

#include <string>

#include "suspflow/equivalence.hpp"
#include "suspflow/rng.hpp"

namespace fixtures {

using namespace suspflow;

inline HyperbolicToralMap cat_map() { return HyperbolicToralMap(Mat2i{2, 1, 1, 1}); }

/// B f B^-1 for the shear B = [[1,1],[0,1]].
inline HyperbolicToralMap cat_conjugate() { return HyperbolicToralMap(Mat2i{3, -1, 1, 0}); }

inline Mat2i shear() { return Mat2i{1, 1, 0, 1}; }

inline HyperbolicToralMap cat_squared() { return HyperbolicToralMap(Mat2i{5, 3, 3, 2}); }

/// 1 + 0.1 cos(2 pi x1); certified lower bound 0.9.
inline CeilingFunction cosine_roof() {
  return CeilingFunction::trig(1.0, {TrigTerm{0.1, 1, 0, 0.0}});
}

/// Pullback of cosine_roof through the shear: 1 + 0.1 cos(2 pi (x1 + x2)).
inline CeilingFunction cosine_roof_pullback() {
  return CeilingFunction::trig(1.0, {TrigTerm{0.1, 1, 1, 0.0}});
}

/// Cat map with a cosine roof against the shear conjugate with its own
/// cosine roof: a genuine equivalence with a nontrivial time change.
inline EquivalencePair demo_pair() {
  return EquivalencePair(SuspensionSystem(cat_map(), cosine_roof()),
                         SuspensionSystem(cat_conjugate(), cosine_roof()),
                         BaseConjugacy::linear(shear()));
}

/// Same maps, but the source roof is the pullback of the target roof, so
/// the pair is a conjugacy: tau(t) = t and Phi is the identity.
inline EquivalencePair conjugacy_pair() {
  return EquivalencePair(SuspensionSystem(cat_map(), cosine_roof_pullback()),
                         SuspensionSystem(cat_conjugate(), cosine_roof()),
                         BaseConjugacy::linear(shear()));
}

/// Constant roofs cf0 over cat and cg0 over cat, h = identity.
inline EquivalencePair constant_pair(double cf0, double cg0) {
  return EquivalencePair(SuspensionSystem(cat_map(), CeilingFunction::constant(cf0)),
                         SuspensionSystem(cat_map(), CeilingFunction::constant(cg0)),
                         BaseConjugacy::identity());
}

/// Target fibers much shorter than source fibers; the exponential bump
/// shape folds here while the plateau shape stays monotone.
inline EquivalencePair adversarial_pair() { return constant_pair(1.0, 0.45); }

inline TorusPoint random_point(SplitMix64& rng) {
  const double a = rng.next_dyadic48();
  const double b = rng.next_dyadic48();
  return TorusPoint{a, b};
}

inline SuspensionPoint random_suspension_point(const SuspensionSystem& sys, SplitMix64& rng) {
  const TorusPoint x = random_point(rng);
  return SuspensionPoint{x, rng.next_double() * sys.ceiling().eval(x)};
}

inline std::string demo_config_text() {
  return "[source]\n"
         "map = 2 1 1 1\n"
         "ceiling = trig 1.0 0.1 1 0 0\n"
         "[target]\n"
         "map = 3 -1 1 0\n"
         "ceiling = trig 1.0 0.1 1 0 0\n"
         "[conjugacy]\n"
         "kind = linear 1 1 0 1\n"
         "[run]\n"
         "seed = 42\n"
         "samples = 500\n"
         "tolerance = 1e-9\n";
}

}  // namespace fixtures
