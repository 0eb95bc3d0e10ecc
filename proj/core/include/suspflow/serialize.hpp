#pragma once

#include <string>

#include "suspflow/bump.hpp"
#include "suspflow/ceiling.hpp"
#include "suspflow/torus.hpp"

namespace suspflow {

/// Plain-text forms used by config files and fixtures.
///   map:       "a b c d"                     (integers, row major)
///   ceiling:   "constant c0"
///              "trig c0 [amp f1 f2 phase]*"  (one group per cosine term)
///   conjugacy: "identity"
///              "linear a b c d"
///              "affine a b c d s1 s2"
/// Parsers throw std::invalid_argument with a description on malformed
/// input; the config layer wraps that into ConfigError with the key name.

std::string format_map(const HyperbolicToralMap& m);
HyperbolicToralMap parse_map(const std::string& text);

std::string format_ceiling(const CeilingFunction& c);
CeilingFunction parse_ceiling(const std::string& text);

std::string format_conjugacy(const BaseConjugacy& h);
BaseConjugacy parse_conjugacy(const std::string& text);

BumpShape parse_bump_shape(const std::string& text);
std::string format_bump_shape(BumpShape shape);

/// Shortest round-trip decimal form of a double (used by CSV writers so
/// two identical runs emit identical bytes).
std::string format_double(double v);

}  // namespace suspflow
