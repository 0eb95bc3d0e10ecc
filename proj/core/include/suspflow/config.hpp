#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "suspflow/equivalence.hpp"
#include "suspflow/serialize.hpp"

namespace suspflow {

/// Fully validated run description: the two suspensions, the conjugacy, the
/// smoothing parameters and all sampling knobs. Built only by the parsers
/// below, which reject any unknown or malformed key before anything runs.
struct RunConfig {
  HyperbolicToralMap source_map;
  CeilingFunction source_ceiling;
  HyperbolicToralMap target_map;
  CeilingFunction target_ceiling;
  BaseConjugacy conjugacy;

  // [run]
  std::uint64_t seed = 1;
  int samples = 1000;
  double tolerance = 1e-9;
  double t_span = 20.0;
  bool corrupt_tau = false;  // test hook: offsets tau to force a verification failure

  // [smoothing]
  BumpShape shape = BumpShape::plateau;
  double delta = 0.1;
  int fibers = 8;
  int table_points = 129;

  // [flow]
  TorusPoint flow_point{0.1, 0.2};
  double flow_height = 0.0;
  double flow_t_max = 5.0;

  // [probe]
  double fd_step = 1e-5;
  double cross_step = 1e-4;
  int probe_points = 100;
  int section_points = 50;
  double jacobian_tolerance = 1e-6;
  double cross_tolerance = 1e-4;

  SuspensionSystem source() const { return SuspensionSystem(source_map, source_ceiling); }
  SuspensionSystem target() const { return SuspensionSystem(target_map, target_ceiling); }
  EquivalencePair pair() const { return EquivalencePair(source(), target(), conjugacy); }
};

/// Parse the flat "[section]\nkey = value" format. Throws ConfigError
/// naming the offending key on unknown sections/keys, bad values, missing
/// required entries, or failed cross-field validation.
RunConfig parse_config_text(const std::string& text);
RunConfig parse_config_file(const std::string& path);

}  // namespace suspflow
