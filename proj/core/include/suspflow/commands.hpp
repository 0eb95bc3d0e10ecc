#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "suspflow/config.hpp"

namespace suspflow::cli {

/// Process exit codes shared by every subcommand.
enum ExitCode : int {
  exit_ok = 0,
  exit_config = 2,        // unparseable or invalid configuration
  exit_numeric = 3,       // quadrature/stencil/step failures
  exit_verification = 4,  // a residual exceeded its tolerance
  exit_monotonicity = 5,  // a fiber reparametrization would fold
};

/// Trajectory table of the source suspension flow: CSV rows
/// t,x1,x2,height,n at config.samples evenly spaced times in
/// [0, flow.t_max], starting from the configured point.
int cmd_flow_eval(const RunConfig& cfg, std::ostream& csv);

/// Seeded verification of the orbit equivalence: one JSON line per sample
/// with the time-change record and residual, then a summary line.
/// Returns exit_verification when the max residual exceeds the tolerance
/// or a step count disagrees.
int cmd_equiv_check(const RunConfig& cfg, std::ostream& jsonl);

/// Per-fiber tables t,phi,dphi of the smoothed reparametrization plus a
/// gluing summary (JSON) on the summary stream. Returns exit_monotonicity
/// if some fiber's bump folds, identifying the fiber.
int cmd_smooth_build(const RunConfig& cfg, std::ostream& csv, std::ostream& summary);

/// Interior Jacobian cross-validation and cross-section checks of both the
/// fiber-scaling and the smoothed equivalence, as JSON lines plus summary.
int cmd_derivative_report(const RunConfig& cfg, std::ostream& jsonl);

/// Full command-line entry point (subcommands flow-eval, equiv-check,
/// smooth-build, derivative-report). Returns the process exit code.
int run(const std::vector<std::string>& args);

}  // namespace suspflow::cli
