#include "suspflow/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <memory>
#include <optional>
#include <ostream>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "suspflow/diff_probe.hpp"
#include "suspflow/rng.hpp"

namespace suspflow::cli {

namespace {

using nlohmann::json;

TorusPoint random_base(SplitMix64& rng) {
  const double a = rng.next_dyadic48();
  const double b = rng.next_dyadic48();
  return TorusPoint{a, b};
}

json matrix_json(const Mat3& m) {
  json rows = json::array();
  for (int i = 0; i < 3; ++i) {
    rows.push_back(json::array({m(i, 0), m(i, 1), m(i, 2)}));
  }
  return rows;
}

}  // namespace

int cmd_flow_eval(const RunConfig& cfg, std::ostream& csv) {
  const SuspensionSystem sys = cfg.source();
  const SuspensionPoint start = sys.normalize(cfg.flow_point, cfg.flow_height);

  csv << "t,x1,x2,height,n\n";
  const int rows = cfg.samples;
  for (int i = 0; i < rows; ++i) {
    const double t = rows == 1 ? 0.0 : cfg.flow_t_max * i / (rows - 1);
    const FlowResult r = sys.flow_detail(start, t);
    csv << format_double(t) << ',' << format_double(r.point.base.x1) << ','
        << format_double(r.point.base.x2) << ',' << format_double(r.point.height) << ','
        << r.steps << '\n';
  }
  return exit_ok;
}

int cmd_equiv_check(const RunConfig& cfg, std::ostream& jsonl) {
  const EquivalencePair pair = cfg.pair();
  SplitMix64 rng(cfg.seed);

  double max_residual = 0.0;
  long long n_mismatches = 0;
  for (int i = 0; i < cfg.samples; ++i) {
    const TorusPoint x = random_base(rng);
    const double s = rng.next_double() * pair.source().ceiling().eval(x);
    const double t = rng.next_range(-cfg.t_span, cfg.t_span);
    const SuspensionPoint p{x, s};

    TimeChangeRecord rec = pair.tau(p, t);
    if (cfg.corrupt_tau) rec.tau += 0.01;

    const SuspensionPoint lhs = pair.h_hat(pair.source().flow(p, t));
    const SuspensionPoint rhs = pair.target().flow(pair.h_hat(p), rec.tau);
    const double residual = pair.target().section_distance(lhs, rhs);

    const SuspensionPoint q = pair.h_hat(p);
    const long long n_target = pair.target().step_count(q.base, q.height, rec.tau);

    max_residual = std::max(max_residual, residual);
    if (n_target != rec.n) ++n_mismatches;

    json line{{"x1", x.x1},         {"x2", x.x2},   {"s", s},
              {"t", t},             {"n_src", rec.n}, {"n_tgt", n_target},
              {"tau", rec.tau},     {"slope", rec.slope}, {"residual", residual}};
    jsonl << line.dump() << '\n';
  }

  const bool pass = max_residual < cfg.tolerance && n_mismatches == 0;
  json summary{{"type", "summary"},          {"samples", cfg.samples},
               {"seed", cfg.seed},           {"max_residual", max_residual},
               {"n_mismatches", n_mismatches}, {"tolerance", cfg.tolerance},
               {"pass", pass}};
  jsonl << summary.dump() << '\n';
  return pass ? exit_ok : exit_verification;
}

int cmd_smooth_build(const RunConfig& cfg, std::ostream& csv, std::ostream& summary) {
  const SmoothedEquivalence se(cfg.pair(), cfg.shape, cfg.delta);
  SplitMix64 rng(cfg.seed);

  csv << "fiber,x1,x2,t,phi,dphi\n";
  double min_derivative = std::numeric_limits<double>::infinity();
  double max_endpoint_residual = 0.0;
  double max_identity_residual = 0.0;
  double max_shift_residual = 0.0;

  for (int i = 0; i < cfg.fibers; ++i) {
    const TorusPoint x = random_base(rng);
    std::shared_ptr<const FiberReparam> rep;
    try {
      rep = se.fiber(x);
    } catch (const MonotonicityViolation& e) {
      json fail{{"type", "monotonicity_violation"},
                {"fiber", i},
                {"x1", e.fiber_x1},
                {"x2", e.fiber_x2},
                {"derivative_margin", e.derivative_margin},
                {"what", e.what()}};
      summary << fail.dump() << '\n';
      return exit_monotonicity;
    }

    const double top = rep->domain_top();
    const double eps = rep->epsilon();
    const double shift = rep->range_top() - top;
    for (int j = 0; j < cfg.table_points; ++j) {
      const double t = top * j / (cfg.table_points - 1);
      const auto [phi, dphi] = rep->eval(t);
      csv << i << ',' << format_double(x.x1) << ',' << format_double(x.x2) << ','
          << format_double(t) << ',' << format_double(phi) << ',' << format_double(dphi) << '\n';
      min_derivative = std::min(min_derivative, dphi);
      if (t <= eps) max_identity_residual = std::max(max_identity_residual, std::fabs(phi - t));
      if (t >= top - eps) {
        max_shift_residual = std::max(max_shift_residual, std::fabs(phi - (t + shift)));
      }
    }
    min_derivative = std::min(min_derivative, rep->derivative_margin());
    max_endpoint_residual =
        std::max(max_endpoint_residual, std::fabs(rep->value(top) - rep->range_top()));
  }

  json out{{"type", "summary"},
           {"fibers", cfg.fibers},
           {"shape", format_bump_shape(cfg.shape)},
           {"delta", cfg.delta},
           {"min_phi_derivative", min_derivative},
           {"max_endpoint_residual", max_endpoint_residual},
           {"max_identity_residual", max_identity_residual},
           {"max_shift_residual", max_shift_residual}};
  summary << out.dump() << '\n';
  return exit_ok;
}

int cmd_derivative_report(const RunConfig& cfg, std::ostream& jsonl) {
  const EquivalencePair pair = cfg.pair();
  const SmoothedEquivalence se(cfg.pair(), cfg.shape, cfg.delta);
  SplitMix64 rng(cfg.seed);

  double max_jacobian_error = 0.0;
  for (int i = 0; i < cfg.probe_points; ++i) {
    const TorusPoint x = random_base(rng);
    // keep the whole stencil (and its image) clear of both seams
    const double s = (0.1 + 0.8 * rng.next_double()) * pair.source().ceiling().eval(x);
    const JacobianReport rep = jacobian_report(pair, SuspensionPoint{x, s}, cfg.fd_step);
    max_jacobian_error = std::max(max_jacobian_error, rep.max_abs_error);

    json line{{"type", "jacobian"},
              {"x1", x.x1},
              {"x2", x.x2},
              {"s", s},
              {"fd_step", rep.fd_step},
              {"richardson_order", rep.richardson_order},
              {"max_abs_error", rep.max_abs_error},
              {"fd", matrix_json(rep.fd)},
              {"analytic", matrix_json(*rep.analytic)},
              {"fd_determinant", rep.fd.det()}};
    jsonl << line.dump() << '\n';
  }

  double max_smoothed = 0.0;
  double max_piecewise = 0.0;
  std::vector<double> smoothed_values;
  for (int i = 0; i < cfg.section_points; ++i) {
    const TorusPoint x = random_base(rng);
    const double smoothed = cross_section_check(se, x, cfg.cross_step);
    const double piecewise = cross_section_check_piecewise(pair, x, cfg.cross_step);
    max_smoothed = std::max(max_smoothed, smoothed);
    max_piecewise = std::max(max_piecewise, piecewise);
    smoothed_values.push_back(smoothed);

    json line{{"type", "cross_section"},
              {"x1", x.x1},
              {"x2", x.x2},
              {"step", cfg.cross_step},
              {"smoothed_mismatch", smoothed},
              {"piecewise_mismatch", piecewise}};
    jsonl << line.dump() << '\n';
  }

  std::sort(smoothed_values.begin(), smoothed_values.end());
  const double median_smoothed =
      smoothed_values.empty() ? 0.0 : smoothed_values[smoothed_values.size() / 2];

  const bool pass = max_jacobian_error < cfg.jacobian_tolerance && max_smoothed < cfg.cross_tolerance;
  json summary{{"type", "summary"},
               {"probe_points", cfg.probe_points},
               {"section_points", cfg.section_points},
               {"max_jacobian_error", max_jacobian_error},
               {"jacobian_tolerance", cfg.jacobian_tolerance},
               {"max_smoothed_mismatch", max_smoothed},
               {"median_smoothed_mismatch", median_smoothed},
               {"cross_tolerance", cfg.cross_tolerance},
               {"max_piecewise_mismatch", max_piecewise},
               {"pass", pass}};
  jsonl << summary.dump() << '\n';
  return pass ? exit_ok : exit_verification;
}

namespace {

struct CommonFlags {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> samples;
  std::optional<double> tolerance;
  std::string out_path;
};

void add_common(CLI::App* sub, CommonFlags& flags) {
  sub->add_option("--config", flags.config_path, "path to the run configuration")
      ->required()
      ->check(CLI::ExistingFile);
  sub->add_option("--seed", flags.seed, "override run.seed");
  sub->add_option("--samples", flags.samples, "override run.samples");
  sub->add_option("--tolerance", flags.tolerance, "override run.tolerance");
  sub->add_option("--out", flags.out_path, "write output here instead of stdout");
}

RunConfig load(const CommonFlags& flags) {
  RunConfig cfg = parse_config_file(flags.config_path);
  if (flags.seed) cfg.seed = *flags.seed;
  if (flags.samples) cfg.samples = *flags.samples;
  if (flags.tolerance) cfg.tolerance = *flags.tolerance;
  return cfg;
}

// stream to --out when given, stdout otherwise
class OutputTarget {
 public:
  explicit OutputTarget(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw ConfigError("--out", "cannot open '" + path + "' for writing");
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

}  // namespace

int run(const std::vector<std::string>& args) {
  CLI::App app{"suspension flows over hyperbolic toral automorphisms: explicit orbit "
               "equivalence, time change, and smoothed fiber reparametrization"};
  app.require_subcommand(1);

  CommonFlags flow_flags, equiv_flags, smooth_flags, deriv_flags;
  std::string shape_name;
  std::optional<double> delta;

  CLI::App* flow = app.add_subcommand("flow-eval", "trajectory table of the suspension flow");
  add_common(flow, flow_flags);

  CLI::App* equiv = app.add_subcommand("equiv-check", "verify the orbit equivalence identity");
  add_common(equiv, equiv_flags);

  CLI::App* smooth = app.add_subcommand("smooth-build", "build fiber reparametrization tables");
  add_common(smooth, smooth_flags);
  smooth->add_option("--shape", shape_name, "bump shape: exponential|plateau");
  smooth->add_option("--delta", delta, "plateau shoulder fraction in (0, 1)");

  CLI::App* deriv = app.add_subcommand("derivative-report", "Jacobian and seam-smoothness report");
  add_common(deriv, deriv_flags);
  deriv->add_option("--shape", shape_name, "bump shape: exponential|plateau");
  deriv->add_option("--delta", delta, "plateau shoulder fraction in (0, 1)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_config;
  }

  try {
    auto apply_smoothing_flags = [&](RunConfig& cfg) {
      if (!shape_name.empty()) cfg.shape = parse_bump_shape(shape_name);
      if (delta) {
        if (!(*delta > 0.0 && *delta < 1.0)) throw ConfigError("--delta", "must lie in (0, 1)");
        cfg.delta = *delta;
      }
    };

    if (flow->parsed()) {
      RunConfig cfg = load(flow_flags);
      OutputTarget out(flow_flags.out_path);
      return cmd_flow_eval(cfg, out.stream());
    }
    if (equiv->parsed()) {
      RunConfig cfg = load(equiv_flags);
      OutputTarget out(equiv_flags.out_path);
      return cmd_equiv_check(cfg, out.stream());
    }
    if (smooth->parsed()) {
      RunConfig cfg = load(smooth_flags);
      apply_smoothing_flags(cfg);
      OutputTarget out(smooth_flags.out_path);
      return cmd_smooth_build(cfg, out.stream(), std::cout);
    }
    RunConfig cfg = load(deriv_flags);
    apply_smoothing_flags(cfg);
    OutputTarget out(deriv_flags.out_path);
    return cmd_derivative_report(cfg, out.stream());
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return exit_config;
  } catch (const MonotonicityViolation& e) {
    std::cerr << "monotonicity violation at fiber (" << e.fiber_x1 << ", " << e.fiber_x2
              << "): " << e.what() << '\n';
    return exit_monotonicity;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return exit_config;
  } catch (const std::exception& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return exit_numeric;
  }
}

}  // namespace suspflow::cli
