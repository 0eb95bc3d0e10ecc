#include "suspflow/config.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace suspflow {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return {};
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

struct RawConfig {
  // "section.key" -> value, plus order-independent duplicate detection
  std::map<std::string, std::string> entries;

  bool has(const std::string& key) const { return entries.count(key) != 0; }

  std::string take(const std::string& key) {
    auto it = entries.find(key);
    if (it == entries.end()) throw ConfigError(key, "missing required entry");
    std::string v = it->second;
    entries.erase(it);
    return v;
  }

  std::optional<std::string> take_optional(const std::string& key) {
    auto it = entries.find(key);
    if (it == entries.end()) return std::nullopt;
    std::string v = it->second;
    entries.erase(it);
    return v;
  }
};

RawConfig tokenize(const std::string& text) {
  RawConfig raw;
  std::istringstream in(text);
  std::string line;
  std::string section;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError("line " + std::to_string(line_no), "unterminated section header");
      }
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty()) {
        throw ConfigError("line " + std::to_string(line_no), "empty section name");
      }
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line_no), "expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("line " + std::to_string(line_no), "empty key");
    if (section.empty()) throw ConfigError(key, "entry appears before any [section]");
    const std::string full = section + "." + key;
    if (!raw.entries.emplace(full, value).second) throw ConfigError(full, "duplicate entry");
  }
  return raw;
}

template <typename F>
auto parse_with(const std::string& key, const std::string& value, F&& parser) {
  try {
    return parser(value);
  } catch (const std::exception& e) {
    throw ConfigError(key, e.what());
  }
}

double parse_real(const std::string& key, const std::string& value) {
  return parse_with(key, value, [](const std::string& v) {
    std::size_t pos = 0;
    const double r = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing characters after number");
    return r;
  });
}

int parse_int(const std::string& key, const std::string& value) {
  return parse_with(key, value, [](const std::string& v) {
    std::size_t pos = 0;
    const long long r = std::stoll(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing characters after integer");
    if (r < -(1LL << 31) || r > (1LL << 31)) throw std::invalid_argument("integer out of range");
    return static_cast<int>(r);
  });
}

std::uint64_t parse_seed(const std::string& key, const std::string& value) {
  return parse_with(key, value, [](const std::string& v) {
    std::size_t pos = 0;
    const unsigned long long r = std::stoull(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing characters after integer");
    return static_cast<std::uint64_t>(r);
  });
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw ConfigError(key, "expected true|false");
}

}  // namespace

RunConfig parse_config_text(const std::string& text) {
  RawConfig raw = tokenize(text);

  auto map_entry = [&](const std::string& key) {
    return parse_with(key, raw.take(key), parse_map);
  };
  auto ceiling_entry = [&](const std::string& key) {
    return parse_with(key, raw.take(key), parse_ceiling);
  };

  HyperbolicToralMap source_map = map_entry("source.map");
  CeilingFunction source_ceiling = ceiling_entry("source.ceiling");
  HyperbolicToralMap target_map = map_entry("target.map");
  CeilingFunction target_ceiling = ceiling_entry("target.ceiling");
  BaseConjugacy conjugacy =
      parse_with("conjugacy.kind", raw.take("conjugacy.kind"), parse_conjugacy);

  RunConfig cfg{std::move(source_map), std::move(source_ceiling), std::move(target_map),
                std::move(target_ceiling), std::move(conjugacy)};

  if (auto v = raw.take_optional("run.seed")) cfg.seed = parse_seed("run.seed", *v);
  if (auto v = raw.take_optional("run.samples")) {
    cfg.samples = parse_int("run.samples", *v);
    if (cfg.samples <= 0) throw ConfigError("run.samples", "must be positive");
  }
  if (auto v = raw.take_optional("run.tolerance")) {
    cfg.tolerance = parse_real("run.tolerance", *v);
    if (!(cfg.tolerance > 0.0)) throw ConfigError("run.tolerance", "must be positive");
  }
  if (auto v = raw.take_optional("run.t_span")) {
    cfg.t_span = parse_real("run.t_span", *v);
    if (!(cfg.t_span > 0.0)) throw ConfigError("run.t_span", "must be positive");
  }
  if (auto v = raw.take_optional("run.corrupt_tau")) {
    cfg.corrupt_tau = parse_bool("run.corrupt_tau", *v);
  }

  if (auto v = raw.take_optional("smoothing.shape")) {
    cfg.shape = parse_with("smoothing.shape", *v, parse_bump_shape);
  }
  if (auto v = raw.take_optional("smoothing.delta")) {
    cfg.delta = parse_real("smoothing.delta", *v);
    if (!(cfg.delta > 0.0 && cfg.delta < 1.0)) {
      throw ConfigError("smoothing.delta", "must lie in (0, 1)");
    }
  }
  if (auto v = raw.take_optional("smoothing.fibers")) {
    cfg.fibers = parse_int("smoothing.fibers", *v);
    if (cfg.fibers <= 0) throw ConfigError("smoothing.fibers", "must be positive");
  }
  if (auto v = raw.take_optional("smoothing.table_points")) {
    cfg.table_points = parse_int("smoothing.table_points", *v);
    if (cfg.table_points < 2) throw ConfigError("smoothing.table_points", "need at least 2");
  }

  if (auto v = raw.take_optional("flow.x1")) cfg.flow_point.x1 = parse_real("flow.x1", *v);
  if (auto v = raw.take_optional("flow.x2")) cfg.flow_point.x2 = parse_real("flow.x2", *v);
  if (auto v = raw.take_optional("flow.height")) cfg.flow_height = parse_real("flow.height", *v);
  if (auto v = raw.take_optional("flow.t_max")) {
    cfg.flow_t_max = parse_real("flow.t_max", *v);
    if (!(cfg.flow_t_max > 0.0)) throw ConfigError("flow.t_max", "must be positive");
  }

  if (auto v = raw.take_optional("probe.fd_step")) {
    cfg.fd_step = parse_real("probe.fd_step", *v);
    if (!(cfg.fd_step > 0.0)) throw ConfigError("probe.fd_step", "must be positive");
  }
  if (auto v = raw.take_optional("probe.cross_step")) {
    cfg.cross_step = parse_real("probe.cross_step", *v);
    if (!(cfg.cross_step > 0.0)) throw ConfigError("probe.cross_step", "must be positive");
  }
  if (auto v = raw.take_optional("probe.points")) {
    cfg.probe_points = parse_int("probe.points", *v);
    if (cfg.probe_points <= 0) throw ConfigError("probe.points", "must be positive");
  }
  if (auto v = raw.take_optional("probe.section_points")) {
    cfg.section_points = parse_int("probe.section_points", *v);
    if (cfg.section_points <= 0) throw ConfigError("probe.section_points", "must be positive");
  }
  if (auto v = raw.take_optional("probe.jacobian_tolerance")) {
    cfg.jacobian_tolerance = parse_real("probe.jacobian_tolerance", *v);
  }
  if (auto v = raw.take_optional("probe.cross_tolerance")) {
    cfg.cross_tolerance = parse_real("probe.cross_tolerance", *v);
  }

  if (!raw.entries.empty()) {
    throw ConfigError(raw.entries.begin()->first, "unknown entry");
  }

  // cross-field checks: the flow point must sit inside its fiber, and the
  // pair must actually satisfy the conjugacy identity
  cfg.flow_point = TorusPoint::wrapped(cfg.flow_point.x1, cfg.flow_point.x2);
  if (cfg.flow_height < 0.0 || cfg.flow_height >= cfg.source_ceiling.eval(cfg.flow_point)) {
    throw ConfigError("flow.height", "must lie in [0, c(flow point))");
  }
  try {
    (void)cfg.pair();
  } catch (const std::exception& e) {
    throw ConfigError("conjugacy.kind", e.what());
  }
  return cfg;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path, "cannot open config file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

}  // namespace suspflow
