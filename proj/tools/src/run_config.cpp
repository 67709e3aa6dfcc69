#include "viscycle/cli/run_config.hpp"

#include <charconv>
#include <cmath>
#include <numbers>

#include "viscycle/errors.hpp"

namespace viscycle::cli {
namespace {

constexpr double kPi = std::numbers::pi;

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

double parse_number(std::string_view text, std::string_view what) {
  text = trim(text);
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty() || !std::isfinite(value)) {
    throw UsageError("invalid number for " + std::string(what) + ": '" + std::string(text) + "'");
  }
  return value;
}

std::vector<double> parse_list(std::string_view text, std::size_t count, std::string_view what) {
  const auto parts = split(text, ',');
  if (parts.size() != count) {
    throw UsageError(std::string(what) + " expects " + std::to_string(count) + " values, got '" +
                     std::string(text) + "'");
  }
  std::vector<double> out;
  for (auto p : parts) out.push_back(parse_number(p, what));
  return out;
}

bool needs_states(Command c) { return c == Command::certify || c == Command::simulate; }

}  // namespace

std::string_view command_name(Command c) {
  switch (c) {
    case Command::bounds: return "bounds";
    case Command::optimize: return "optimize";
    case Command::certify: return "certify";
    case Command::simulate: return "simulate";
    case Command::gram: return "gram";
    case Command::table: return "table";
  }
  return "unknown";
}

double parse_angle(std::string_view text) {
  text = trim(text);
  if (text.ends_with("deg")) {
    return parse_number(text.substr(0, text.size() - 3), "angle") * kPi / 180.0;
  }
  if (text.ends_with("rad")) {
    return parse_number(text.substr(0, text.size() - 3), "angle");
  }
  throw UsageError("angle '" + std::string(text) + "' needs a unit suffix (deg or rad)");
}

std::vector<PureQubit> parse_states(std::string_view text) {
  std::vector<PureQubit> states;
  for (auto entry : split(text, ';')) {
    if (entry.empty()) continue;
    const auto colon = entry.find(':');
    if (colon == std::string_view::npos) {
      throw UsageError("state '" + std::string(entry) + "' lacks a bloch:, polar: or pol: prefix");
    }
    const auto kind = trim(entry.substr(0, colon));
    const auto body = entry.substr(colon + 1);
    try {
      if (kind == "bloch") {
        const auto v = parse_list(body, 3, "bloch");
        states.emplace_back(Eigen::Vector3d(v[0], v[1], v[2]));
      } else if (kind == "polar") {
        const auto parts = split(body, ',');
        if (parts.size() != 2) throw UsageError("polar expects theta,phi");
        states.push_back(PureQubit::from_polar(parse_angle(parts[0]), parse_angle(parts[1])));
      } else if (kind == "pol") {
        states.push_back(PureQubit::linear_polarization(parse_angle(body)));
      } else {
        throw UsageError("unknown state kind '" + std::string(kind) + "'");
      }
    } catch (const viscycle::Error& e) {
      throw UsageError("state '" + std::string(entry) + "': " + e.what());
    }
  }
  if (states.empty()) throw UsageError("no detector states given");
  return states;
}

std::vector<double> parse_weights(std::string_view text) {
  std::vector<double> out;
  for (auto p : split(text, ',')) out.push_back(parse_number(p, "weights"));
  return out;
}

std::vector<std::string> preset_names() {
  return {"theorem1", "classical-vertex-111", "four-path-polarization"};
}

std::vector<PureQubit> preset_states(std::string_view name) {
  if (name == "theorem1") {
    const double c = std::sqrt(3.0) / 2.0;
    return {PureQubit::from_amplitudes(c, 0.5), PureQubit::plus_z(),
            PureQubit::from_amplitudes(c, -0.5)};
  }
  if (name == "classical-vertex-111") {
    return {PureQubit::plus_z(), PureQubit::plus_z(), PureQubit::plus_z()};
  }
  if (name == "four-path-polarization") {
    std::vector<PureQubit> out;
    for (double deg : {0.0, 22.5, 45.0, 67.5}) {
      out.push_back(PureQubit::linear_polarization(deg * kPi / 180.0));
    }
    return out;
  }
  throw UsageError("unknown preset '" + std::string(name) + "'");
}

std::vector<PureQubit> resolve_states(const RunConfig& config) {
  if (config.states) return *config.states;
  if (config.preset) return preset_states(*config.preset);
  throw UsageError(std::string(command_name(config.command)) + " needs --states or --preset");
}

void validate(const RunConfig& config) {
  if (!(config.eta > 0.0 && config.eta <= 1.0)) {
    throw UsageError("eta must satisfy 0 < eta <= 1");
  }
  if (config.shots < 1) throw UsageError("shots must be at least 1");
  if (config.restarts < 1) throw UsageError("restarts must be at least 1");
  if (config.threads < 1) throw UsageError("threads must be at least 1");

  switch (config.command) {
    case Command::bounds:
    case Command::optimize:
    case Command::table:
      if (config.n < 3) throw UsageError("n must be at least 3");
      break;
    case Command::gram: {
      if (!config.r12 || !config.r23) throw UsageError("gram needs --r12 and --r23");
      for (auto r : {config.r12, config.r23, config.r13}) {
        if (r && !(*r >= 0.0 && *r <= 1.0)) throw UsageError("overlaps must lie in [0, 1]");
      }
      break;
    }
    case Command::certify:
    case Command::simulate:
      break;
  }

  if (needs_states(config.command)) {
    const auto states = resolve_states(config);
    if (states.size() < 3) throw UsageError("a cycle needs at least 3 detector states");
    if (config.weights) {
      if (config.command != Command::simulate) {
        throw UsageError("--weights applies to simulate only");
      }
      if (config.weights->size() != states.size()) {
        throw UsageError("--weights needs one probability per detector state");
      }
    }
  }
}

}  // namespace viscycle::cli
