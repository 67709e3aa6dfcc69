#include <algorithm>
#include <fstream>

#include <CLI11.hpp>

#include "viscycle/cli/commands.hpp"
#include "viscycle/errors.hpp"

namespace viscycle::cli {

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Visibility-based cycle inequalities for pure qubit detector states", "viscycle"};
  app.set_config("--config", "", "Flat key = value file; command-line flags take precedence");
  // Values such as state lists contain commas; keep each line a single value.
  app.get_config_formatter_base()->arrayDelimiter('\n');
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.require_subcommand(1);

  RunConfig config;
  std::string preset;
  std::string states;
  std::string weights;
  std::string phase;
  std::string format = "text";
  std::string scan_output;
  double r12 = 0.0, r23 = 0.0, r13 = 0.0;

  app.add_option("--n", config.n, "Cycle length (largest row for table)");
  app.add_option("--eta", config.eta, "Uniform visibility reduction, 0 < eta <= 1");
  app.add_option("--shots", config.shots, "Shots per phase point");
  app.add_option("--restarts", config.restarts, "Optimizer restarts");
  app.add_option("--seed", config.seed, "Random seed");
  app.add_option("--threads", config.threads, "Optimizer worker threads");
  app.add_option("--bootstrap", config.bootstrap, "Parametric bootstrap resamples (0 = off)");
  app.add_option("--preset", preset, "theorem1 | classical-vertex-111 | four-path-polarization");
  app.add_option("--states", states, "Detector states, e.g. 'bloch:0,0,1;polar:60deg,0deg;pol:22.5deg'");
  app.add_option("--weights", weights, "Path probabilities |c_i|^2, comma separated");
  auto* o12 = app.add_option("--r12", r12, "Overlap r12");
  auto* o23 = app.add_option("--r23", r23, "Overlap r23");
  auto* o13 = app.add_option("--r13", r13, "Overlap r13");
  app.add_option("--phase", phase, "Gram phase with deg or rad suffix");
  app.add_option("--format", format, "table output: text | csv")
      ->check(CLI::IsMember({"text", "csv"}));
  app.add_option("--output", config.output_path, "Report path ('-' for stdout)");
  app.add_option("--scan-output", scan_output, "simulate: raw fringe scans as CSV");

  struct Sub {
    const char* name;
    const char* help;
    Command command;
  };
  const Sub subs[] = {
      {"bounds", "Classical bound, qubit maximum and eta threshold for --n", Command::bounds},
      {"optimize", "Numerically maximize the n-cycle value", Command::optimize},
      {"certify", "Evaluate the cycle inequality for given detector states", Command::certify},
      {"simulate", "Simulated fringe-visibility experiment", Command::simulate},
      {"gram", "Gram feasibility for overlaps --r12 --r23 [--r13 --phase]", Command::gram},
      {"table", "Bounds for n = 3..--n", Command::table},
  };
  for (const auto& s : subs) {
    auto* sub = app.add_subcommand(s.name, s.help)->fallthrough();
    const Command c = s.command;
    sub->callback([&config, c] { config.command = c; });
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (!preset.empty()) config.preset = preset;
    if (!states.empty()) config.states = parse_states(states);
    if (!weights.empty()) config.weights = parse_weights(weights);
    if (!phase.empty()) config.phase = parse_angle(phase);
    if (!scan_output.empty()) config.scan_output = scan_output;
    if (o12->count() > 0) config.r12 = r12;
    if (o23->count() > 0) config.r23 = r23;
    if (o13->count() > 0) config.r13 = r13;
    config.format = format == "csv" ? Format::csv : Format::text;

    if (config.output_path == "-") return dispatch(config, out);
    std::ofstream file(config.output_path, std::ios::binary);
    if (!file) throw UsageError("cannot write output '" + config.output_path + "'");
    return dispatch(config, file);
  } catch (const UsageError& e) {
    err << "viscycle: " << e.what() << '\n';
  } catch (const viscycle::Error& e) {
    err << "viscycle: " << e.what() << '\n';
  }
  return kExitUsage;
}

}  // namespace viscycle::cli
