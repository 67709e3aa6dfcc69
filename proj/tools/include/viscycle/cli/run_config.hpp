#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "viscycle/bloch.hpp"

namespace viscycle::cli {

enum class Command { bounds, optimize, certify, simulate, gram, table };
enum class Format { text, csv };

/// Raised for malformed or out-of-range user input; maps to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  Command command = Command::bounds;
  std::size_t n = 3;  // cycle length; largest row for `table`
  double eta = 1.0;
  std::uint64_t shots = 100000;
  std::size_t restarts = 50;
  std::uint64_t seed = 0;
  std::size_t threads = 1;
  std::size_t bootstrap = 0;
  std::optional<std::string> preset;
  std::optional<std::vector<PureQubit>> states;
  std::optional<std::vector<double>> weights;  // path probabilities |c_i|^2
  std::optional<double> r12;
  std::optional<double> r23;
  std::optional<double> r13;
  double phase = 0.0;  // radians
  Format format = Format::text;
  std::string output_path = "-";  // "-" is stdout
  std::optional<std::string> scan_output;
};

std::string_view command_name(Command c);

/// "<number>deg" or "<number>rad"; the unit suffix is mandatory.
double parse_angle(std::string_view text);

/// Semicolon-separated detector states, each one of
///   bloch:x,y,z            unit Bloch vector
///   polar:<theta>,<phi>    polar and azimuthal Bloch angles
///   pol:<angle>            linear polarization angle in the lab
/// with angles carrying a deg or rad suffix.
std::vector<PureQubit> parse_states(std::string_view text);

/// Comma-separated path probabilities.
std::vector<double> parse_weights(std::string_view text);

/// Compiled-in detector configurations: theorem1, classical-vertex-111,
/// four-path-polarization.
std::vector<PureQubit> preset_states(std::string_view name);
std::vector<std::string> preset_names();

/// Detector list for commands that need one: explicit states win over a preset.
std::vector<PureQubit> resolve_states(const RunConfig& config);

/// Per-command range checks; throws UsageError.
void validate(const RunConfig& config);

}  // namespace viscycle::cli
