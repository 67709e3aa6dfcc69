#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "viscycle/cli/run_config.hpp"

namespace viscycle::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNoViolation = 1;
inline constexpr int kExitUsage = 2;

// Each command writes its report to `out` and returns the process exit code.
// CSV output starts with one '#' metadata line, then a header row.

int cmd_bounds(const RunConfig& config, std::ostream& out);
int cmd_optimize(const RunConfig& config, std::ostream& out);
int cmd_certify(const RunConfig& config, std::ostream& out);
int cmd_simulate(const RunConfig& config, std::ostream& out);
int cmd_gram(const RunConfig& config, std::ostream& out);
int cmd_table(const RunConfig& config, std::ostream& out);

int dispatch(const RunConfig& config, std::ostream& out);

/// Full command-line entry point. Errors go to `err`; reports go to the
/// configured output path.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace viscycle::cli
