#pragma once

#include "twave/cli/config.hpp"

#include <json.hpp>

#include <exception>
#include <ostream>
#include <string>

namespace twave::cli {

enum ExitCode : int { kSuccess = 0, kAccuracyFailure = 1, kInvalidInput = 2 };

struct CommandResult {
    nlohmann::ordered_json report;
    int exit_code = kSuccess;
};

/// Equilibria, regime and annulus.
CommandResult cmd_classify(const RunConfig& cfg);

/// G_n over the scan grid (streamed to CSV), monotonicity verdict, boundary
/// limits and the admissible ratio interval.
CommandResult cmd_abelian_scan(const RunConfig& cfg);

/// Limit cycle search; a "none" outcome is a success.
CommandResult cmd_find_cycle(const RunConfig& cfg);

/// One CSV per seed, plus an optional SVG overlay.
CommandResult cmd_phase_portrait(const RunConfig& cfg);

/// Exit status for an exception escaping a command.
int exit_code_for(const std::exception& e);

/// Full command-line entry point: parses argv, runs the subcommand, writes
/// the report and returns the process exit status.
int run_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace twave::cli
