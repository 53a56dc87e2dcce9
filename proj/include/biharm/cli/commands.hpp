#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "biharm/cli/scenario.hpp"
#include "biharm/errors.hpp"

namespace biharm::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitResonant = 3;
inline constexpr int kExitSingular = 4;

struct CommandResult {
    int exit_code = kExitOk;
    std::vector<std::string> files;
    nlohmann::json summary;
};

CommandResult cmd_spectrum(const Scenario& s, const std::string& prefix);
CommandResult cmd_observability(const Scenario& s, const std::string& prefix);
CommandResult cmd_control(const Scenario& s, const std::string& prefix);
CommandResult cmd_scan(const Scenario& s, const std::string& prefix);

/// Loads the config, dispatches and converts every failure into an error
/// JSON document (also written to <prefix>_error.json) plus exit code.
CommandResult run_command(Command command, const std::string& config_path,
                          const std::string& out_prefix);

/// "%.17g" formatting used by every CSV writer.
std::string format_double(double v);

int exit_code_for(ErrorCode code) noexcept;

}  // namespace biharm::cli
