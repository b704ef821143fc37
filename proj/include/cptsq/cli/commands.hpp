#pragma once

#include <string>
#include <utility>
#include <vector>

#include "cptsq/cli/config.hpp"
#include "cptsq/cli/output.hpp"

namespace cptsq::cli {

/// Exit codes of the command-line front end.
enum ExitCode : int { kOk = 0, kConfigError = 2, kUnstable = 3, kSolverFailure = 4 };

Table cmd_steady(const RunConfig& config);
Table cmd_spectrum(const RunConfig& config);
Table cmd_entangle(const RunConfig& config);
Table cmd_spin(const RunConfig& config);

/// Figure presets; returns (file name, table) pairs.
std::vector<std::pair<std::string, Table>> cmd_fig(const RunConfig& config);

/// CSV dump of M, D and B for the configured working point.
std::string export_matrices(const RunConfig& config);

/// Full command-line entry point; returns the process exit code.
int run(int argc, const char* const* argv);

}  // namespace cptsq::cli
