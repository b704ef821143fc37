#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cptsq/grid.hpp"
#include "cptsq/params.hpp"

namespace cptsq::cli {

enum class Format { Csv, Json };

/// Fully resolved settings of one CLI invocation.
struct RunConfig {
    std::string command;
    SystemParams params;
    double I = 1.0;
    std::optional<double> alpha;
    GridSpec delta_range{-3.0, 3.0, 601, false};
    std::optional<GridSpec> omega_range;  ///< unset: hybrid log/linear grid
    GridSpec phi_range{1.0, 5.0, 17, false};
    int figure = 0;
    std::string out = "-";
    std::string export_matrices;
    Format format = Format::Csv;
    bool exact_stability = false;
    std::uint64_t seed = 1;
    int threads = 0;

    std::vector<double> omegas() const;

    /// Key/value pairs written into every output header.
    std::vector<std::pair<std::string, std::string>> describe() const;
};

/// Parses `key = value` lines; '#' starts a comment. Throws InvalidArgument.
std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path);

/// --threads if positive, else CPT_SIM_THREADS, else 0 (runtime default).
int resolve_threads(int flag);

std::string format_number(double v);

}  // namespace cptsq::cli
