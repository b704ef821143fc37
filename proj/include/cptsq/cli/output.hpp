#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "cptsq/cli/config.hpp"

namespace cptsq::cli {

using Cell = std::variant<double, bool>;

struct Table {
    std::string schema;  ///< e.g. "spectrum/1"
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    /// Replaces the invocation description in the header when non-empty (figure presets).
    std::vector<std::pair<std::string, std::string>> config;
};

/// Renders the table with its `# config:` header.
std::string render(const Table& table, const std::vector<std::pair<std::string, std::string>>& config, Format format);

/// Writes to `path` through a temporary file and rename, or to stdout for "-".
void write_output(const std::string& path, const std::string& content);

}  // namespace cptsq::cli
