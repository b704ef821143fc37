#include "cptsq/cli/output.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "json.hpp"

#include "cptsq/error.hpp"

namespace cptsq::cli {

namespace {

std::string csv_cell(const Cell& c)
{
    if (const bool* b = std::get_if<bool>(&c)) return *b ? "true" : "false";
    return format_number(std::get<double>(c));
}

nlohmann::ordered_json json_cell(const Cell& c)
{
    if (const bool* b = std::get_if<bool>(&c)) return *b;
    const double v = std::get<double>(c);
    if (!std::isfinite(v)) return nullptr;
    // Round-trip through the CSV formatting so both outputs carry the same digits.
    return std::stod(format_number(v));
}

}  // namespace

std::string render(const Table& table, const std::vector<std::pair<std::string, std::string>>& config, Format format)
{
    if (format == Format::Json) {
        nlohmann::ordered_json doc;
        doc["schema"] = table.schema;
        nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
        for (const auto& [k, v] : config) cfg[k] = v;
        doc["config"] = cfg;
        doc["columns"] = table.columns;
        nlohmann::ordered_json rows = nlohmann::ordered_json::array();
        for (const auto& row : table.rows) {
            nlohmann::ordered_json r = nlohmann::ordered_json::array();
            for (const auto& c : row) r.push_back(json_cell(c));
            rows.push_back(std::move(r));
        }
        doc["rows"] = std::move(rows);
        return doc.dump(1) + "\n";
    }

    std::ostringstream os;
    os << "# schema: " << table.schema << '\n';
    os << "# config:";
    for (const auto& [k, v] : config) os << ' ' << k << '=' << v;
    os << '\n';
    for (std::size_t i = 0; i < table.columns.size(); ++i) os << (i ? "," : "") << table.columns[i];
    os << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_cell(row[i]);
        os << '\n';
    }
    return os.str();
}

void write_output(const std::string& path, const std::string& content)
{
    if (path == "-") {
        std::cout << content << std::flush;
        return;
    }
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw InvalidArgument("cannot write '" + tmp.string() + "'");
        out << content;
        out.flush();
        if (!out) {
            std::error_code ec;
            fs::remove(tmp, ec);
            throw InvalidArgument("failed writing '" + tmp.string() + "'");
        }
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw InvalidArgument("cannot move output into place at '" + target.string() + "'");
    }
}

}  // namespace cptsq::cli
