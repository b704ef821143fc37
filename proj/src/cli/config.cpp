#include "cptsq/cli/config.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>

#include "cptsq/error.hpp"

namespace cptsq::cli {

namespace {

std::string trim(const std::string& s)
{
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

}  // namespace

std::string format_number(double v)
{
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (v == 0.0) return "0";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::vector<double> RunConfig::omegas() const
{
    if (omega_range) return omega_range->values();
    return hybrid_omega_grid();
}

std::vector<std::pair<std::string, std::string>> RunConfig::describe() const
{
    std::vector<std::pair<std::string, std::string>> kv{
        {"command", command},
        {"C", format_number(params.C)},
        {"gamma", format_number(params.gamma)},
        {"kappa", format_number(params.kappa)},
        {"phi", format_number(params.phi)},
        {"delta", format_number(params.delta_bar)},
        {"gamma0", format_number(params.gamma0)},
        {"N", params.N ? format_number(*params.N) : "unset"},
        {"I", format_number(I)},
        {"alpha", alpha ? format_number(*alpha) : "optimal"},
        {"delta-range", delta_range.to_string()},
        {"omega-range", omega_range ? omega_range->to_string() : "hybrid:0.001:100:400"},
        {"phi-range", phi_range.to_string()},
        {"exact-stability", exact_stability ? "true" : "false"},
        {"seed", std::to_string(seed)},
        {"format", format == Format::Csv ? "csv" : "json"},
    };
    if (figure != 0) kv.emplace_back("figure", std::to_string(figure));
    return kv;
}

std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open config file '" + path + "'");
    std::vector<std::pair<std::string, std::string>> out;
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw InvalidArgument(path + ":" + std::to_string(number) + ": expected key = value");
        }
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw InvalidArgument(path + ":" + std::to_string(number) + ": empty key");
        out.emplace_back(std::move(key), std::move(value));
    }
    return out;
}

int resolve_threads(int flag)
{
    if (flag > 0) return flag;
    if (const char* env = std::getenv("CPT_SIM_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0 && v < 4096) return static_cast<int>(v);
    }
    return 0;
}

}  // namespace cptsq::cli
