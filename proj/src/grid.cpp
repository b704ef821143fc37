#include "cptsq/grid.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "cptsq/error.hpp"

namespace cptsq {

namespace {

double parse_number(std::string_view field, std::string_view whole)
{
    try {
        std::size_t used = 0;
        const std::string s(field);
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw InvalidArgument("bad number '" + std::string(field) + "' in grid '" + std::string(whole) + "'");
    }
}

}  // namespace

GridSpec GridSpec::parse(std::string_view text)
{
    std::vector<std::string_view> fields;
    std::size_t begin = 0;
    while (true) {
        const std::size_t colon = text.find(':', begin);
        fields.push_back(text.substr(begin, colon == std::string_view::npos ? std::string_view::npos : colon - begin));
        if (colon == std::string_view::npos) break;
        begin = colon + 1;
    }
    if (fields.size() != 3 && fields.size() != 4) {
        throw InvalidArgument("grid must be start:stop:count[:log], got '" + std::string(text) + "'");
    }
    GridSpec g;
    g.start = parse_number(fields[0], text);
    g.stop = parse_number(fields[1], text);
    const double count = parse_number(fields[2], text);
    if (count < 1 || count != std::floor(count) || count > 1e7) {
        throw InvalidArgument("grid count must be a positive integer in '" + std::string(text) + "'");
    }
    g.count = static_cast<int>(count);
    if (fields.size() == 4) {
        if (fields[3] != "log") throw InvalidArgument("unknown grid spacing '" + std::string(fields[3]) + "'");
        g.log = true;
    }
    detail::require_finite(g.start, "grid start");
    detail::require_finite(g.stop, "grid stop");
    if (g.count == 1 && g.stop != g.start) throw InvalidArgument("a one-point grid needs start == stop");
    if (g.count > 1 && !(g.stop > g.start)) throw InvalidArgument("grid must be strictly increasing");
    if (g.log && !(g.start > 0.0)) throw InvalidArgument("log grid needs start > 0");
    return g;
}

std::vector<double> GridSpec::values() const
{
    std::vector<double> out(static_cast<std::size_t>(count));
    if (count == 1) {
        out[0] = start;
        return out;
    }
    for (int i = 0; i < count; ++i) {
        const double t = double(i) / double(count - 1);
        out[std::size_t(i)] = log ? std::exp(std::log(start) + t * (std::log(stop) - std::log(start)))
                                  : start + t * (stop - start);
    }
    out.front() = start;
    out.back() = stop;
    return out;
}

std::string GridSpec::to_string() const
{
    std::ostringstream os;
    os.precision(12);
    os << start << ':' << stop << ':' << count;
    if (log) os << ":log";
    return os.str();
}

std::vector<double> hybrid_omega_grid(int count, double lo, double hi)
{
    if (count < 2 || !(lo > 0.0) || !(hi > lo)) throw InvalidArgument("hybrid grid needs count >= 2 and 0 < lo < hi");
    const double pivot = std::min(1.0, hi);
    if (pivot <= lo) return GridSpec{lo, hi, count, true}.values();
    const int n_log = count / 2;
    const int n_lin = count - n_log;
    std::vector<double> out = GridSpec{lo, pivot, n_log, true}.values();
    if (pivot >= hi) return GridSpec{lo, hi, count, true}.values();
    const double step = (hi - pivot) / n_lin;
    for (int i = 1; i <= n_lin; ++i) out.push_back(i == n_lin ? hi : pivot + step * i);
    return out;
}

}  // namespace cptsq
