#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace cptsq {

/// Inclusive sample grid written `start:stop:count`, optionally `start:stop:count:log`.
struct GridSpec {
    double start = 0.0;
    double stop = 0.0;
    int count = 1;
    bool log = false;

    static GridSpec parse(std::string_view text);
    std::vector<double> values() const;
    std::string to_string() const;
};

/// Log-spaced half over [lo, min(1, hi)], linear half above it.
std::vector<double> hybrid_omega_grid(int count = 400, double lo = 1e-3, double hi = 1e2);

}  // namespace cptsq
