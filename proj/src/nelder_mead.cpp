#include "cptsq/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace cptsq::optim {

namespace {

SimplexResult run_once(const std::function<double(const std::vector<double>&)>& f, const std::vector<double>& x0,
                       const SimplexOptions& opt, int budget)
{
    const std::size_t n = x0.size();
    std::vector<std::vector<double>> pts(n + 1, x0);
    std::vector<double> vals(n + 1);
    for (std::size_t i = 0; i < n; ++i) pts[i + 1][i] += opt.initial_step;
    int evals = 0;
    auto eval = [&](const std::vector<double>& x) {
        ++evals;
        return f(x);
    };
    for (std::size_t i = 0; i <= n; ++i) vals[i] = eval(pts[i]);

    std::vector<std::size_t> order(n + 1);
    bool converged = false;
    while (evals < budget) {
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](auto a, auto b) { return vals[a] < vals[b]; });
        const std::size_t best = order.front();
        const std::size_t worst = order.back();
        const std::size_t second = order[n - 1];

        double diameter = 0.0;
        for (std::size_t i = 0; i <= n; ++i) {
            double d = 0.0;
            for (std::size_t k = 0; k < n; ++k) d = std::max(d, std::abs(pts[i][k] - pts[best][k]));
            diameter = std::max(diameter, d);
        }
        if (vals[worst] - vals[best] <= opt.tolerance * (std::abs(vals[best]) + opt.tolerance)
            && diameter <= opt.x_tolerance) {
            converged = true;
            break;
        }
        // Flat objective: values agree to round-off even though the simplex is wide.
        if (vals[worst] - vals[best] <= 1e-15 * (std::abs(vals[best]) + 1.0) && diameter <= 1e-4) {
            converged = true;
            break;
        }

        std::vector<double> centroid(n, 0.0);
        for (std::size_t i = 0; i <= n; ++i) {
            if (i == worst) continue;
            for (std::size_t k = 0; k < n; ++k) centroid[k] += pts[i][k] / double(n);
        }
        auto along = [&](double t) {
            std::vector<double> x(n);
            for (std::size_t k = 0; k < n; ++k) x[k] = centroid[k] + t * (pts[worst][k] - centroid[k]);
            return x;
        };

        auto xr = along(-1.0);
        const double fr = eval(xr);
        if (fr < vals[best]) {
            auto xe = along(-2.0);
            const double fe = eval(xe);
            if (fe < fr) {
                pts[worst] = std::move(xe);
                vals[worst] = fe;
            } else {
                pts[worst] = std::move(xr);
                vals[worst] = fr;
            }
            continue;
        }
        if (fr < vals[second]) {
            pts[worst] = std::move(xr);
            vals[worst] = fr;
            continue;
        }
        const bool outside = fr < vals[worst];
        auto xc = along(outside ? -0.5 : 0.5);
        const double fc = eval(xc);
        if (fc < (outside ? fr : vals[worst])) {
            pts[worst] = std::move(xc);
            vals[worst] = fc;
            continue;
        }
        for (std::size_t i = 0; i <= n; ++i) {
            if (i == best) continue;
            for (std::size_t k = 0; k < n; ++k) pts[i][k] = pts[best][k] + 0.5 * (pts[i][k] - pts[best][k]);
            vals[i] = eval(pts[i]);
        }
    }
    const auto it = std::min_element(vals.begin(), vals.end());
    return {pts[std::size_t(it - vals.begin())], *it, evals, converged};
}

}  // namespace

SimplexResult nelder_mead(const std::function<double(const std::vector<double>&)>& f, std::vector<double> x0,
                          const SimplexOptions& options)
{
    SimplexResult best = run_once(f, x0, options, options.max_evaluations);
    int used = best.evaluations;
    for (int r = 0; r < options.restarts && best.converged && used < options.max_evaluations; ++r) {
        SimplexOptions shrunk = options;
        shrunk.initial_step = std::max(options.initial_step * 0.05, 1e-6);
        SimplexResult again = run_once(f, best.x, shrunk, options.max_evaluations - used);
        used += again.evaluations;
        const bool improved = again.value < best.value - options.tolerance * (std::abs(best.value) + options.tolerance);
        if (again.value <= best.value) {
            again.evaluations = used;
            best = std::move(again);
        }
        best.evaluations = used;
        if (!improved) break;
    }
    best.evaluations = used;
    return best;
}

}  // namespace cptsq::optim
