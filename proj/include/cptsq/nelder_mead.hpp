#pragma once

#include <functional>
#include <vector>

namespace cptsq::optim {

struct SimplexResult {
    std::vector<double> x;
    double value = 0.0;
    int evaluations = 0;
    bool converged = false;
};

struct SimplexOptions {
    double initial_step = 0.3;
    double tolerance = 1e-10;  ///< spread of simplex values
    double x_tolerance = 1e-9; ///< simplex diameter
    int max_evaluations = 5000;
    int restarts = 2;          ///< re-seed the simplex at the best vertex after convergence
};

/// Derivative-free local minimization. The returned value never exceeds f(x0).
SimplexResult nelder_mead(const std::function<double(const std::vector<double>&)>& f, std::vector<double> x0,
                          const SimplexOptions& options = {});

}  // namespace cptsq::optim
