#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace clf {

struct SimplexOptions {
    std::size_t max_evals = 4000;
    double size_tol = 1e-6;  // stop once the simplex characteristic size falls below this
    std::size_t restarts = 1;  // fresh simplex around the optimum after convergence
};

struct SimplexResult {
    std::vector<double> x;
    double value = 0.0;
    std::size_t evals = 0;
    bool converged = false;
};

/// Derivative-free minimization (Nelder-Mead, GSL nmsimplex2). Non-finite objective values
/// are treated as a large finite penalty. `step` sets the initial simplex edge per coordinate.
SimplexResult minimize_simplex(const std::function<double(const std::vector<double>&)>& f,
                               std::vector<double> x0, std::vector<double> step,
                               const SimplexOptions& options = {});

}  // namespace clf
