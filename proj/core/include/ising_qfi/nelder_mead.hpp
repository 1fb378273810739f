#pragma once

#include <functional>
#include <vector>

namespace ising_qfi {

struct SimplexOptions {
    double diameter_tol = 1e-8;  ///< stop when the simplex diameter falls below this
    double value_tol = 1e-12;    ///< ... or the value spread falls below value_tol*(1+|f_best|)
    int max_iterations = 0;      ///< 0 selects 400 * dimension
    double initial_step = 0.6;   ///< offset of the initial simplex vertices
};

struct SimplexResult {
    std::vector<double> x;
    double value = 0.0;
    bool converged = false;
    int iterations = 0;
    int evaluations = 0;
};

/// Derivative-free Nelder-Mead minimization with the standard
/// reflection/expansion/contraction/shrink coefficients (1, 2, 1/2, 1/2).
/// Deterministic: the trajectory is a pure function of x0 and the options.
SimplexResult minimize_simplex(const std::function<double(const std::vector<double>&)>& f,
                               std::vector<double> x0, const SimplexOptions& opts = {});

}  // namespace ising_qfi
