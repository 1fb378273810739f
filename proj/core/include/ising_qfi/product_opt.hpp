#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "ising_qfi/exact_oracle.hpp"
#include "ising_qfi/model.hpp"

namespace ising_qfi {

/// Bloch angles (theta_i, phi_i) of an N-qubit pure product state
///   prod_i [ cos(theta_i/2)|0> + e^{i phi_i} sin(theta_i/2)|1> ].
/// Construction wraps arbitrary real angles onto theta in [0, pi],
/// phi in [0, 2 pi) without changing the state.
struct ProductStateAngles {
    std::vector<double> thetas;
    std::vector<double> phis;

    static ProductStateAngles wrapped(std::vector<double> thetas, std::vector<double> phis);

    int sites() const { return static_cast<int>(thetas.size()); }
    StateVector state() const { return make_product_state(thetas, phis); }
};

/// Least-squares fit of y = a * N^b + c.
struct FitResult {
    double a = 0.0, b = 0.0, c = 0.0;
    double stderr_a = 0.0, stderr_b = 0.0, stderr_c = 0.0;
    double residual_sum_of_squares = 0.0;
    /// True when the Levenberg-Marquardt path hit a singular Jacobian and the
    /// exponent came from a log-log linear fallback instead.
    bool loglog_fallback = false;
};

/// Configuration of one multi-start optimization run.
struct OptRunConfig {
    ModelParams params;
    Target which = Target::J;
    ModelKind model = ModelKind::SpinOpen;
    int restarts = 64;
    std::uint64_t seed = 0;
    double diameter_tol = 1e-8;
    int max_iterations = 0;  ///< per restart; 0 = optimizer default
    int workers = 1;         ///< restarts evaluated concurrently
};

struct RestartRecord {
    int index = 0;
    double variance = 0.0;
    bool converged = false;
    int iterations = 0;
};

/// Result of a run: the best variance over all restarts (ties resolved toward
/// the lowest restart index) plus the per-restart log. Reproducible given
/// (seed, restarts, tolerances) for any worker count.
struct OptRun {
    OptRunConfig config;
    double best_variance = 0.0;
    ProductStateAngles best_angles;
    std::vector<RestartRecord> per_restart;
};

/// Variance of O_i on the product state with the given angles, evolved under
/// the requested model. The convenience overload builds the conjugated
/// generator on the fly; the EvolvedGenerator overload reuses a cached one.
double product_variance(const ProductStateAngles& angles, const ModelParams& params,
                        Target which, ModelKind model);
double product_variance(const ProductStateAngles& angles, const EvolvedGenerator& gen);

/// Multi-start Nelder-Mead ascent of the product-state variance. Each restart
/// draws its 2N starting angles from a counter-based stream of config.seed,
/// so the outcome is independent of restart execution order.
OptRun optimize(const OptRunConfig& config);

/// Fit (a, b, c) of y = a N^b + c to (N, y) points by Levenberg-Marquardt
/// with analytic Jacobian; standard errors from the Jacobian at the optimum.
/// Needs at least 4 points with distinct N.
FitResult fit_power_law(const std::vector<std::pair<double, double>>& points);

}  // namespace ising_qfi
