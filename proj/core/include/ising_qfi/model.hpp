#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

namespace ising_qfi {

/// Which Hamiltonian parameter is being estimated.
enum class Target { J, B };

/// Matrix realizations of the chain.
///   SpinOpen:      J sum_{i=1}^{N-1} X_i X_{i+1} + B sum_i Z_i
///   SpinPeriodic:  coupling sum runs i = 1..N with site N+1 == 1
///   FermionCyclic: the Jordan-Wigner quadratic form
///                  J sum_{j=1}^{N} (a_j^+ - a_j)(a_{j+1}^+ + a_{j+1}) + 2B sum_j a_j^+ a_j
///                  with the cyclic identification a_{N+1} == a_1 applied at the
///                  fermion level. This differs from SpinPeriodic by a
///                  parity-dependent boundary term; all momentum-space closed
///                  forms in fermion_core are exact for this model.
enum class ModelKind { SpinOpen, SpinPeriodic, FermionCyclic };

/// Chain parameters. Couplings are in energy units, t in inverse energy units.
struct ModelParams {
    int N = 2;        ///< number of sites / momentum modes, N >= 2
    double J = 0.0;   ///< coupling strength
    double B = 0.0;   ///< transverse field strength
    double t = 0.0;   ///< evolution time, t >= 0

    void validate() const {
        if (N < 2) throw std::domain_error("ModelParams: N must be >= 2");
        if (!(t >= 0.0)) throw std::domain_error("ModelParams: t must be >= 0");
        if (!std::isfinite(J) || !std::isfinite(B) || !std::isfinite(t))
            throw std::domain_error("ModelParams: parameters must be finite");
    }

    /// Params with the roles of J and B exchanged (kink duality).
    ModelParams swapped() const { return ModelParams{N, B, J, t}; }
};

/// Scale below which a momentum mode counts as degenerate (omega_k ~ 0) and
/// the analytic t*M_k limit of the block integral is used instead of the
/// 0/0 closed form.
inline double degeneracy_guard(const ModelParams& p) {
    return 1e-9 * std::max({std::abs(p.J), std::abs(p.B), 1.0});
}

/// Variance of an integrated generator together with the derived metrological
/// quantities: qfi = 4*variance and the Cramer-Rao precision bound
/// 1/sqrt(nu*qfi) for nu repetitions (infinite when qfi = 0).
struct VarianceResult {
    double variance = 0.0;
    double qfi = 0.0;
    double precision_bound = std::numeric_limits<double>::infinity();

    static VarianceResult from_variance(double variance, double nu = 1.0) {
        if (!(nu >= 1.0)) throw std::domain_error("VarianceResult: nu must be >= 1");
        VarianceResult r;
        r.variance = variance;
        r.qfi = 4.0 * variance;
        r.precision_bound = r.qfi > 0.0 ? 1.0 / std::sqrt(nu * r.qfi)
                                        : std::numeric_limits<double>::infinity();
        return r;
    }
};

}  // namespace ising_qfi
