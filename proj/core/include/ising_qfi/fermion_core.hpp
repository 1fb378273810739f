#pragma once

#include <complex>
#include <vector>

#include "ising_qfi/model.hpp"

namespace ising_qfi {

/// Per-mode coefficients of the cyclic chain in momentum space.
///
/// For mode k in [0, N-1]:
///   alpha_k = J cos(2 pi k / N) + B
///   beta_k  = J sin(2 pi k / N)
///   omega_k = sqrt(alpha_k^2 + beta_k^2)
///   theta_k = (1/2) atan2(beta_k, alpha_k)
/// theta_k is the Bogoliubov mixing angle of the {k, N-k} block (the companion
/// phase phi_k is the constant pi/2 and is not stored). The two-argument
/// arctangent keeps theta_k defined when alpha_k <= 0.
struct MomentumMode {
    int k = 0;
    double alpha = 0.0;
    double beta = 0.0;
    double omega = 0.0;
    double theta = 0.0;
};

/// 2x2 block coefficients of the integrated generator O_i in the {k, N-k}
/// momentum pair: diag(k) on the particle/hole diagonal, offdiag(k) on the
/// pair-creation corner. which selects the J-block (Omega_k, Delta_k) or the
/// B-block (A_k, B_k). At t = 0 the block vanishes.
struct GeneratorBlock {
    int k = 0;
    double diag = 0.0;
    std::complex<double> offdiag{0.0, 0.0};
    Target which = Target::J;

    /// Non-negative singular value s_k = sqrt(diag^2 + |offdiag|^2); the block
    /// eigenvalues are +-s_k (vacuum level set to zero).
    double singular_value() const { return std::hypot(diag, std::abs(offdiag)); }
};

/// The N singular values s_k of an integrated generator, in mode order.
struct GeneratorSpectrum {
    Target which = Target::J;
    std::vector<double> values;
    ModelParams params;

    double sum() const;
};

/// Momentum-space coefficients of mode k. Throws std::domain_error if k is
/// outside [0, N-1].
MomentumMode mode_params(const ModelParams& params, int k);

/// Closed-form block of the integrated generator for mode k.
///
/// With c = cos(2 pi k/N), s = sin(2 pi k/N) for Target::J and (c, s) = (1, 0)
/// for Target::B, and P = alpha c + beta s, Q = beta c - alpha s:
///
///   diag    = alpha P t / w^2 + beta Q sin(4 w t) / (4 w^3)
///   offdiag = -Q sin^2(2 w t) / (2 w^2)
///             + i [ beta P t / w^2 - alpha Q sin(4 w t) / (4 w^3) ]
///
/// where w = omega_k. Each {k, N-k} pair enters the cyclic quadratic form
/// twice, so single-particle energies are 2 w and the Heisenberg motion of the
/// block runs at frequency 2 w; the integrated oscillatory terms therefore
/// carry arguments 4 w t. When w falls below the degeneracy guard the block is
/// the analytic limit t*M_k: (t c, i t s) for J, (t, 0) for B.
GeneratorBlock generator_block(const ModelParams& params, int k, Target which);

/// All N singular values s_k = sqrt(diag_k^2 + |offdiag_k|^2).
GeneratorSpectrum generator_spectrum(const ModelParams& params, Target which);

/// Closed form for diag_k^2 + |offdiag_k|^2 on a second, independent code
/// path used for cross-validation:
///
///   t^2 P^2 / w^2 + Q^2 sin^2(2 w t) / (4 w^4)
///
/// Throws std::domain_error for degenerate modes (omega_k below the guard),
/// where the quotient form is undefined.
double eigenvalue_identity(const ModelParams& params, int k, Target which);

/// Largest variance of O_i over all input states, (sum_k s_k)^2, attained by
/// the equal superposition of the generator's extreme Fock states.
VarianceResult max_variance(const ModelParams& params, Target which, double nu = 1.0);

/// Exact variance of O_B on the GHZ state (|0...0> + |1...1>)/sqrt(2) under
/// the cyclic fermion model:
///
///   (sum_k A_k)^2 + 2 sum_k |B_k|^2
///
/// The first moment <O_B> vanishes on GHZ, so this is also <O_B^2>. The
/// second term is bounded in t while the first grows as (N t)^2, which is why
/// the asymptotic prefactor F(g) sees only (sum A_k)^2. Independent of the
/// relative phase between the two GHZ branches.
VarianceResult ghz_variance_b(const ModelParams& params, double nu = 1.0);

/// Variance of O_J on the staggered state (|00...> + |0101...>)/sqrt(2): by
/// the kink duality of the chain this is ghz_variance_b with the roles of J
/// and B exchanged. Exact in the fermionic bulk picture; at finite N the spin
/// chain adds a boundary correction.
VarianceResult staggered_variance_j(const ModelParams& params, double nu = 1.0);

}  // namespace ising_qfi
