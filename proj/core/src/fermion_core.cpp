#include "ising_qfi/fermion_core.hpp"

#include <cmath>
#include <numbers>

namespace ising_qfi {

namespace {

// (c, s) the block integrand mixes with: the momentum phase for the J
// generator, the constant (1, 0) for the B generator.
struct BlockPhase {
    double c;
    double s;
};

BlockPhase block_phase(const ModelParams& params, int k, Target which) {
    if (which == Target::B) return {1.0, 0.0};
    const double phi = 2.0 * std::numbers::pi * k / params.N;
    return {std::cos(phi), std::sin(phi)};
}

}  // namespace

double GeneratorSpectrum::sum() const {
    double total = 0.0;
    for (double v : values) total += v;
    return total;
}

MomentumMode mode_params(const ModelParams& params, int k) {
    params.validate();
    if (k < 0 || k >= params.N) throw std::domain_error("mode_params: k out of range");
    MomentumMode m;
    m.k = k;
    const double phi = 2.0 * std::numbers::pi * k / params.N;
    m.alpha = params.J * std::cos(phi) + params.B;
    m.beta = params.J * std::sin(phi);
    m.omega = std::hypot(m.alpha, m.beta);
    m.theta = 0.5 * std::atan2(m.beta, m.alpha);
    return m;
}

GeneratorBlock generator_block(const ModelParams& params, int k, Target which) {
    const MomentumMode m = mode_params(params, k);
    const auto [c, s] = block_phase(params, k, which);

    GeneratorBlock blk;
    blk.k = k;
    blk.which = which;

    const double t = params.t;
    if (m.omega < degeneracy_guard(params)) {
        // Degenerate mode: the motion is the identity and the integral is t*M_k.
        blk.diag = t * c;
        blk.offdiag = std::complex<double>(0.0, t * s);
        return blk;
    }

    const double w = m.omega;
    const double w2 = w * w;
    const double P = m.alpha * c + m.beta * s;
    const double Q = m.beta * c - m.alpha * s;
    const double sin4 = std::sin(4.0 * w * t);
    const double sin2 = std::sin(2.0 * w * t);

    blk.diag = m.alpha * P * t / w2 + m.beta * Q * sin4 / (4.0 * w2 * w);
    blk.offdiag = std::complex<double>(-Q * sin2 * sin2 / (2.0 * w2),
                                       m.beta * P * t / w2 - m.alpha * Q * sin4 / (4.0 * w2 * w));
    return blk;
}

GeneratorSpectrum generator_spectrum(const ModelParams& params, Target which) {
    params.validate();
    GeneratorSpectrum spectrum;
    spectrum.which = which;
    spectrum.params = params;
    spectrum.values.reserve(params.N);
    for (int k = 0; k < params.N; ++k)
        spectrum.values.push_back(generator_block(params, k, which).singular_value());
    return spectrum;
}

double eigenvalue_identity(const ModelParams& params, int k, Target which) {
    const MomentumMode m = mode_params(params, k);
    if (m.omega < degeneracy_guard(params))
        throw std::domain_error("eigenvalue_identity: mode is degenerate (omega_k ~ 0)");
    const auto [c, s] = block_phase(params, k, which);
    const double P = m.alpha * c + m.beta * s;
    const double Q = m.beta * c - m.alpha * s;
    const double w2 = m.omega * m.omega;
    const double sin2 = std::sin(2.0 * m.omega * params.t);
    return params.t * params.t * P * P / w2 + Q * Q * sin2 * sin2 / (4.0 * w2 * w2);
}

VarianceResult max_variance(const ModelParams& params, Target which, double nu) {
    const double total = generator_spectrum(params, which).sum();
    return VarianceResult::from_variance(total * total, nu);
}

VarianceResult ghz_variance_b(const ModelParams& params, double nu) {
    params.validate();
    double sum_diag = 0.0;
    double sum_off2 = 0.0;
    for (int k = 0; k < params.N; ++k) {
        const GeneratorBlock blk = generator_block(params, k, Target::B);
        sum_diag += blk.diag;
        sum_off2 += std::norm(blk.offdiag);
    }
    return VarianceResult::from_variance(sum_diag * sum_diag + 2.0 * sum_off2, nu);
}

VarianceResult staggered_variance_j(const ModelParams& params, double nu) {
    return ghz_variance_b(params.swapped(), nu);
}

}  // namespace ising_qfi
