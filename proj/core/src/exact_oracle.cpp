#include "ising_qfi/exact_oracle.hpp"

#include <bit>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <string>

namespace ising_qfi {

namespace {

using Complex = std::complex<double>;

constexpr double kNormTol = 1e-10;

// bit of site j (1-based, site 1 = MSB) in basis index x of an N-site chain
inline int site_bit(std::uint64_t x, int N, int j) {
    return static_cast<int>((x >> (N - j)) & 1u);
}

void check_state(const StateVector& state) {
    if (std::abs(state.norm() - 1.0) > kNormTol)
        throw std::domain_error("state vector is not normalized");
}

// sum_i Z_i as a diagonal matrix
ComplexMatrix total_z(int N) {
    const std::int64_t dim = std::int64_t{1} << N;
    ComplexMatrix M = ComplexMatrix::Zero(dim, dim);
    for (std::int64_t x = 0; x < dim; ++x) {
        const int ones = std::popcount(static_cast<std::uint64_t>(x));
        M(x, x) = static_cast<double>(N - 2 * ones);
    }
    return M;
}

// sum over the coupled pairs of X_i X_{i+1}
ComplexMatrix coupling_xx(int N, bool periodic) {
    const std::int64_t dim = std::int64_t{1} << N;
    ComplexMatrix M = ComplexMatrix::Zero(dim, dim);
    const int last = periodic ? N : N - 1;
    for (int i = 1; i <= last; ++i) {
        const int ip = i == N ? 1 : i + 1;
        const std::uint64_t mask =
            (std::uint64_t{1} << (N - i)) | (std::uint64_t{1} << (N - ip));
        for (std::int64_t x = 0; x < dim; ++x) M(x ^ mask, x) += 1.0;
    }
    return M;
}

ComplexMatrix fermion_coupling(int N) {
    const std::int64_t dim = std::int64_t{1} << N;
    ComplexMatrix M = ComplexMatrix::Zero(dim, dim);
    std::vector<JwModePair> a;
    a.reserve(N);
    for (int j = 1; j <= N; ++j) a.push_back(jw_mode_matrix(N, j));
    for (int j = 1; j <= N; ++j) {
        const int jp = j == N ? 1 : j + 1;
        M.noalias() +=
            (a[j - 1].raising - a[j - 1].lowering) * (a[jp - 1].raising + a[jp - 1].lowering);
    }
    return M;
}

ComplexMatrix fermion_number_doubled(int N) {
    const std::int64_t dim = std::int64_t{1} << N;
    ComplexMatrix M = ComplexMatrix::Zero(dim, dim);
    for (int j = 1; j <= N; ++j) {
        const JwModePair aj = jw_mode_matrix(N, j);
        M.noalias() += 2.0 * (aj.raising * aj.lowering);
    }
    return M;
}

}  // namespace

int max_exact_sites() {
    static const int limit = [] {
        int n = 12;
        if (const char* env = std::getenv("ISING_QFI_NMAX")) {
            try {
                n = std::max(2, std::stoi(env));
            } catch (...) {
                n = 12;
            }
        }
        return n;
    }();
    return limit;
}

JwModePair jw_mode_matrix(int N, int j) {
    if (N < 2 || N > max_exact_sites()) throw std::domain_error("jw_mode_matrix: N out of range");
    if (j < 1 || j > N) throw std::domain_error("jw_mode_matrix: site index out of range");
    const std::int64_t dim = std::int64_t{1} << N;
    JwModePair pair;
    pair.lowering = ComplexMatrix::Zero(dim, dim);
    // Z-string over sites 1..j-1: sign = (-1)^(number of occupied sites left of j)
    const std::uint64_t string_mask = ((std::uint64_t{1} << (j - 1)) - 1) << (N - j + 1);
    const std::uint64_t bit = std::uint64_t{1} << (N - j);
    for (std::int64_t x = 0; x < dim; ++x) {
        const auto ux = static_cast<std::uint64_t>(x);
        if (!(ux & bit)) continue;  // a_j kills states with site j empty
        const double sign = (std::popcount(ux & string_mask) & 1) ? -1.0 : 1.0;
        pair.lowering(x & ~static_cast<std::int64_t>(bit), x) = sign;
    }
    pair.raising = pair.lowering.adjoint();
    return pair;
}

ComplexMatrix build_hamiltonian(const ModelParams& params, const MatrixModel& model) {
    params.validate();
    model.validate();
    if (params.N != model.N)
        throw std::domain_error("build_hamiltonian: params.N and model.N disagree");
    switch (model.kind) {
        case ModelKind::SpinOpen:
            return params.J * coupling_xx(model.N, false) + params.B * total_z(model.N);
        case ModelKind::SpinPeriodic:
            return params.J * coupling_xx(model.N, true) + params.B * total_z(model.N);
        case ModelKind::FermionCyclic:
            return params.J * fermion_coupling(model.N) +
                   params.B * fermion_number_doubled(model.N);
    }
    throw std::logic_error("build_hamiltonian: unknown model kind");
}

ComplexMatrix build_generator(Target which, const MatrixModel& model) {
    model.validate();
    const std::int64_t dim = std::int64_t{1} << model.N;
    switch (model.kind) {
        case ModelKind::SpinOpen:
            return which == Target::J ? coupling_xx(model.N, false) : total_z(model.N);
        case ModelKind::SpinPeriodic:
            return which == Target::J ? coupling_xx(model.N, true) : total_z(model.N);
        case ModelKind::FermionCyclic:
            if (which == Target::J) return fermion_coupling(model.N);
            // traceless form sum_j (2 n_j - 1)
            return fermion_number_doubled(model.N) -
                   static_cast<double>(model.N) * ComplexMatrix::Identity(dim, dim);
    }
    throw std::logic_error("build_generator: unknown model kind");
}

StateVector IntegratedGenerator::evolve(const StateVector& psi) const {
    const Eigen::VectorXcd phases =
        (Complex(0.0, -params.t) * energies.cast<Complex>()).array().exp();
    return eigenvectors * (phases.asDiagonal() * (eigenvectors.adjoint() * psi));
}

IntegratedGenerator integrated_generator(const ModelParams& params, Target which,
                                         const MatrixModel& model) {
    const ComplexMatrix H = build_hamiltonian(params, model);
    const ComplexMatrix G = build_generator(which, model);

    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(H);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("integrated_generator: eigendecomposition failed");

    IntegratedGenerator out;
    out.which = which;
    out.model = model;
    out.params = params;
    out.energies = es.eigenvalues();
    out.eigenvectors = es.eigenvectors();

    const auto& E = out.energies;
    const auto& V = out.eigenvectors;
    const double eps_e = 1e-9 * std::max(1.0, E.cwiseAbs().maxCoeff());
    const double t = params.t;

    ComplexMatrix K = V.adjoint() * G * V;
    const auto n = K.rows();
    for (Eigen::Index m = 0; m < n; ++m) {
        for (Eigen::Index l = 0; l < n; ++l) {
            const double d = E(m) - E(l);
            if (std::abs(d) <= eps_e) {
                K(m, l) *= t;
            } else {
                K(m, l) *= (std::exp(Complex(0.0, -t * d)) - 1.0) / Complex(0.0, -d);
            }
        }
    }
    out.matrix = V * K * V.adjoint();
    return out;
}

StateVector make_ghz(int N) {
    const std::int64_t dim = std::int64_t{1} << N;
    StateVector v = StateVector::Zero(dim);
    v(0) = v(dim - 1) = 1.0 / std::sqrt(2.0);
    return v;
}

StateVector make_staggered_ghz(int N) {
    if (N % 2 != 0) throw std::domain_error("make_staggered_ghz: N must be even");
    const std::int64_t dim = std::int64_t{1} << N;
    std::int64_t staggered = 0;  // |0101...01>, site 1 = MSB
    for (int j = 2; j <= N; j += 2) staggered |= std::int64_t{1} << (N - j);
    StateVector v = StateVector::Zero(dim);
    v(0) += 1.0 / std::sqrt(2.0);
    v(staggered) += 1.0 / std::sqrt(2.0);
    return v;
}

StateVector make_product_state(const std::vector<double>& thetas,
                               const std::vector<double>& phis) {
    if (thetas.size() != phis.size() || thetas.empty())
        throw std::domain_error("make_product_state: need matching theta/phi lists");
    const int N = static_cast<int>(thetas.size());
    const std::int64_t dim = std::int64_t{1} << N;
    StateVector v(dim);
    v.setZero();
    v(0) = 1.0;
    std::int64_t filled = 1;
    for (int i = 0; i < N; ++i) {
        const Complex up = std::cos(0.5 * thetas[i]);
        const Complex down = std::exp(Complex(0.0, phis[i])) * std::sin(0.5 * thetas[i]);
        for (std::int64_t x = filled - 1; x >= 0; --x) {
            const Complex amp = v(x);
            v(2 * x) = amp * up;
            v(2 * x + 1) = amp * down;
        }
        filled *= 2;
    }
    return v;
}

StateVector make_basis_string(int N, std::uint64_t bits) {
    const std::int64_t dim = std::int64_t{1} << N;
    if (bits >= static_cast<std::uint64_t>(dim))
        throw std::domain_error("make_basis_string: bits out of range");
    StateVector v = StateVector::Zero(dim);
    v(static_cast<std::int64_t>(bits)) = 1.0;
    return v;
}

VarianceResult variance_of(const StateVector& state, const IntegratedGenerator& gen,
                           double nu) {
    check_state(state);
    if (state.size() != gen.matrix.rows())
        throw std::domain_error("variance_of: state dimension mismatch");
    const StateVector evolved = gen.evolve(state);
    const StateVector w = gen.matrix * evolved;
    const double mean = std::real(evolved.dot(w));
    const double second = std::real(w.dot(w));
    return VarianceResult::from_variance(second - mean * mean, nu);
}

double expectation_of(const StateVector& state, const IntegratedGenerator& gen) {
    check_state(state);
    const StateVector evolved = gen.evolve(state);
    return std::real(evolved.dot(gen.matrix * evolved));
}

QfiEstimate qfi_finite_difference(const ModelParams& params, Target which,
                                  const MatrixModel& model, const StateVector& state,
                                  double epsilon) {
    if (!(epsilon > 0.0)) throw std::domain_error("qfi_finite_difference: epsilon must be > 0");
    check_state(state);

    auto shifted = [&](double d) {
        ModelParams p = params;
        (which == Target::J ? p.J : p.B) += d;
        return p;
    };
    auto evolve_under = [&](const ModelParams& p) {
        const ComplexMatrix H = build_hamiltonian(p, model);
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(H);
        const Eigen::VectorXcd phases =
            (Complex(0.0, -p.t) * es.eigenvalues().cast<Complex>()).array().exp();
        return StateVector(es.eigenvectors() *
                           (phases.asDiagonal() * (es.eigenvectors().adjoint() * state)));
    };

    const StateVector plus = evolve_under(shifted(epsilon));
    const StateVector minus = evolve_under(shifted(-epsilon));
    const StateVector center = evolve_under(params);
    const StateVector deriv = (plus - minus) / (2.0 * epsilon);

    QfiEstimate est;
    est.cancellation_warning = epsilon < 1e-12;
    est.value = 4.0 * (std::real(deriv.dot(deriv)) - std::norm(deriv.dot(center)));
    return est;
}

EvolvedGenerator::EvolvedGenerator(const ModelParams& params, Target which,
                                   const MatrixModel& model)
    : params_(params) {
    const IntegratedGenerator gen = integrated_generator(params, which, model);
    const Eigen::VectorXcd phases =
        (Complex(0.0, -params.t) * gen.energies.cast<Complex>()).array().exp();
    const ComplexMatrix U =
        gen.eigenvectors * phases.asDiagonal() * gen.eigenvectors.adjoint();
    conjugated_ = U.adjoint() * gen.matrix * U;
}

double EvolvedGenerator::variance(const StateVector& state) const {
    const StateVector w = conjugated_ * state;
    const double mean = std::real(state.dot(w));
    return std::real(w.dot(w)) - mean * mean;
}

double EvolvedGenerator::mean(const StateVector& state) const {
    return std::real(state.dot(conjugated_ * state));
}

}  // namespace ising_qfi
