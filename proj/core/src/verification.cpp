#include "ising_qfi/verification.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <ostream>
#include <sstream>

#include "ising_qfi/exact_oracle.hpp"
#include "ising_qfi/fermion_core.hpp"
#include "ising_qfi/rng.hpp"

namespace ising_qfi {

namespace {

struct Suite {
    VerifyLevel level;
    std::vector<CheckResult> results;
    std::ostream* progress = nullptr;

    int n_cap() const { return level == VerifyLevel::Fast ? 6 : 8; }

    void add(CheckResult r) {
        if (progress) {
            (*progress) << (r.passed ? "PASS " : "FAIL ") << r.name
                        << "  max_dev=" << r.max_deviation << " tol=" << r.tolerance;
            if (!r.detail.empty()) (*progress) << "  (" << r.detail << ")";
            (*progress) << '\n';
            progress->flush();
        }
        results.push_back(std::move(r));
    }
};

const std::vector<std::pair<double, double>>& coupling_grid() {
    static const std::vector<std::pair<double, double>> grid = {
        {1.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}, {1.0, 0.5}, {0.7, 1.3}};
    return grid;
}

const std::vector<double>& time_grid() {
    static const std::vector<double> grid = {0.7, 3.1, 20.0};
    return grid;
}

void check_car(Suite& s) {
    CheckResult r{"car-relations"};
    r.tolerance = 1e-12;
    for (int N : {2, 4, 6}) {
        const std::int64_t dim = std::int64_t{1} << N;
        std::vector<JwModePair> a;
        for (int j = 1; j <= N; ++j) a.push_back(jw_mode_matrix(N, j));
        const ComplexMatrix id = ComplexMatrix::Identity(dim, dim);
        for (int j = 0; j < N; ++j) {
            for (int k = 0; k < N; ++k) {
                const ComplexMatrix anti1 =
                    a[j].lowering * a[k].raising + a[k].raising * a[j].lowering -
                    (j == k ? id : ComplexMatrix::Zero(dim, dim));
                const ComplexMatrix anti2 =
                    a[j].lowering * a[k].lowering + a[k].lowering * a[j].lowering;
                r.max_deviation = std::max({r.max_deviation,
                                            anti1.cwiseAbs().maxCoeff(),
                                            anti2.cwiseAbs().maxCoeff()});
            }
        }
        // vacuum annihilation
        const StateVector vac = make_basis_string(N, 0);
        for (int j = 0; j < N; ++j)
            r.max_deviation = std::max(r.max_deviation, (a[j].lowering * vac).norm());
    }
    r.passed = r.max_deviation <= r.tolerance;
    s.add(std::move(r));
}

void check_hermitian(Suite& s) {
    CheckResult r{"hermitian-builders"};
    r.tolerance = 1e-12;
    for (auto kind : {ModelKind::SpinOpen, ModelKind::SpinPeriodic, ModelKind::FermionCyclic}) {
        for (int N : {3, 5}) {
            const MatrixModel model{kind, N};
            for (auto [J, B] : coupling_grid()) {
                const ComplexMatrix H = build_hamiltonian(ModelParams{N, J, B, 1.0}, model);
                r.max_deviation =
                    std::max(r.max_deviation, (H - H.adjoint()).cwiseAbs().maxCoeff());
            }
            for (auto which : {Target::J, Target::B}) {
                const ComplexMatrix G = build_generator(which, model);
                r.max_deviation =
                    std::max(r.max_deviation, (G - G.adjoint()).cwiseAbs().maxCoeff());
            }
        }
    }
    r.passed = r.max_deviation <= r.tolerance;
    s.add(std::move(r));
}

void check_spectrum(Suite& s) {
    CheckResult r{"fermion-spectrum-match"};
    r.tolerance = 1e-8;
    for (int N = 2; N <= s.n_cap(); ++N) {
        for (auto [J, B] : coupling_grid()) {
            const ModelParams p{N, J, B, 1.0};
            const ComplexMatrix H = build_hamiltonian(p, MatrixModel{ModelKind::FermionCyclic, N});
            Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(H, Eigen::EigenvaluesOnly);
            Eigen::VectorXd E = es.eigenvalues();

            std::vector<double> omegas(N);
            for (int k = 0; k < N; ++k) omegas[k] = mode_params(p, k).omega;
            const std::int64_t dim = std::int64_t{1} << N;
            std::vector<double> free(dim, 0.0);
            for (std::int64_t occ = 0; occ < dim; ++occ)
                for (int k = 0; k < N; ++k)
                    if ((occ >> k) & 1) free[occ] += 2.0 * omegas[k];
            std::sort(free.begin(), free.end());

            double mean_free = 0.0;
            for (double v : free) mean_free += v;
            mean_free /= static_cast<double>(dim);
            const double offset = E.mean() - mean_free;

            const double scale = std::max(1.0, E.cwiseAbs().maxCoeff());
            for (std::int64_t i = 0; i < dim; ++i)
                r.max_deviation =
                    std::max(r.max_deviation, std::abs(E(i) - (free[i] + offset)) / scale);
        }
    }
    r.passed = r.max_deviation <= r.tolerance;
    s.add(std::move(r));
}

void check_generator_gap(Suite& s) {
    CheckResult r{"generator-gap-equality"};
    r.tolerance = 1e-8;
    for (int N = 2; N <= s.n_cap(); N += 2) {
        for (auto [J, B] : coupling_grid()) {
            for (double t : time_grid()) {
                const ModelParams p{N, J, B, t};
                for (auto which : {Target::J, Target::B}) {
                    const IntegratedGenerator gen =
                        integrated_generator(p, which, MatrixModel{ModelKind::FermionCyclic, N});
                    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(gen.matrix,
                                                                    Eigen::EigenvaluesOnly);
                    const double gap =
                        es.eigenvalues().maxCoeff() - es.eigenvalues().minCoeff();
                    const double sum = generator_spectrum(p, which).sum();
                    r.max_deviation =
                        std::max(r.max_deviation, std::abs(0.5 * gap - sum) / sum);
                }
            }
        }
    }
    r.passed = r.max_deviation <= r.tolerance;
    s.add(std::move(r));
}

void check_ghz(Suite& s) {
    CheckResult var_check{"ghz-variance-equality"};
    var_check.tolerance = 1e-8;
    CheckResult mean_check{"ghz-first-moment"};
    mean_check.tolerance = 1e-8;  // relative to sum_k |A_k|
    for (int N = 2; N <= s.n_cap(); N += 2) {
        for (auto [J, B] : coupling_grid()) {
            for (double t : time_grid()) {
                const ModelParams p{N, J, B, t};
                const IntegratedGenerator gen =
                    integrated_generator(p, Target::B, MatrixModel{ModelKind::FermionCyclic, N});
                const StateVector ghz = make_ghz(N);
                const double var = variance_of(ghz, gen).variance;
                const double closed = ghz_variance_b(p).variance;
                var_check.max_deviation =
                    std::max(var_check.max_deviation, std::abs(var - closed) / closed);

                double abs_diag_sum = 0.0;
                for (int k = 0; k < N; ++k)
                    abs_diag_sum += std::abs(generator_block(p, k, Target::B).diag);
                const double mean = expectation_of(ghz, gen);
                mean_check.max_deviation = std::max(
                    mean_check.max_deviation, std::abs(mean) / std::max(abs_diag_sum, 1e-300));
            }
        }
    }
    var_check.passed = var_check.max_deviation <= var_check.tolerance;
    mean_check.passed = mean_check.max_deviation <= mean_check.tolerance;
    s.add(std::move(var_check));
    s.add(std::move(mean_check));
}

StateVector random_product_state(int N, SplitMix64& stream) {
    std::vector<double> th(N), ph(N);
    for (int i = 0; i < N; ++i) th[i] = stream.next_double() * 3.14159265358979323846;
    for (int i = 0; i < N; ++i) ph[i] = stream.next_double() * 6.28318530717958647692;
    return make_product_state(th, ph);
}

void check_qfi_two_path(Suite& s) {
    CheckResult r{"qfi-two-path"};
    r.tolerance = 1e-4;
    const int states = s.level == VerifyLevel::Fast ? 5 : 10;
    const std::vector<int> sizes =
        s.level == VerifyLevel::Fast ? std::vector<int>{3, 5} : std::vector<int>{3, 5, 6};
    SplitMix64 stream{0x5eed5eed5eed5eedull};
    for (auto kind : {ModelKind::SpinOpen, ModelKind::SpinPeriodic, ModelKind::FermionCyclic}) {
        for (int N : sizes) {
            const ModelParams p{N, 1.0, 0.7, 2.0};
            const MatrixModel model{kind, N};
            for (auto which : {Target::J, Target::B}) {
                const IntegratedGenerator gen = integrated_generator(p, which, model);
                for (int i = 0; i < states; ++i) {
                    const StateVector psi = random_product_state(N, stream);
                    const double qfi_gen = variance_of(psi, gen).qfi;
                    const double qfi_fd =
                        qfi_finite_difference(p, which, model, psi, 1e-6).value;
                    r.max_deviation = std::max(
                        r.max_deviation,
                        std::abs(qfi_fd - qfi_gen) / std::max(std::abs(qfi_gen), 1e-12));
                }
            }
        }
    }
    r.passed = r.max_deviation <= r.tolerance;
    s.add(std::move(r));
}

void check_block_identity(Suite& s) {
    CheckResult r{"block-identity-consistency"};
    r.tolerance = 1e-12;  // scaled by max(1, t^2)
    for (auto [J, B] : coupling_grid()) {
        for (int N : {5, 6, 8}) {
            for (double t : time_grid()) {
                const ModelParams p{N, J, B, t};
                for (auto which : {Target::J, Target::B}) {
                    for (int k = 0; k < N; ++k) {
                        if (mode_params(p, k).omega < degeneracy_guard(p)) continue;
                        const GeneratorBlock blk = generator_block(p, k, which);
                        const double lhs =
                            blk.diag * blk.diag + std::norm(blk.offdiag);
                        const double rhs = eigenvalue_identity(p, k, which);
                        r.max_deviation = std::max(
                            r.max_deviation, std::abs(lhs - rhs) / std::max(1.0, t * t));
                    }
                }
            }
        }
    }
    r.passed = r.max_deviation <= r.tolerance;
    s.add(std::move(r));
}

void check_degenerate_guard(Suite& s) {
    // Continuity: along B = -J + 10^-j the k = 0 block must stay at its
    // guarded limit (t, 0) for the J target and (t, 0) for the B target.
    CheckResult cont{"degenerate-limit-continuity"};
    cont.tolerance = 1e-10;  // scaled by t
    const double t = 3.1;
    for (int j = 2; j <= 8; ++j) {
        const ModelParams p{6, 1.0, -1.0 + std::pow(10.0, -j), t};
        for (auto which : {Target::J, Target::B}) {
            const GeneratorBlock blk = generator_block(p, 0, which);
            const double dev =
                std::hypot(blk.diag - t, std::abs(blk.offdiag)) / t;
            cont.max_deviation = std::max(cont.max_deviation, dev);
        }
    }
    cont.passed = cont.max_deviation <= cont.tolerance;
    s.add(std::move(cont));

    // Negative control: at a small-but-guarded omega the t*M_k limit must
    // differ measurably from the generic formula, otherwise a broken guard
    // threshold could never be detected.
    CheckResult ctrl{"degenerate-guard-distinguishable"};
    ctrl.tolerance = 0.01;  // require at least this much separation
    const ModelParams p{6, 0.3, -0.2, 3.1};
    double separation = 0.0;
    for (int k = 0; k < p.N; ++k) {
        const MomentumMode m = mode_params(p, k);
        if (m.omega < degeneracy_guard(p) || m.omega > 1.0) continue;
        const GeneratorBlock blk = generator_block(p, k, Target::J);
        const double phi = 2.0 * 3.14159265358979323846 * k / p.N;
        const std::complex<double> limit_off{0.0, p.t * std::sin(phi)};
        separation = std::max(separation,
                              std::hypot(blk.diag - p.t * std::cos(phi),
                                         std::abs(blk.offdiag - limit_off)));
    }
    ctrl.max_deviation = separation;
    ctrl.passed = separation > ctrl.tolerance;
    ctrl.detail = "separation must exceed tolerance";
    s.add(std::move(ctrl));
}

void check_boundary_tracking(Suite& s) {
    // Periodic spin chain vs fermion-cyclic chain differ by a JW parity
    // boundary term; the GHZ variance deviation is reported, not gated.
    CheckResult r{"ghz-boundary-deviation (tracked)"};
    r.gating = false;
    std::ostringstream detail;
    const double t = 3.1;
    for (auto [J, B] : {std::pair{1.0, 0.5}, std::pair{1.0, 1.0}}) {
        detail << "J=" << J << ",B=" << B << ":";
        for (int N = 4; N <= s.n_cap(); N += 2) {
            const ModelParams p{N, J, B, t};
            const StateVector ghz = make_ghz(N);
            const double var_spin =
                variance_of(ghz, integrated_generator(p, Target::B,
                                                      MatrixModel{ModelKind::SpinPeriodic, N}))
                    .variance;
            const double var_fermion =
                variance_of(ghz, integrated_generator(p, Target::B,
                                                      MatrixModel{ModelKind::FermionCyclic, N}))
                    .variance;
            const double rel = std::abs(var_spin - var_fermion) / var_fermion;
            detail << " N" << N << "=" << rel;
            r.max_deviation = std::max(r.max_deviation, rel);
        }
        detail << "; ";
    }
    r.detail = detail.str();
    r.passed = true;
    s.add(std::move(r));
}

}  // namespace

std::vector<CheckResult> run_verification(VerifyLevel level, std::ostream* progress) {
    Suite s{level, {}, progress};
    check_car(s);
    check_hermitian(s);
    check_spectrum(s);
    check_generator_gap(s);
    check_ghz(s);
    check_qfi_two_path(s);
    check_block_identity(s);
    check_degenerate_guard(s);
    check_boundary_tracking(s);
    return std::move(s.results);
}

bool all_passed(const std::vector<CheckResult>& results) {
    for (const auto& r : results)
        if (r.gating && !r.passed) return false;
    return true;
}

}  // namespace ising_qfi
