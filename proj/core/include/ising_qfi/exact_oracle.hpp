#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "ising_qfi/model.hpp"

namespace ising_qfi {

using ComplexMatrix = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;

/// Largest chain size the dense 2^N machinery accepts. Defaults to 12;
/// override with the ISING_QFI_NMAX environment variable (read once).
int max_exact_sites();

/// A concrete 2^N-dimensional realization of the chain.
/// Basis ordering: site 1 is the most significant bit of the computational
/// basis index, |0> on a site has Z = +1, and the Jordan-Wigner occupied
/// state is |1> (the fermionic vacuum is |00...0>).
struct MatrixModel {
    ModelKind kind = ModelKind::SpinOpen;
    int N = 2;

    void validate() const {
        if (N < 2) throw std::domain_error("MatrixModel: N must be >= 2");
        if (N > max_exact_sites())
            throw std::domain_error("MatrixModel: N exceeds the dense-oracle limit");
    }
};

/// Jordan-Wigner mode matrices for site j (1-based):
///   lowering a_j = Z^(j-1) (x) |0><1| (x) I^(N-j),  raising = adjoint.
/// They satisfy {a_j, a_k^+} = delta_jk, {a_j, a_k} = 0 and annihilate
/// |00...0>.
struct JwModePair {
    ComplexMatrix lowering;
    ComplexMatrix raising;
};
JwModePair jw_mode_matrix(int N, int j);

/// Dense Hermitian Hamiltonian of the requested model. The fermion-cyclic
/// model is assembled literally from jw_mode_matrix products,
///   J sum_{j=1}^N (a_j^+ - a_j)(a_{j+1}^+ + a_{j+1}) + 2B sum_j a_j^+ a_j,
/// which differs from B * sum Z by a constant and from the periodic spin
/// chain by a parity boundary term; neither affects any variance.
ComplexMatrix build_hamiltonian(const ModelParams& params, const MatrixModel& model);

/// The derivative generator dH/dJ or dH/dB as a dense Hermitian matrix.
/// Spin models: sum X_i X_{i+1} (open: N-1 terms, cyclic: N) and sum Z_i.
/// Fermion-cyclic: the JW-assembled quadratic forms, with the B generator
/// taken in its traceless form sum_j (2 a_j^+ a_j - 1) so its first moment
/// on symmetric superpositions vanishes.
ComplexMatrix build_generator(Target which, const MatrixModel& model);

/// The integrated generator O_i = Integral_0^t U(s) H_i U^+(s) ds with
/// U(s) = exp(-i s H), evaluated exactly through the eigendecomposition
/// H = V E V^+: in the eigenbasis, entry (m, n) of V^+ H_i V is multiplied by
///   t                                    if |E_m - E_n| <= eps_E
///   (exp(-i t (E_m - E_n)) - 1) / (-i (E_m - E_n))   otherwise
/// with eps_E = 1e-9 * max(1, spectral radius). Carries the eigendecomposition
/// so states can be evolved without re-diagonalizing.
struct IntegratedGenerator {
    ComplexMatrix matrix;
    Target which = Target::J;
    MatrixModel model;
    ModelParams params;
    Eigen::VectorXd energies;   // eigenvalues of H
    ComplexMatrix eigenvectors; // columns = eigenvectors of H

    /// U(t)|psi> through the stored eigendecomposition.
    StateVector evolve(const StateVector& psi) const;
};
IntegratedGenerator integrated_generator(const ModelParams& params, Target which,
                                         const MatrixModel& model);

// State constructors (unit norm, site 1 = MSB).
StateVector make_ghz(int N);
/// (|00...0> + |0101...01>)/sqrt(2); requires even N.
StateVector make_staggered_ghz(int N);
/// Product of cos(theta_i/2)|0> + e^{i phi_i} sin(theta_i/2)|1>.
StateVector make_product_state(const std::vector<double>& thetas,
                               const std::vector<double>& phis);
/// Computational basis state from the bit string (site 1 = MSB).
StateVector make_basis_string(int N, std::uint64_t bits);

/// Variance of gen on the evolved input state U(t)|state>, with the derived
/// QFI and precision bound. The state must be normalized.
VarianceResult variance_of(const StateVector& state, const IntegratedGenerator& gen,
                           double nu = 1.0);

/// First moment <U psi| O |U psi> on the evolved input state.
double expectation_of(const StateVector& state, const IntegratedGenerator& gen);

/// Pure-state QFI by central finite differences of the evolution itself:
///   |d psi> ~ (U(lambda+eps)|psi> - U(lambda-eps)|psi>) / (2 eps)
///   qfi = 4 (<d psi|d psi> - |<d psi|psi_lambda>|^2)
/// Entirely independent of the integrated-generator path.
/// cancellation_warning is set when eps < 1e-12.
struct QfiEstimate {
    double value = 0.0;
    bool cancellation_warning = false;
};
QfiEstimate qfi_finite_difference(const ModelParams& params, Target which,
                                  const MatrixModel& model, const StateVector& state,
                                  double epsilon);

/// U^+(t) O U(t) cached once so that variances of many input states cost one
/// matrix-vector product each. Immutable after construction, safe to share
/// across threads.
class EvolvedGenerator {
  public:
    EvolvedGenerator(const ModelParams& params, Target which, const MatrixModel& model);

    double variance(const StateVector& state) const;
    double mean(const StateVector& state) const;
    const ComplexMatrix& matrix() const { return conjugated_; }
    const ModelParams& params() const { return params_; }

  private:
    ComplexMatrix conjugated_;
    ModelParams params_;
};

}  // namespace ising_qfi
