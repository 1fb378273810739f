#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ising_qfi {

enum class VerifyLevel { Fast, Full };

/// Outcome of one cross-module invariant suite. `max_deviation` is reported
/// in the natural scale of the check (relative where the tolerance is
/// relative). Informational checks carry `gating = false` and never fail.
struct CheckResult {
    std::string name;
    bool passed = true;
    bool gating = true;
    double max_deviation = 0.0;
    double tolerance = 0.0;
    std::string detail;
};

/// Runs the cross-module invariant suites:
///   - canonical anticommutation relations of the JW matrices
///   - Hermiticity of every built Hamiltonian and generator
///   - fermion-cyclic spectrum vs the free-fermion multiset {const + sum 2 n_k w_k}
///   - spectral gap of O_i vs twice the closed-form singular-value sum
///   - GHZ variance and first moment vs the closed form
///   - two-path QFI agreement (finite differences vs 4*variance)
///   - block coefficients vs the independent eigenvalue identity
///   - degenerate-mode guard: continuity along B -> -J and distinguishability
///     of the guarded limit from the generic formula
///   - (tracked only) periodic-spin vs fermion-cyclic GHZ boundary deviation
/// Fast keeps N <= 6, Full extends the matrix checks to N = 8.
/// When `progress` is non-null each finished check is printed to it.
std::vector<CheckResult> run_verification(VerifyLevel level, std::ostream* progress = nullptr);

/// True when every gating check passed.
bool all_passed(const std::vector<CheckResult>& results);

}  // namespace ising_qfi
