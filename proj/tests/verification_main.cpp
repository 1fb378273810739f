// Runs the cross-module invariant suites as a ctest entry.
#include <cstring>
#include <iostream>

#include "ising_qfi/verification.hpp"

int main(int argc, char** argv) {
    const bool full = argc > 1 && std::strcmp(argv[1], "full") == 0;
    const auto results = ising_qfi::run_verification(
        full ? ising_qfi::VerifyLevel::Full : ising_qfi::VerifyLevel::Fast, &std::cout);
    return ising_qfi::all_passed(results) ? 0 : 1;
}
