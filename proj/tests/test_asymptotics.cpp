#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ising_qfi/asymptotics.hpp"

using namespace ising_qfi;

namespace {

// Independent oracle for F: the integral has the closed form
//   (1/2pi) Int (1+g cos)^2/(1+g^2+2g cos) = 1 - g^2/2  (g <= 1),  1/2  (g >= 1)
// so F(g) = (1 - g^2/2)^2 below the transition and 1/4 above it.
double f_closed(double g) {
    if (g >= 1.0) return 0.25;
    const double m = 1.0 - 0.5 * g * g;
    return m * m;
}

}  // namespace

TEST_CASE("g_optimal analytic points") {
    CHECK(g_optimal(0.0) == 1.0);
    CHECK(std::abs(g_optimal(1.0) - 4.0 / (std::numbers::pi * std::numbers::pi)) < 1e-10);
    // high-precision quadrature reference values
    CHECK(g_optimal(0.25) == doctest::Approx(0.96862396528936608).epsilon(1e-11));
    CHECK(g_optimal(0.5) == doctest::Approx(0.87275852134525918).epsilon(1e-11));
    CHECK(g_optimal(0.9) == doctest::Approx(0.55640486799879824).epsilon(1e-11));
    // the curve is exactly flat at 4/pi^2 above the transition
    for (double g : {1.1, 2.0, 5.0, 1000.0})
        CHECK(g_optimal(g) == doctest::Approx(g_optimal_large_ratio_limit()).epsilon(1e-10));
}

TEST_CASE("g_optimal bounds and domain errors") {
    const double floor = g_optimal_large_ratio_limit();
    for (double g : {0.0, 0.1, 0.5, 0.77, 0.99, 1.0, 1.3, 4.0, 50.0}) {
        const double v = g_optimal(g);
        CHECK(v >= floor - 1e-12);
        CHECK(v <= 1.0 + 1e-12);
        if (g > 0.0) CHECK(v < 1.0);
    }
    CHECK_THROWS_AS(g_optimal(-0.1), std::domain_error);
    CHECK_THROWS_AS(g_optimal(std::nan("")), std::domain_error);
    CHECK_THROWS_AS(g_optimal(std::numeric_limits<double>::infinity()), std::domain_error);
}

TEST_CASE("f_ghz matches its closed form and the Jensen ordering") {
    for (double g : {0.0, 0.2, 0.5, 0.7, 0.9, 1.0, 1.5, 3.0, 10.0}) {
        CHECK(f_ghz(g) == doctest::Approx(f_closed(g)).epsilon(1e-10));
        const double G = g_optimal(g);
        const double F = f_ghz(g);
        CHECK(F >= G * G - 1e-9);  // mean of square >= square of mean
        CHECK(F <= G + 1e-9);      // integrand <= 1 pushes F below G
    }
    CHECK(f_ghz(1.0) == doctest::Approx(0.25).epsilon(1e-10));
    CHECK(f_ghz(1.0) < g_optimal(1.0));
}

TEST_CASE("quadrature self-consistency under tolerance halving") {
    for (double g : {0.0, 0.25, 0.5, 0.9, 1.0, 1.1, 2.0, 5.0}) {
        const double coarse = g_optimal(g, 1e-10);
        const double fine = g_optimal(g, 5e-11);
        CHECK(std::abs(coarse - fine) < 1e-10);
    }
}

TEST_CASE("continuity across g = 1") {
    CHECK(std::abs(g_optimal(1.0 - 1e-6) - g_optimal(1.0 + 1e-6)) <= 1e-5);
}

TEST_CASE("kink_detect: slope jump at the transition, smooth elsewhere") {
    const double h = 1e-4;
    const SlopePair at1 = kink_detect(PrefactorKind::OptimalG, 1.0, h);
    // quadrature oracle: left slope -4.1715, right slope 0
    CHECK(std::abs(at1.right - at1.left) > 3.5);

    const SlopePair at_half = kink_detect(PrefactorKind::OptimalG, 0.5, h);
    CHECK(std::abs(at_half.right - at_half.left) <= 10.0 * h);

    const SlopePair f1 = kink_detect(PrefactorKind::GhzF, 1.0, h);
    CHECK(std::abs(f1.right - f1.left) > 0.9);  // oracle: jump of 1
    // same sign of the discontinuity as for G
    CHECK((f1.right - f1.left) * (at1.right - at1.left) > 0.0);

    CHECK_THROWS_AS(kink_detect(PrefactorKind::OptimalG, 1e-5, 1e-4), std::domain_error);
    CHECK_THROWS_AS(kink_detect(PrefactorKind::OptimalG, 1.0, 0.0), std::domain_error);
}

TEST_CASE("asymptotic_check collapses and duality") {
    // B = 0: max variance is exactly N^2 t^2 and G(0) = 1
    CHECK(std::abs(asymptotic_check(ModelParams{64, 1.0, 0.0, 5.0}, Target::J)) < 1e-12);
    // t = 0 returns -G(ratio) exactly
    CHECK(asymptotic_check(ModelParams{8, 1.0, 0.0, 0.0}, Target::J) == -1.0);
    // dual parameter sets share the code path bit for bit
    const double a = asymptotic_check(ModelParams{32, 0.7, 1.3, 9.0}, Target::J);
    const double b = asymptotic_check(ModelParams{32, 1.3, 0.7, 9.0}, Target::B);
    CHECK(a == b);
    // J = 0 for Target::J resolves to the large-ratio limit
    const double r = asymptotic_check(ModelParams{128, 0.0, 1.0, 50.0}, Target::J);
    CHECK(std::isfinite(r));
}

TEST_CASE("sample_prefactor_curve sorts and stays in (0, 1]") {
    const PrefactorCurve c =
        sample_prefactor_curve(PrefactorKind::OptimalG, {2.0, 0.0, 0.5, 1.0});
    REQUIRE(c.grid.size() == 4);
    CHECK(c.grid.front().first == 0.0);
    CHECK(c.grid.back().first == 2.0);
    for (size_t i = 1; i < c.grid.size(); ++i) CHECK(c.grid[i - 1].first <= c.grid[i].first);
    for (auto [g, v] : c.grid) {
        CHECK(v > 0.0);
        CHECK(v <= 1.0);
    }
}
