#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ising_qfi/fermion_core.hpp"

using namespace ising_qfi;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("mode_params reproduces hand-evaluated coefficients") {
    SUBCASE("J=1 B=0 N=4 k=1") {
        const MomentumMode m = mode_params(ModelParams{4, 1.0, 0.0, 1.0}, 1);
        CHECK(m.alpha == doctest::Approx(0.0).epsilon(1e-15));
        CHECK(m.beta == doctest::Approx(1.0));
        CHECK(m.omega == doctest::Approx(1.0));
    }
    SUBCASE("J=0 B=1 N=8 k=3: field only kills beta") {
        const MomentumMode m = mode_params(ModelParams{8, 0.0, 1.0, 1.0}, 3);
        CHECK(m.alpha == doctest::Approx(1.0));
        CHECK(m.beta == doctest::Approx(0.0));
        CHECK(m.omega == doctest::Approx(1.0));
        CHECK(m.theta == doctest::Approx(0.0));
    }
    SUBCASE("J=1 B=1 N=6 k=2") {
        const MomentumMode m = mode_params(ModelParams{6, 1.0, 1.0, 1.0}, 2);
        CHECK(m.alpha == doctest::Approx(0.5));
        CHECK(m.beta == doctest::Approx(std::sqrt(3.0) / 2.0));
        CHECK(m.omega == doctest::Approx(1.0));
    }
}

TEST_CASE("mode invariants across a parameter grid") {
    for (double J : {0.0, 1.0, -0.4, 2.3}) {
        for (double B : {0.0, 1.0, 0.7, -1.1}) {
            for (int N : {2, 5, 6, 9}) {
                const ModelParams p{N, J, B, 0.3};
                for (int k = 0; k < N; ++k) {
                    const MomentumMode m = mode_params(p, k);
                    CHECK(m.omega * m.omega ==
                          doctest::Approx(m.alpha * m.alpha + m.beta * m.beta).epsilon(1e-14));
                }
                CHECK(mode_params(p, 0).beta == 0.0);
                if (N % 2 == 0) CHECK(std::abs(mode_params(p, N / 2).beta) < 1e-15);
            }
        }
    }
}

TEST_CASE("mode_params rejects out-of-range k and bad params") {
    CHECK_THROWS_AS(mode_params(ModelParams{4, 1, 1, 1}, -1), std::domain_error);
    CHECK_THROWS_AS(mode_params(ModelParams{4, 1, 1, 1}, 4), std::domain_error);
    CHECK_THROWS_AS(mode_params(ModelParams{1, 1, 1, 1}, 0), std::domain_error);
    CHECK_THROWS_AS(mode_params(ModelParams{4, 1, 1, -0.5}, 0), std::domain_error);
}

TEST_CASE("generator_block limits") {
    SUBCASE("B=0: J block is t*M_k with unit singular value") {
        const ModelParams p{6, 1.0, 0.0, 2.5};
        for (int k = 0; k < p.N; ++k) {
            const GeneratorBlock blk = generator_block(p, k, Target::J);
            const double phi = 2.0 * kPi * k / p.N;
            CHECK(blk.diag == doctest::Approx(p.t * std::cos(phi)).epsilon(1e-13));
            CHECK(blk.offdiag.real() == doctest::Approx(0.0).epsilon(1e-13));
            CHECK(blk.offdiag.imag() == doctest::Approx(p.t * std::sin(phi)).epsilon(1e-13));
            CHECK(blk.singular_value() == doctest::Approx(p.t).epsilon(1e-13));
        }
    }
    SUBCASE("J=0: B block is (t, 0)") {
        const ModelParams p{5, 0.0, 1.3, 4.0};
        for (int k = 0; k < p.N; ++k) {
            const GeneratorBlock blk = generator_block(p, k, Target::B);
            CHECK(blk.diag == doctest::Approx(p.t).epsilon(1e-13));
            CHECK(std::abs(blk.offdiag) < 1e-13);
        }
    }
    SUBCASE("t=0 gives the zero block") {
        const ModelParams p{4, 0.8, -0.3, 0.0};
        for (auto which : {Target::J, Target::B}) {
            const GeneratorBlock blk = generator_block(p, 1, which);
            CHECK(blk.diag == 0.0);
            CHECK(std::abs(blk.offdiag) == 0.0);
        }
    }
}

TEST_CASE("generator_spectrum collapses in the single-coupling limits") {
    const GeneratorSpectrum sj = generator_spectrum(ModelParams{5, 1.0, 0.0, 2.0}, Target::J);
    REQUIRE(sj.values.size() == 5);
    for (double v : sj.values) CHECK(v == doctest::Approx(2.0).epsilon(1e-13));

    const GeneratorSpectrum sb = generator_spectrum(ModelParams{3, 0.0, 1.0, 7.0}, Target::B);
    for (double v : sb.values) CHECK(v == doctest::Approx(7.0).epsilon(1e-13));

    const GeneratorSpectrum zero = generator_spectrum(ModelParams{6, 1.0, 0.4, 0.0}, Target::J);
    for (double v : zero.values) CHECK(v == 0.0);
}

TEST_CASE("spectrum sum grows with t when the estimated coupling is on") {
    const std::vector<double> times{1.0, 2.0, 4.0, 8.0};
    double prev = 0.0;
    for (double t : times) {
        const double sum = generator_spectrum(ModelParams{6, 1.0, 0.7, t}, Target::J).sum();
        CHECK(sum > prev);
        prev = sum;
    }
}

TEST_CASE("eigenvalue_identity: independent path agrees with the blocks") {
    for (double J : {1.0, 0.7, 2.0}) {
        for (double B : {0.0, 0.5, 1.3, -1.0}) {
            for (double t : {0.0, 0.7, 3.1, 20.0}) {
                const ModelParams p{7, J, B, t};
                for (auto which : {Target::J, Target::B}) {
                    for (int k = 0; k < p.N; ++k) {
                        if (mode_params(p, k).omega < degeneracy_guard(p)) continue;
                        const GeneratorBlock blk = generator_block(p, k, which);
                        const double lhs = blk.diag * blk.diag + std::norm(blk.offdiag);
                        CHECK(std::abs(lhs - eigenvalue_identity(p, k, which)) <=
                              1e-12 * std::max(1.0, t * t));
                    }
                }
            }
        }
    }
}

TEST_CASE("eigenvalue_identity closed values and degenerate rejection") {
    // B=0 J-target and J=0 B-target both collapse to t^2
    CHECK(eigenvalue_identity(ModelParams{6, 1.0, 0.0, 3.0}, 2, Target::J) ==
          doctest::Approx(9.0).epsilon(1e-13));
    CHECK(eigenvalue_identity(ModelParams{6, 0.0, 1.0, 3.0}, 2, Target::B) ==
          doctest::Approx(9.0).epsilon(1e-13));
    CHECK(eigenvalue_identity(ModelParams{6, 1.0, 0.5, 0.0}, 1, Target::J) == 0.0);
    // J = -B makes mode k = 0 degenerate
    CHECK_THROWS_AS(eigenvalue_identity(ModelParams{6, 1.0, -1.0, 1.0}, 0, Target::J),
                    std::domain_error);
}

TEST_CASE("degenerate-limit continuity along B -> -J at k=0") {
    const double t = 3.1;
    for (int j = 2; j <= 8; ++j) {
        const ModelParams p{6, 1.0, -1.0 + std::pow(10.0, -j), t};
        const GeneratorBlock blk = generator_block(p, 0, Target::J);
        CHECK(std::abs(blk.diag - t) <= 1e-10 * t);
        CHECK(std::abs(blk.offdiag) <= 1e-10 * t);
    }
}

TEST_CASE("max_variance: exact N^2 t^2 collapse and derived quantities") {
    const VarianceResult vj = max_variance(ModelParams{4, 1.0, 0.0, 3.0}, Target::J);
    CHECK(vj.variance == doctest::Approx(144.0).epsilon(1e-13));
    CHECK(vj.qfi == doctest::Approx(4.0 * vj.variance));
    CHECK(vj.precision_bound * std::sqrt(vj.qfi) == doctest::Approx(1.0));

    const VarianceResult vb = max_variance(ModelParams{6, 0.0, 1.0, 2.0}, Target::B);
    CHECK(vb.variance == doctest::Approx(144.0).epsilon(1e-13));

    const VarianceResult zero = max_variance(ModelParams{6, 1.0, 1.0, 0.0}, Target::J);
    CHECK(zero.variance == 0.0);
    CHECK(std::isinf(zero.precision_bound));

    const VarianceResult nu4 = max_variance(ModelParams{4, 1.0, 0.0, 3.0}, Target::J, 4.0);
    CHECK(nu4.precision_bound == doctest::Approx(0.5 * vj.precision_bound));
}

TEST_CASE("max_variance(t)/t^2 settles as t grows") {
    const ModelParams base{8, 1.0, 0.6, 0.0};
    auto scaled = [&](double t) {
        ModelParams p = base;
        p.t = t;
        return max_variance(p, Target::J).variance / (t * t);
    };
    const double d1 = std::abs(scaled(200.0) - scaled(100.0));
    const double d2 = std::abs(scaled(1600.0) - scaled(800.0));
    CHECK(d2 < d1);
    CHECK(d2 < 1e-3);
}

TEST_CASE("ghz_variance_b closed values") {
    CHECK(ghz_variance_b(ModelParams{5, 0.0, 1.0, 2.0}).variance ==
          doctest::Approx(100.0).epsilon(1e-13));
    CHECK(ghz_variance_b(ModelParams{4, 1.0, 1.0, 0.0}).variance == 0.0);
    // frozen from the 2^N matrix oracle (kernel and Riemann routes agree)
    CHECK(ghz_variance_b(ModelParams{4, 1.0, 1.0, 20.0}).variance ==
          doctest::Approx(4000.562092980272).epsilon(1e-12));
}

TEST_CASE("staggered_variance_j is the J<->B swap of the GHZ form") {
    CHECK(staggered_variance_j(ModelParams{6, 1.0, 0.0, 2.0}).variance ==
          doctest::Approx(144.0).epsilon(1e-13));
    CHECK(staggered_variance_j(ModelParams{4, 0.7, 1.1, 0.0}).variance == 0.0);
    const ModelParams p{8, 1.0, 1.0, 20.0};
    CHECK(staggered_variance_j(p).variance == ghz_variance_b(p.swapped()).variance);
}
