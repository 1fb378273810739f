#include "ising_qfi/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ising_qfi/fermion_core.hpp"
#include "ising_qfi/quadrature.hpp"

namespace ising_qfi {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_ratio(double g) {
    if (!std::isfinite(g) || g < 0.0)
        throw std::domain_error("prefactor: ratio g must be finite and >= 0");
}

// Integrate f over [0, 2pi] split at the given interior points (ascending),
// sharing abs_tol across the pieces.
template <class F>
double integrate_split(const F& f, const std::vector<double>& interior, double abs_tol) {
    std::vector<double> pts{0.0};
    for (double x : interior)
        if (x > pts.back() && x < kTwoPi) pts.push_back(x);
    pts.push_back(kTwoPi);
    const double piece_tol = abs_tol / static_cast<double>(pts.size() - 1);
    double total = 0.0;
    for (size_t i = 0; i + 1 < pts.size(); ++i)
        total += integrate_adaptive(f, pts[i], pts[i + 1], piece_tol).value;
    return total;
}

}  // namespace

double g_optimal_large_ratio_limit() {
    return 4.0 / (std::numbers::pi * std::numbers::pi);
}

double g_optimal(double g, double quadrature_tol) {
    check_ratio(g);
    if (g == 0.0) return 1.0;  // integrand is identically 1

    double integral = 0.0;
    if (g == 1.0) {
        // The integrand collapses to |cos(x/2)|; only the |.| kink at pi remains.
        auto f = [](double x) { return std::abs(std::cos(0.5 * x)); };
        integral = integrate_split(f, {std::numbers::pi}, quadrature_tol);
    } else {
        auto f = [g](double x) {
            const double c = std::cos(x);
            const double num = 1.0 + g * c;
            const double den = 1.0 + g * g + 2.0 * g * c;
            if (den <= 1e-30) return std::abs(std::cos(0.5 * x));  // removable point near g = 1
            return std::abs(num) / std::sqrt(den);
        };
        // |1 + g cos x| has interior kinks for g > 1.
        std::vector<double> kinks;
        if (g > 1.0) {
            const double xs = std::acos(-1.0 / g);
            kinks = {xs, kTwoPi - xs};
        }
        integral = integrate_split(f, kinks, quadrature_tol);
    }
    const double mean = integral / kTwoPi;
    return mean * mean;
}

double f_ghz(double g, double quadrature_tol) {
    check_ratio(g);
    if (g == 0.0) return 1.0;

    double integral = 0.0;
    if (g == 1.0) {
        auto f = [](double x) { return 0.5 * (1.0 + std::cos(x)); };
        integral = integrate_split(f, {}, quadrature_tol);
    } else {
        auto f = [g](double x) {
            const double c = std::cos(x);
            const double num = 1.0 + g * c;
            const double den = 1.0 + g * g + 2.0 * g * c;
            if (den <= 1e-30) return 0.5 * (1.0 + std::cos(x));
            return num * num / den;
        };
        integral = integrate_split(f, {}, quadrature_tol);
    }
    const double mean = integral / kTwoPi;
    return mean * mean;
}

SlopePair kink_detect(PrefactorKind which, double g0, double h, double quadrature_tol) {
    if (!(g0 > h && h > 0.0)) throw std::domain_error("kink_detect: need g0 > h > 0");
    auto curve = [&](double g) {
        return which == PrefactorKind::OptimalG ? g_optimal(g, quadrature_tol)
                                                : f_ghz(g, quadrature_tol);
    };
    const double center = curve(g0);
    SlopePair s;
    s.left = (center - curve(g0 - h)) / h;
    s.right = (curve(g0 + h) - center) / h;
    return s;
}

double asymptotic_check(const ModelParams& params, Target which, double quadrature_tol) {
    params.validate();
    // Route Target::B through the J path with swapped couplings; the dual
    // parameter sets then run identical arithmetic.
    const ModelParams p = which == Target::J ? params : params.swapped();

    double limit;
    if (p.J == 0.0 && p.B == 0.0) {
        limit = 1.0;  // both generators collapse to t*M_k, ratio behaves as g = 0
    } else if (p.J == 0.0) {
        limit = g_optimal_large_ratio_limit();
    } else {
        limit = g_optimal(std::abs(p.B / p.J), quadrature_tol);
    }

    double scaled = 0.0;
    if (p.t > 0.0) {
        const double denom = static_cast<double>(p.N) * p.N * p.t * p.t;
        scaled = max_variance(p, Target::J).variance / denom;
    }
    return scaled - limit;
}

PrefactorCurve sample_prefactor_curve(PrefactorKind which, std::vector<double> gs,
                                      double quadrature_tol) {
    std::sort(gs.begin(), gs.end());
    PrefactorCurve curve;
    curve.which = which;
    curve.quadrature_tol = quadrature_tol;
    curve.grid.reserve(gs.size());
    for (double g : gs) {
        const double v =
            which == PrefactorKind::OptimalG ? g_optimal(g, quadrature_tol) : f_ghz(g, quadrature_tol);
        curve.grid.emplace_back(g, v);
    }
    return curve;
}

}  // namespace ising_qfi
