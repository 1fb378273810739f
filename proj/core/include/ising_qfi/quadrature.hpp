#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace ising_qfi {

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int intervals = 0;
    bool converged = false;
};

/// Adaptive Gauss-Kronrod 7-15 integration of f over [a, b] to absolute
/// tolerance abs_tol. Interval-local error is the |G7 - K15| difference;
/// intervals above their tolerance share are bisected, worst first.
template <class Func>
QuadratureResult integrate_adaptive(const Func& f, double a, double b, double abs_tol,
                                    int max_intervals = 100000) {
    // Kronrod-15 abscissae (non-negative half) with Kronrod and Gauss-7 weights.
    static const double xk[8] = {
        0.0000000000000000, 0.2077849550078985, 0.4058451513773972, 0.5860872354676911,
        0.7415311855993945, 0.8648644233597691, 0.9491079123427585, 0.9914553711208126};
    static const double wk[8] = {
        0.2094821410847278, 0.2044329400752989, 0.1903505780647854, 0.1690047266392679,
        0.1406532597155259, 0.1047900103222502, 0.0630920926299786, 0.0229353220105292};
    static const double wg[4] = {
        0.4179591836734694, 0.3818300505051189, 0.2797053914892767, 0.1294849661688697};

    struct Interval {
        double a, b, value, error;
    };

    auto gk15 = [&f](double lo, double hi) {
        const double mid = 0.5 * (lo + hi);
        const double half = 0.5 * (hi - lo);
        const double f0 = f(mid);
        double k = wk[0] * f0;
        double g = wg[0] * f0;
        for (int i = 1; i < 8; ++i) {
            const double dx = half * xk[i];
            const double fsum = f(mid - dx) + f(mid + dx);
            k += wk[i] * fsum;
            if (i % 2 == 0) g += wg[i / 2] * fsum;
        }
        Interval iv{lo, hi, k * half, 0.0};
        iv.error = std::abs((k - g) * half);
        return iv;
    };

    std::vector<Interval> heap;
    heap.push_back(gk15(a, b));
    double total = heap[0].value;
    double err = heap[0].error;

    QuadratureResult res;
    while (err > abs_tol && static_cast<int>(heap.size()) < max_intervals) {
        // split the interval with the largest error estimate
        size_t worst = 0;
        for (size_t i = 1; i < heap.size(); ++i)
            if (heap[i].error > heap[worst].error) worst = i;
        const Interval iv = heap[worst];
        const double mid = 0.5 * (iv.a + iv.b);
        if (mid <= iv.a || mid >= iv.b) break;  // interval at floating-point resolution
        Interval left = gk15(iv.a, mid);
        Interval right = gk15(mid, iv.b);
        total += left.value + right.value - iv.value;
        err += left.error + right.error - iv.error;
        heap[worst] = left;
        heap.push_back(right);
    }

    res.value = total;
    res.error_estimate = err;
    res.intervals = static_cast<int>(heap.size());
    res.converged = err <= abs_tol;
    return res;
}

}  // namespace ising_qfi
