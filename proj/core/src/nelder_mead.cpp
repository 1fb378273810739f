#include "ising_qfi/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ising_qfi {

namespace {

double vertex_distance(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(s);
}

}  // namespace

SimplexResult minimize_simplex(const std::function<double(const std::vector<double>&)>& f,
                               std::vector<double> x0, const SimplexOptions& opts) {
    const size_t n = x0.size();
    if (n == 0) throw std::domain_error("minimize_simplex: empty start point");
    const int max_iter = opts.max_iterations > 0 ? opts.max_iterations
                                                 : 400 * static_cast<int>(n);

    std::vector<std::vector<double>> verts(n + 1, x0);
    for (size_t i = 0; i < n; ++i) verts[i + 1][i] += opts.initial_step;

    SimplexResult res;
    std::vector<double> fv(n + 1);
    for (size_t i = 0; i <= n; ++i) fv[i] = f(verts[i]);
    res.evaluations = static_cast<int>(n) + 1;

    std::vector<size_t> order(n + 1);
    std::vector<double> centroid(n), trial(n), trial2(n);

    for (res.iterations = 0; res.iterations < max_iter; ++res.iterations) {
        std::iota(order.begin(), order.end(), size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](size_t a, size_t b) { return fv[a] < fv[b]; });
        const size_t best = order[0], worst = order[n], second_worst = order[n - 1];

        double diameter = 0.0;
        for (size_t i = 1; i <= n; ++i)
            diameter = std::max(diameter, vertex_distance(verts[order[0]], verts[order[i]]));
        if (diameter < opts.diameter_tol ||
            std::abs(fv[worst] - fv[best]) < opts.value_tol * (1.0 + std::abs(fv[best]))) {
            res.converged = true;
            break;
        }

        for (size_t i = 0; i < n; ++i) {
            double s = 0.0;
            for (size_t v = 0; v <= n; ++v)
                if (v != worst) s += verts[v][i];
            centroid[i] = s / static_cast<double>(n);
        }

        auto blend = [&](std::vector<double>& out, double coef) {
            for (size_t i = 0; i < n; ++i)
                out[i] = centroid[i] + coef * (centroid[i] - verts[worst][i]);
        };

        blend(trial, 1.0);  // reflection
        const double fr = f(trial);
        ++res.evaluations;

        if (fr < fv[best]) {
            blend(trial2, 2.0);  // expansion
            const double fe = f(trial2);
            ++res.evaluations;
            if (fe < fr) {
                verts[worst] = trial2;
                fv[worst] = fe;
            } else {
                verts[worst] = trial;
                fv[worst] = fr;
            }
        } else if (fr < fv[second_worst]) {
            verts[worst] = trial;
            fv[worst] = fr;
        } else {
            const bool outside = fr < fv[worst];
            blend(trial2, outside ? 0.5 : -0.5);  // contraction
            const double fc = f(trial2);
            ++res.evaluations;
            if (fc < (outside ? fr : fv[worst])) {
                verts[worst] = trial2;
                fv[worst] = fc;
            } else {
                // shrink toward the best vertex
                for (size_t v = 0; v <= n; ++v) {
                    if (v == best) continue;
                    for (size_t i = 0; i < n; ++i)
                        verts[v][i] = verts[best][i] + 0.5 * (verts[v][i] - verts[best][i]);
                    fv[v] = f(verts[v]);
                    ++res.evaluations;
                }
            }
        }
    }

    size_t arg = 0;
    for (size_t i = 1; i <= n; ++i)
        if (fv[i] < fv[arg]) arg = i;
    res.x = verts[arg];
    res.value = fv[arg];
    return res;
}

}  // namespace ising_qfi
