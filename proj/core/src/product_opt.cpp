#include "ising_qfi/product_opt.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <thread>

#include "ising_qfi/nelder_mead.hpp"
#include "ising_qfi/rng.hpp"

namespace ising_qfi {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_phi(double phi) {
    double w = std::fmod(phi, kTwoPi);
    if (w < 0.0) w += kTwoPi;
    return w == kTwoPi ? 0.0 : w;
}

}  // namespace

ProductStateAngles ProductStateAngles::wrapped(std::vector<double> thetas,
                                               std::vector<double> phis) {
    if (thetas.size() != phis.size() || thetas.empty())
        throw std::domain_error("ProductStateAngles: need matching theta/phi lists");
    for (size_t i = 0; i < thetas.size(); ++i) {
        // theta -> [0, pi]; a negative sin(theta) flips the azimuth by pi
        const double c = std::cos(thetas[i]);
        const double s = std::sin(thetas[i]);
        thetas[i] = std::acos(std::clamp(c, -1.0, 1.0));
        if (s < 0.0) phis[i] += std::numbers::pi;
        phis[i] = wrap_phi(phis[i]);
    }
    ProductStateAngles out;
    out.thetas = std::move(thetas);
    out.phis = std::move(phis);
    return out;
}

double product_variance(const ProductStateAngles& angles, const ModelParams& params,
                        Target which, ModelKind model) {
    const EvolvedGenerator gen(params, which, MatrixModel{model, params.N});
    return product_variance(angles, gen);
}

double product_variance(const ProductStateAngles& angles, const EvolvedGenerator& gen) {
    if (angles.sites() != gen.params().N)
        throw std::domain_error("product_variance: angle count does not match N");
    return gen.variance(angles.state());
}

OptRun optimize(const OptRunConfig& config) {
    config.params.validate();
    if (config.restarts < 1) throw std::domain_error("optimize: restarts must be >= 1");
    const int N = config.params.N;

    const EvolvedGenerator gen(config.params, config.which,
                               MatrixModel{config.model, N});

    auto objective = [&gen, N](const std::vector<double>& x) {
        const std::vector<double> thetas(x.begin(), x.begin() + N);
        const std::vector<double> phis(x.begin() + N, x.end());
        return -gen.variance(make_product_state(thetas, phis));
    };

    SimplexOptions opts;
    opts.diameter_tol = config.diameter_tol;
    opts.max_iterations = config.max_iterations;

    struct RestartOutcome {
        RestartRecord record;
        std::vector<double> x;
    };
    std::vector<RestartOutcome> outcomes(config.restarts);

    auto run_restart = [&](int r) {
        SplitMix64 stream = restart_stream(config.seed, static_cast<std::uint64_t>(r));
        std::vector<double> x0(2 * N);
        for (int i = 0; i < N; ++i) x0[i] = stream.next_double() * std::numbers::pi;
        for (int i = 0; i < N; ++i) x0[N + i] = stream.next_double() * kTwoPi;
        const SimplexResult res = minimize_simplex(objective, std::move(x0), opts);
        outcomes[r].record = RestartRecord{r, -res.value, res.converged, res.iterations};
        outcomes[r].x = res.x;
    };

    const int workers = std::max(1, config.workers);
    if (workers == 1 || config.restarts == 1) {
        for (int r = 0; r < config.restarts; ++r) run_restart(r);
    } else {
        std::atomic<int> next{0};
        std::vector<std::thread> pool;
        const int count = std::min(workers, config.restarts);
        pool.reserve(count);
        for (int w = 0; w < count; ++w) {
            pool.emplace_back([&] {
                for (int r = next.fetch_add(1); r < config.restarts; r = next.fetch_add(1))
                    run_restart(r);
            });
        }
        for (auto& th : pool) th.join();
    }

    OptRun run;
    run.config = config;
    run.per_restart.reserve(config.restarts);
    int best = 0;
    for (int r = 0; r < config.restarts; ++r) {
        run.per_restart.push_back(outcomes[r].record);
        if (outcomes[r].record.variance > outcomes[best].record.variance) best = r;
    }
    run.best_variance = outcomes[best].record.variance;
    run.best_angles = ProductStateAngles::wrapped(
        std::vector<double>(outcomes[best].x.begin(), outcomes[best].x.begin() + N),
        std::vector<double>(outcomes[best].x.begin() + N, outcomes[best].x.end()));
    return run;
}

namespace {

struct LmState {
    double a, b, c;
};

double lm_cost(const LmState& p, const std::vector<std::pair<double, double>>& pts,
               std::vector<double>* residuals = nullptr) {
    double cost = 0.0;
    if (residuals) residuals->resize(pts.size());
    for (size_t i = 0; i < pts.size(); ++i) {
        const double r = p.a * std::pow(pts[i].first, p.b) + p.c - pts[i].second;
        if (residuals) (*residuals)[i] = r;
        cost += r * r;
    }
    return cost;
}

FitResult loglog_fallback(const std::vector<std::pair<double, double>>& pts) {
    // linear regression of ln y on ln N over the positive-y points
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (const auto& [N, y] : pts) {
        if (y <= 0.0) continue;
        const double lx = std::log(N), ly = std::log(y);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++n;
    }
    FitResult fit;
    fit.loglog_fallback = true;
    if (n < 2) throw std::domain_error("fit_power_law: too few positive points for fallback");
    const double denom = n * sxx - sx * sx;
    const double slope = (n * sxy - sx * sy) / denom;
    const double intercept = (sy - slope * sx) / n;
    fit.b = slope;
    fit.a = std::exp(intercept);
    fit.c = 0.0;
    double rss = 0.0;
    for (const auto& [N, y] : pts) {
        if (y <= 0.0) continue;
        const double r = std::log(y) - (intercept + slope * std::log(N));
        rss += r * r;
    }
    const double s2 = rss / std::max(1, n - 2);
    fit.stderr_b = std::sqrt(s2 * n / denom);
    const double se_intercept = std::sqrt(s2 * sxx / denom);
    fit.stderr_a = fit.a * se_intercept;
    fit.stderr_c = 0.0;
    fit.residual_sum_of_squares = lm_cost({fit.a, fit.b, fit.c}, pts);
    return fit;
}

}  // namespace

FitResult fit_power_law(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 4) throw std::domain_error("fit_power_law: need at least 4 points");
    std::vector<std::pair<double, double>> pts = points;
    std::sort(pts.begin(), pts.end());
    for (size_t i = 1; i < pts.size(); ++i)
        if (pts[i].first == pts[i - 1].first)
            throw std::domain_error("fit_power_law: N values must be distinct");
    for (const auto& [N, y] : pts)
        if (!(N > 0.0) || !std::isfinite(y))
            throw std::domain_error("fit_power_law: invalid point");

    LmState p;
    p.b = 1.0;
    p.c = 0.0;
    p.a = (pts.back().second - pts.front().second) / (pts.back().first - pts.front().first);
    if (p.a == 0.0 || !std::isfinite(p.a)) p.a = 1.0;

    std::vector<double> resid;
    double cost = lm_cost(p, pts, &resid);
    double lambda = 1e-3;
    const int n = static_cast<int>(pts.size());

    Eigen::Matrix3d jtj;
    Eigen::Vector3d jtr;
    bool singular = false;

    for (int iter = 0; iter < 200; ++iter) {
        jtj.setZero();
        jtr.setZero();
        for (int i = 0; i < n; ++i) {
            const double nb = std::pow(pts[i].first, p.b);
            const Eigen::Vector3d row(nb, p.a * nb * std::log(pts[i].first), 1.0);
            jtj += row * row.transpose();
            jtr += row * resid[i];
        }
        if (!jtj.allFinite() || jtj.determinant() < 1e-300) {
            singular = true;
            break;
        }

        bool accepted = false;
        for (int tries = 0; tries < 12 && !accepted; ++tries) {
            Eigen::Matrix3d damped = jtj;
            for (int d = 0; d < 3; ++d) damped(d, d) *= 1.0 + lambda;
            const Eigen::Vector3d step = damped.ldlt().solve(-jtr);
            if (!step.allFinite()) {
                singular = true;
                break;
            }
            LmState trial{p.a + step(0), p.b + step(1), p.c + step(2)};
            std::vector<double> trial_resid;
            const double trial_cost = lm_cost(trial, pts, &trial_resid);
            if (std::isfinite(trial_cost) && trial_cost <= cost) {
                const double delta = cost - trial_cost;
                p = trial;
                resid = std::move(trial_resid);
                cost = trial_cost;
                lambda = std::max(lambda * 0.3, 1e-12);
                accepted = true;
                if (delta < 1e-14 * (1.0 + cost) || step.norm() < 1e-13) iter = 200;
            } else {
                lambda *= 10.0;
            }
        }
        if (singular || !accepted) {
            if (!accepted && !singular) break;  // stuck at a (local) minimum
            if (singular) break;
        }
    }

    if (singular) return loglog_fallback(pts);

    jtj.setZero();
    for (int i = 0; i < n; ++i) {
        const double nb = std::pow(pts[i].first, p.b);
        const Eigen::Vector3d row(nb, p.a * nb * std::log(pts[i].first), 1.0);
        jtj += row * row.transpose();
    }
    // a rank-deficient Jacobian at the optimum (e.g. a -> 0 on flat data)
    // leaves b unidentified; fall back to the log-log estimate
    Eigen::LDLT<Eigen::Matrix3d> ldlt(jtj);
    if (!jtj.allFinite() || ldlt.rcond() < 1e-14) return loglog_fallback(pts);

    FitResult fit;
    fit.a = p.a;
    fit.b = p.b;
    fit.c = p.c;
    fit.residual_sum_of_squares = cost;

    const double s2 = cost / std::max(1, n - 3);
    const Eigen::Matrix3d cov = jtj.inverse() * s2;
    if (cov.allFinite()) {
        fit.stderr_a = std::sqrt(std::max(0.0, cov(0, 0)));
        fit.stderr_b = std::sqrt(std::max(0.0, cov(1, 1)));
        fit.stderr_c = std::sqrt(std::max(0.0, cov(2, 2)));
    }
    return fit;
}

}  // namespace ising_qfi
