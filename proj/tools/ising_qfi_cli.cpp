// ising-qfi: precision limits for coupling/field estimation on the 1-D
// transverse-field Ising chain.
//
// Subcommands:
//   gfunction     asymptotic prefactor curves G(g), F(g) on a ratio grid
//   maxvar        closed-form maximal variance over an N grid
//   product-scan  multi-start product-state optimization + power-law fit
//   verify        cross-module invariant suites (fast | full)

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "ising_qfi/asymptotics.hpp"
#include "ising_qfi/exact_oracle.hpp"
#include "ising_qfi/fermion_core.hpp"
#include "ising_qfi/product_opt.hpp"
#include "ising_qfi/table_io.hpp"
#include "ising_qfi/verification.hpp"

namespace {

using nlohmann::json;
using namespace ising_qfi;

constexpr int kExitBadGrid = 2;
constexpr int kExitNTooLarge = 3;

struct OutputOptions {
    std::string path;    // empty = stdout
    std::string format;  // "csv" or "json"
};

void add_output_flags(CLI::App* cmd, OutputOptions* out) {
    cmd->add_option("--out", out->path, "output file (default: stdout)");
    cmd->add_option("--format", out->format, "output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->default_val("csv");
}

int write_output(const OutputOptions& opts, const std::string& payload) {
    if (opts.path.empty()) {
        std::cout << payload;
        return 0;
    }
    std::ofstream file(opts.path, std::ios::binary);
    if (!file) {
        std::cerr << "error: cannot open output path '" << opts.path << "'\n";
        return 1;
    }
    file << payload;
    return 0;
}

// Evaluate f(0..n-1) on a small worker pool; results land in index order so
// emitted tables do not depend on the worker count.
template <class F>
void ordered_parallel(int n, int workers, F&& f) {
    workers = std::max(1, std::min(workers, n));
    if (workers == 1) {
        for (int i = 0; i < n; ++i) f(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) f(i);
        });
    for (auto& th : pool) th.join();
}

std::optional<std::pair<int, int>> parse_range(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) return std::nullopt;
    try {
        const int lo = std::stoi(text.substr(0, colon));
        const int hi = std::stoi(text.substr(colon + 1));
        if (lo > hi) return std::nullopt;
        return std::make_pair(lo, hi);
    } catch (...) {
        return std::nullopt;
    }
}

Target parse_target(const std::string& w) { return w == "J" ? Target::J : Target::B; }

ModelKind parse_model(const std::string& m) {
    if (m == "spin-open") return ModelKind::SpinOpen;
    if (m == "spin-periodic") return ModelKind::SpinPeriodic;
    return ModelKind::FermionCyclic;
}

json fit_to_json(const FitResult& fit) {
    return json{{"a", fit.a},
                {"b", fit.b},
                {"c", fit.c},
                {"stderr_a", fit.stderr_a},
                {"stderr_b", fit.stderr_b},
                {"stderr_c", fit.stderr_c},
                {"rss", fit.residual_sum_of_squares},
                {"loglog_fallback", fit.loglog_fallback}};
}

// ---------------------------------------------------------------- gfunction

int run_gfunction(std::vector<double> grid, const std::string& range_spec, int workers,
                  const OutputOptions& out) {
    if (!range_spec.empty()) {
        double lo = 0, hi = 0;
        int count = 0;
        if (std::sscanf(range_spec.c_str(), "%lf:%lf:%d", &lo, &hi, &count) != 3 ||
            count < 2 || hi < lo) {
            std::cerr << "error: --g-range expects LO:HI:COUNT with COUNT >= 2\n";
            return kExitBadGrid;
        }
        for (int i = 0; i < count; ++i)
            grid.push_back(lo + (hi - lo) * i / (count - 1));
    }
    if (grid.empty()) {
        std::cerr << "error: empty g grid (use --g and/or --g-range)\n";
        return kExitBadGrid;
    }
    for (double g : grid)
        if (!std::isfinite(g) || g < 0.0) {
            std::cerr << "error: g values must be finite and >= 0\n";
            return kExitBadGrid;
        }
    std::sort(grid.begin(), grid.end());

    const int n = static_cast<int>(grid.size());
    std::vector<std::pair<double, double>> values(n);
    ordered_parallel(n, workers, [&](int i) {
        values[i] = {g_optimal(grid[i]), f_ghz(grid[i])};
    });

    if (out.format == "json") {
        json rows = json::array();
        for (int i = 0; i < n; ++i)
            rows.push_back({{"g", grid[i]}, {"G", values[i].first}, {"F", values[i].second}});
        return write_output(out, json{{"command", "gfunction"}, {"rows", rows}}.dump(2) + "\n");
    }
    CsvTable table;
    table.header = {"g", "G", "F"};
    for (int i = 0; i < n; ++i)
        table.rows.push_back({grid[i], values[i].first, values[i].second});
    return write_output(out, table.to_csv());
}

// ------------------------------------------------------------------- maxvar

int run_maxvar(const std::string& n_range, int n_single, double J, double B, double t,
               const std::string& which, const OutputOptions& out) {
    std::vector<int> ns;
    if (!n_range.empty()) {
        const auto range = parse_range(n_range);
        if (!range || range->first < 2) {
            std::cerr << "error: --N-range expects LO:HI with LO >= 2\n";
            return kExitBadGrid;
        }
        for (int n = range->first; n <= range->second; ++n) ns.push_back(n);
    } else if (n_single >= 2) {
        ns.push_back(n_single);
    }
    if (ns.empty() || !(t >= 0.0)) {
        std::cerr << "error: need --N >= 2 or --N-range, and t >= 0\n";
        return kExitBadGrid;
    }

    const Target target = parse_target(which);
    CsvTable table;
    table.header = {"N", "variance_over_t2"};
    json rows = json::array();
    for (int n : ns) {
        const double var = max_variance(ModelParams{n, J, B, t}, target).variance;
        const double scaled = t > 0.0 ? var / (t * t) : 0.0;
        table.rows.push_back({static_cast<double>(n), scaled});
        rows.push_back({{"N", n}, {"variance_over_t2", scaled}});
    }
    if (out.format == "json")
        return write_output(out, json{{"command", "maxvar"}, {"rows", rows}}.dump(2) + "\n");
    return write_output(out, table.to_csv());
}

// ------------------------------------------------------------- product-scan

int run_product_scan(const std::string& n_range, double J, double B, double t,
                     const std::string& which, const std::string& model,
                     std::uint64_t seed, int restarts, int workers,
                     const OutputOptions& out) {
    const auto range = parse_range(n_range);
    if (!range || range->first < 2 || restarts < 1) {
        std::cerr << "error: need --N-range LO:HI with LO >= 2 and --restarts >= 1\n";
        return kExitBadGrid;
    }
    if (range->second > max_exact_sites()) {
        std::cerr << "error: N exceeds the dense-oracle limit " << max_exact_sites()
                  << " (override with ISING_QFI_NMAX)\n";
        return kExitNTooLarge;
    }

    std::vector<int> ns;
    for (int n = range->first; n <= range->second; ++n) ns.push_back(n);

    std::vector<OptRun> runs(ns.size());
    for (size_t i = 0; i < ns.size(); ++i) {
        OptRunConfig cfg;
        cfg.params = ModelParams{ns[i], J, B, t};
        cfg.which = parse_target(which);
        cfg.model = parse_model(model);
        cfg.restarts = restarts;
        cfg.seed = seed;
        cfg.workers = workers;
        runs[i] = optimize(cfg);
    }

    std::vector<std::pair<double, double>> points;
    CsvTable table;
    table.header = {"N", "best_variance_over_t2", "restarts_converged"};
    json rows = json::array();
    for (size_t i = 0; i < ns.size(); ++i) {
        const double scaled = t > 0.0 ? runs[i].best_variance / (t * t) : 0.0;
        int converged = 0;
        for (const auto& rec : runs[i].per_restart) converged += rec.converged ? 1 : 0;
        points.emplace_back(ns[i], scaled);
        table.rows.push_back({static_cast<double>(ns[i]), scaled,
                              static_cast<double>(converged)});
        rows.push_back({{"N", ns[i]},
                        {"best_variance_over_t2", scaled},
                        {"restarts_converged", converged}});
    }

    std::optional<FitResult> fit;
    if (points.size() >= 4) fit = fit_power_law(points);

    if (out.format == "json") {
        json doc{{"command", "product-scan"},
                 {"seed", seed},
                 {"restarts", restarts},
                 {"rows", rows}};
        if (fit) doc["fit"] = fit_to_json(*fit);
        return write_output(out, doc.dump(2) + "\n");
    }
    std::string payload = table.to_csv();
    if (fit) payload += "# fit " + fit_to_json(*fit).dump() + "\n";
    return write_output(out, payload);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"precision limits for J/B estimation on the transverse-field Ising chain"};
    app.require_subcommand(1);

    // shared parameter values
    double J = 1.0, B = 1.0, t = 1.0;
    std::string which = "J", model = "spin-open", n_range;
    int n_single = 0, workers = 1, restarts = 64;
    std::uint64_t seed = 1;

    // gfunction
    auto* gcmd = app.add_subcommand("gfunction", "prefactor curves G(g), F(g)");
    std::vector<double> g_values;
    std::string g_range;
    OutputOptions g_out;
    gcmd->add_option("--g", g_values, "ratio values (repeatable)");
    gcmd->add_option("--g-range", g_range, "LO:HI:COUNT linear grid");
    gcmd->add_option("--workers", workers, "worker threads")->default_val(1);
    add_output_flags(gcmd, &g_out);

    // maxvar
    auto* mcmd = app.add_subcommand("maxvar", "closed-form maximal variance / t^2");
    OutputOptions m_out;
    mcmd->add_option("--J", J)->default_val(1.0);
    mcmd->add_option("--B", B)->default_val(1.0);
    mcmd->add_option("--t", t)->default_val(20.0);
    mcmd->add_option("--N", n_single, "single chain size");
    mcmd->add_option("--N-range", n_range, "LO:HI inclusive");
    mcmd->add_option("--which", which)->check(CLI::IsMember({"J", "B"}))->default_val("J");
    add_output_flags(mcmd, &m_out);

    // product-scan
    auto* pcmd = app.add_subcommand("product-scan",
                                    "optimized product-state variance / t^2 and power-law fit");
    OutputOptions p_out;
    pcmd->add_option("--J", J)->default_val(1.0);
    pcmd->add_option("--B", B)->default_val(1.0);
    pcmd->add_option("--t", t)->default_val(20.0);
    pcmd->add_option("--N-range", n_range, "LO:HI inclusive")->required();
    pcmd->add_option("--which", which)->check(CLI::IsMember({"J", "B"}))->default_val("J");
    pcmd->add_option("--model", model)
        ->check(CLI::IsMember({"spin-open", "spin-periodic", "fermion-cyclic"}))
        ->default_val("spin-open");
    pcmd->add_option("--seed", seed)->default_val(1);
    pcmd->add_option("--restarts", restarts)->default_val(64);
    pcmd->add_option("--workers", workers)->default_val(1);
    add_output_flags(pcmd, &p_out);

    // verify
    auto* vcmd = app.add_subcommand("verify", "run the cross-module invariant suites");
    std::string level = "fast";
    vcmd->add_option("--level", level)->check(CLI::IsMember({"fast", "full"}))->default_val("fast");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gcmd->parsed()) return run_gfunction(g_values, g_range, workers, g_out);
        if (mcmd->parsed()) return run_maxvar(n_range, n_single, J, B, t, which, m_out);
        if (pcmd->parsed())
            return run_product_scan(n_range, J, B, t, which, model, seed, restarts, workers,
                                    p_out);
        if (vcmd->parsed()) {
            const auto results = run_verification(
                level == "fast" ? VerifyLevel::Fast : VerifyLevel::Full, &std::cout);
            const bool ok = all_passed(results);
            std::cout << (ok ? "verify: all checks passed\n" : "verify: FAILURES detected\n");
            return ok ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
