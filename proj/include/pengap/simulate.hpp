#ifndef PENGAP_SIMULATE_HPP
#define PENGAP_SIMULATE_HPP

#include <atomic>
#include <cmath>
#include <cstdint>
#include <thread>
#include <vector>

#include "pengap/control.hpp"
#include "pengap/errors.hpp"
#include "pengap/rng.hpp"
#include "pengap/stats.hpp"

namespace pengap {

struct SimulationConfig {
    double dt = 1.0 / 26.0;
    int n_scenarios = 1000;
    std::uint64_t master_seed = 0;
    double T = 35.0;
    double x0 = 1.0;
    int n_threads = 0;           // 0 = hardware concurrency
    bool force_riskless = false; // y = 0 everywhere, bypassing the strategy

    int steps() const {
        const double ratio = T / dt;
        const auto n = static_cast<int>(std::llround(ratio));
        if (n < 1 || std::fabs(ratio - n) > 1e-6 * ratio)
            throw InvalidConfig("dt must divide the horizon T");
        return n;
    }
};

/// Per-scenario fund and applied-fraction records on the uniform grid.
struct PathEnsemble {
    std::vector<double> times;            // steps + 1 entries
    std::vector<std::vector<double>> X;   // n_scenarios x (steps + 1)
    std::vector<std::vector<double>> y;   // n_scenarios x steps
    std::uint64_t master_seed = 0;
    SimulationConfig config;
};

/// Euler-Maruyama evolution under the clamped feedback strategy; the
/// fraction is recomputed from (t_n, X_n) at every step.
inline PathEnsemble simulate_paths(const SimulationConfig& cfg, const RiccatiSolution& sol,
                                   const SalarySpec& spec, const MarketModel& market) {
    if (cfg.n_scenarios < 1) throw InvalidConfig("n_scenarios must be >= 1");
    if (std::fabs(sol.sched.T - cfg.T) > 1e-9)
        throw ConfigMismatch("simulation horizon differs from the target schedule's");

    const int steps = cfg.steps();
    const double dt = cfg.T / steps; // lands on T exactly
    const double sqrt_dt = std::sqrt(dt);

    PathEnsemble ens;
    ens.master_seed = cfg.master_seed;
    ens.config = cfg;
    ens.times.resize(steps + 1);
    for (int n = 0; n <= steps; ++n) ens.times[n] = n * dt;
    ens.X.assign(cfg.n_scenarios, std::vector<double>(steps + 1));
    ens.y.assign(cfg.n_scenarios, std::vector<double>(steps));

    const auto run_scenario = [&](int i) {
        ScenarioRng rng(cfg.master_seed, static_cast<std::uint64_t>(i));
        double x = cfg.x0;
        ens.X[i][0] = x;
        for (int n = 0; n < steps; ++n) {
            const double t = ens.times[n];
            const double frac = cfg.force_riskless ? 0.0 : applied_fraction(sol, t, x);
            const double z = rng.normal();
            x += (((market.mu - market.r) * frac + market.r) * x +
                  contribution_at(spec, t)) *
                     dt +
                 market.sigma * frac * x * sqrt_dt * z;
            ens.y[i][n] = frac;
            ens.X[i][n + 1] = x;
        }
    };

    unsigned workers = cfg.n_threads > 0 ? static_cast<unsigned>(cfg.n_threads)
                                         : std::thread::hardware_concurrency();
    if (workers <= 1 || cfg.n_scenarios == 1) {
        for (int i = 0; i < cfg.n_scenarios; ++i) run_scenario(i);
        return ens;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < cfg.n_scenarios; i = next.fetch_add(1))
                run_scenario(i);
        });
    for (auto& th : pool) th.join();
    return ens;
}

struct CurveStats {
    std::vector<std::vector<double>> percentiles; // one curve per requested percentile
    std::vector<double> mean;
    std::vector<double> stddev;
};

struct EnsembleStats {
    std::vector<double> levels; // requested percentiles
    CurveStats fund;
    CurveStats fraction;
};

namespace detail {

inline CurveStats curve_stats(const std::vector<std::vector<double>>& rows,
                              const std::vector<double>& levels) {
    const std::size_t n_steps = rows.front().size();
    CurveStats out;
    out.percentiles.assign(levels.size(), std::vector<double>(n_steps));
    out.mean.resize(n_steps);
    out.stddev.resize(n_steps);
    std::vector<double> column(rows.size());
    for (std::size_t s = 0; s < n_steps; ++s) {
        for (std::size_t i = 0; i < rows.size(); ++i) column[i] = rows[i][s];
        for (std::size_t p = 0; p < levels.size(); ++p)
            out.percentiles[p][s] = percentile(column, levels[p]);
        out.mean[s] = mean(column);
        out.stddev[s] = stddev(column);
    }
    return out;
}

} // namespace detail

inline EnsembleStats ensemble_stats(const PathEnsemble& ens,
                                    std::vector<double> levels = {5, 25, 50, 75, 95}) {
    if (ens.X.empty()) throw EmptySamples("ensemble has no scenarios");
    EnsembleStats out;
    out.levels = levels;
    out.fund = detail::curve_stats(ens.X, levels);
    out.fraction = detail::curve_stats(ens.y, levels);
    return out;
}

/// Per-scenario total pension P_n + X(T) / annuity.
inline std::vector<double> final_pension_distribution(const PathEnsemble& ens, double p_new,
                                                      double annuity) {
    if (!(annuity > 0.0)) throw InvalidConfig("annuity must be > 0");
    std::vector<double> samples;
    samples.reserve(ens.X.size());
    for (const auto& path : ens.X) samples.push_back(p_new + path.back() / annuity);
    return samples;
}

} // namespace pengap

#endif
