#ifndef PENGAP_RUN_HPP
#define PENGAP_RUN_HPP

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "pengap/analysis.hpp"
#include "pengap/control.hpp"
#include "pengap/csv.hpp"
#include "pengap/mortality.hpp"
#include "pengap/pension.hpp"
#include "pengap/simulate.hpp"
#include "pengap/targets.hpp"

namespace pengap {

/// Full run configuration.  Defaults are the base case: unit initial fund
/// and salary, public contribution 33%, GDP growth and riskless rate 1.5%,
/// risky drift 6% / volatility 12%, discount rate 3%, working life 30..65,
/// annuity 17.875 at 65.
struct RunConfig {
    double x0 = 1.0;
    double public_contribution = 0.33;
    double gdp_growth = 0.015;
    double riskless_rate = 0.015;
    double drift = 0.06;
    double volatility = 0.12;
    double discount_rate = 0.03;
    int entry_age = 30;
    int retirement_age = 65;
    double s0 = 1.0;
    std::string salary_kind = "exponential"; // for simulate / break-even
    double exp_growth = 0.06;
    double exp_contribution = 0.10;
    double lin_growth = 0.08;
    double lin_contribution = 0.04;
    double accrual = 0.02;
    double dt = 1.0 / 26.0;
    int n_scenarios = 1000;
    std::uint64_t master_seed = 20240615;
    int n_threads = 0;
    int n_bins = 30;
    bool force_riskless = false;
    std::string mortality_csv;
    std::map<int, double> annuity_overrides = {
        {60, 20.95}, {63, 19.11}, {65, 17.875}, {67, 16.64}, {70, 14.81}};
    std::string output_dir = ".";

    double horizon() const { return retirement_age - entry_age; }
};

namespace detail {

inline std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t");
    return s.substr(first, last - first + 1);
}

inline double parse_double(const std::string& key, const std::string& value) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(value, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != value.size()) throw InvalidConfig(key + ": not a number: '" + value + "'");
    return v;
}

inline long parse_int(const std::string& key, const std::string& value) {
    std::size_t used = 0;
    long v = 0;
    try {
        v = std::stol(value, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != value.size()) throw InvalidConfig(key + ": not an integer: '" + value + "'");
    return v;
}

inline bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    throw InvalidConfig(key + ": expected true/false, got '" + value + "'");
}

} // namespace detail

// "age:value,age:value,..."
inline std::map<int, double> parse_annuity_overrides(const std::string& text) {
    std::map<int, double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = detail::trim(item);
        if (item.empty()) continue;
        const auto colon = item.find(':');
        if (colon == std::string::npos)
            throw InvalidConfig("annuity_overrides: expected age:value, got '" + item + "'");
        const int age =
            static_cast<int>(detail::parse_int("annuity_overrides", item.substr(0, colon)));
        const double value =
            detail::parse_double("annuity_overrides", item.substr(colon + 1));
        out[age] = value;
    }
    if (out.empty()) throw InvalidConfig("annuity_overrides: empty list");
    return out;
}

inline void apply_config_entry(RunConfig& cfg, const std::string& key,
                               const std::string& value) {
    using detail::parse_bool;
    using detail::parse_double;
    using detail::parse_int;
    if (key == "x0") cfg.x0 = parse_double(key, value);
    else if (key == "public_contribution") cfg.public_contribution = parse_double(key, value);
    else if (key == "gdp_growth") cfg.gdp_growth = parse_double(key, value);
    else if (key == "riskless_rate") cfg.riskless_rate = parse_double(key, value);
    else if (key == "drift") cfg.drift = parse_double(key, value);
    else if (key == "volatility") cfg.volatility = parse_double(key, value);
    else if (key == "discount_rate") cfg.discount_rate = parse_double(key, value);
    else if (key == "entry_age") cfg.entry_age = static_cast<int>(parse_int(key, value));
    else if (key == "retirement_age")
        cfg.retirement_age = static_cast<int>(parse_int(key, value));
    else if (key == "s0") cfg.s0 = parse_double(key, value);
    else if (key == "salary_kind") cfg.salary_kind = value;
    else if (key == "exp_growth") cfg.exp_growth = parse_double(key, value);
    else if (key == "exp_contribution") cfg.exp_contribution = parse_double(key, value);
    else if (key == "lin_growth") cfg.lin_growth = parse_double(key, value);
    else if (key == "lin_contribution") cfg.lin_contribution = parse_double(key, value);
    else if (key == "accrual") cfg.accrual = parse_double(key, value);
    else if (key == "dt") cfg.dt = parse_double(key, value);
    else if (key == "n_scenarios") cfg.n_scenarios = static_cast<int>(parse_int(key, value));
    else if (key == "master_seed")
        cfg.master_seed = static_cast<std::uint64_t>(parse_int(key, value));
    else if (key == "n_threads") cfg.n_threads = static_cast<int>(parse_int(key, value));
    else if (key == "n_bins") cfg.n_bins = static_cast<int>(parse_int(key, value));
    else if (key == "force_riskless") cfg.force_riskless = parse_bool(key, value);
    else if (key == "mortality_csv") cfg.mortality_csv = value;
    else if (key == "annuity_overrides") cfg.annuity_overrides = parse_annuity_overrides(value);
    else if (key == "output_dir") cfg.output_dir = value;
    else throw InvalidConfig("unknown config key '" + key + "'");
}

// Flat key = value file; '#' starts a comment.
inline RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InvalidConfig("cannot open config file " + path.string());
    RunConfig cfg;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw InvalidConfig("config line " + std::to_string(line_no) +
                                ": expected key = value");
        apply_config_entry(cfg, detail::trim(line.substr(0, eq)),
                           detail::trim(line.substr(eq + 1)));
    }
    return cfg;
}

inline void validate(const RunConfig& cfg) {
    if (!(cfg.volatility > 0.0)) throw InvalidConfig("volatility: must be > 0");
    if (!(cfg.discount_rate > 0.0)) throw InvalidConfig("discount_rate: must be > 0");
    if (!(cfg.x0 >= 0.0)) throw InvalidConfig("x0: must be >= 0");
    if (!(cfg.s0 > 0.0)) throw InvalidConfig("s0: must be > 0");
    if (!(cfg.accrual > 0.0)) throw InvalidConfig("accrual: must be > 0");
    if (!(cfg.public_contribution > 0.0 && cfg.public_contribution < 1.0))
        throw InvalidConfig("public_contribution: must be in (0,1)");
    if (cfg.retirement_age <= cfg.entry_age)
        throw InvalidConfig("retirement_age: must exceed entry_age");
    if (!(cfg.dt > 0.0)) throw InvalidConfig("dt: must be > 0");
    if (cfg.n_scenarios < 1) throw InvalidConfig("n_scenarios: must be >= 1");
    if (cfg.n_bins < 1) throw InvalidConfig("n_bins: must be >= 1");
    for (auto [kind, g, k] :
         {std::tuple{"exp", cfg.exp_growth, cfg.exp_contribution},
          std::tuple{"lin", cfg.lin_growth, cfg.lin_contribution}}) {
        if (!(g >= 0.0)) throw InvalidConfig(std::string(kind) + "_growth: must be >= 0");
        if (!(k > 0.0 && k < 1.0))
            throw InvalidConfig(std::string(kind) + "_contribution: must be in (0,1)");
    }
    if (cfg.salary_kind != "linear" && cfg.salary_kind != "exponential")
        throw InvalidConfig("salary_kind: must be 'linear' or 'exponential'");
}

inline SalarySpec salary_spec(const RunConfig& cfg, SalaryKind kind) {
    return kind == SalaryKind::Linear
               ? SalarySpec(kind, cfg.s0, cfg.lin_growth, cfg.lin_contribution)
               : SalarySpec(kind, cfg.s0, cfg.exp_growth, cfg.exp_contribution);
}

inline SalaryKind configured_kind(const RunConfig& cfg) {
    return cfg.salary_kind == "linear" ? SalaryKind::Linear : SalaryKind::Exponential;
}

inline PensionRules pension_rules(const RunConfig& cfg) {
    return PensionRules(cfg.accrual, cfg.public_contribution, cfg.gdp_growth);
}

inline AnnuitySource annuity_source(const RunConfig& cfg) {
    if (!cfg.mortality_csv.empty()) {
        std::ifstream in(cfg.mortality_csv);
        if (!in) throw InvalidConfig("mortality_csv: cannot open " + cfg.mortality_csv);
        return AnnuitySource::from_table(load_mortality_table(in));
    }
    return AnnuitySource::from_overrides(cfg.annuity_overrides);
}

inline double retirement_annuity(const RunConfig& cfg) {
    return annuity_factor(annuity_source(cfg), cfg.retirement_age, cfg.riskless_rate);
}

struct PensionRow {
    SalaryKind kind;
    double p_old;
    double p_new;
    double pi_old;
    double pi_new;
    double r_star;
    double final_salary;
};

inline PensionRow pension_row(const RunConfig& cfg, SalaryKind kind) {
    const SalarySpec spec = salary_spec(cfg, kind);
    const PensionRules rules = pension_rules(cfg);
    const double T = cfg.horizon();
    const double annuity = retirement_annuity(cfg);
    const double final_salary = salary_at(spec, T);
    const double p_old = old_pension(rules, T, final_salary);
    const double p_new = new_pension(spec, rules, T, 1.0 / annuity);
    const auto [pi_old, pi_new] = replacement_ratios(p_old, p_new, final_salary);
    const double r_star =
        solve_r_star(cfg.x0, spec, T, final_target(p_old, p_new, annuity),
                     cfg.riskless_rate);
    return {kind, p_old, p_new, pi_old, pi_new, r_star, final_salary};
}

inline TargetSchedule target_schedule(const RunConfig& cfg, SalaryKind kind) {
    const SalarySpec spec = salary_spec(cfg, kind);
    const PensionRules rules = pension_rules(cfg);
    const double T = cfg.horizon();
    const double annuity = retirement_annuity(cfg);
    const double p_old = old_pension(rules, T, salary_at(spec, T));
    const double p_new = new_pension(spec, rules, T, 1.0 / annuity);
    return TargetSchedule(cfg.x0, spec, T, final_target(p_old, p_new, annuity),
                          cfg.riskless_rate);
}

inline std::string kind_name(SalaryKind kind) {
    return kind == SalaryKind::Linear ? "linear" : "exponential";
}

inline std::filesystem::path artifact_path(const RunConfig& cfg, const std::string& name) {
    std::filesystem::create_directories(cfg.output_dir);
    return std::filesystem::path(cfg.output_dir) / name;
}

/// pensions.csv: one row per salary kind with the headline quantities.
inline std::vector<PensionRow> cmd_pensions(const RunConfig& cfg) {
    validate(cfg);
    std::vector<PensionRow> rows{pension_row(cfg, SalaryKind::Exponential),
                                 pension_row(cfg, SalaryKind::Linear)};
    CsvWriter csv(artifact_path(cfg, "pensions.csv"));
    csv.row({"kind", "P_o", "P_n", "Pi_o", "Pi_n", "r_star", "S_T"});
    for (const auto& r : rows)
        csv.row({kind_name(r.kind), format_number(r.p_old), format_number(r.p_new),
                 format_number(r.pi_old), format_number(r.pi_new), format_number(r.r_star),
                 format_number(r.final_salary)});
    csv.commit();
    return rows;
}

/// targets.csv: calibrated target curves for both salary kinds on the dt grid.
inline void cmd_targets(const RunConfig& cfg) {
    validate(cfg);
    CsvWriter csv(artifact_path(cfg, "targets.csv"));
    csv.row({"kind", "t", "target"});
    for (SalaryKind kind : {SalaryKind::Exponential, SalaryKind::Linear}) {
        const TargetSchedule sched = target_schedule(cfg, kind);
        SimulationConfig grid;
        grid.dt = cfg.dt;
        grid.T = cfg.horizon();
        const int steps = grid.steps();
        for (int n = 0; n <= steps; ++n) {
            const double t = grid.T * n / steps;
            csv.row({kind_name(kind), format_number(t),
                     format_number(interim_target(sched, t))});
        }
    }
    csv.commit();
}

struct SimulateResult {
    PensionRow pensions;
    double annuity;
    PathEnsemble ensemble;
    EnsembleStats stats;
    std::vector<double> total_pension; // per scenario
};

/// simulate: percentile fans for y and X plus the P_tot histogram.
inline SimulateResult cmd_simulate(const RunConfig& cfg) {
    validate(cfg);
    const SalaryKind kind = configured_kind(cfg);
    const SalarySpec spec = salary_spec(cfg, kind);
    const MarketModel market(cfg.riskless_rate, cfg.drift, cfg.volatility,
                             PreferenceParams(cfg.discount_rate));
    const TargetSchedule sched = target_schedule(cfg, kind);
    const RiccatiSolution sol = make_riccati(market, sched);

    SimulationConfig sim;
    sim.dt = cfg.dt;
    sim.n_scenarios = cfg.n_scenarios;
    sim.master_seed = cfg.master_seed;
    sim.T = cfg.horizon();
    sim.x0 = cfg.x0;
    sim.n_threads = cfg.n_threads;
    sim.force_riskless = cfg.force_riskless;

    SimulateResult res{pension_row(cfg, kind), retirement_annuity(cfg),
                       simulate_paths(sim, sol, spec, market), {}, {}};
    res.stats = ensemble_stats(res.ensemble);
    res.total_pension =
        final_pension_distribution(res.ensemble, res.pensions.p_new, res.annuity);

    const auto write_fan = [&](const std::string& name, const CurveStats& stats,
                               std::size_t n_rows) {
        CsvWriter csv(artifact_path(cfg, name));
        std::vector<std::string> header{"t"};
        for (double level : res.stats.levels)
            header.push_back("p" + format_number(level));
        header.push_back("mean");
        header.push_back("std");
        csv.row(header);
        for (std::size_t s = 0; s < n_rows; ++s) {
            std::vector<std::string> cells{format_number(res.ensemble.times[s])};
            for (const auto& curve : stats.percentiles)
                cells.push_back(format_number(curve[s]));
            cells.push_back(format_number(stats.mean[s]));
            cells.push_back(format_number(stats.stddev[s]));
            csv.row(cells);
        }
        csv.commit();
    };
    write_fan("strategy_stats.csv", res.stats.fraction, res.ensemble.y.front().size());
    write_fan("fund_stats.csv", res.stats.fund, res.ensemble.times.size());

    const Histogram hist =
        histogram(res.total_pension, static_cast<std::size_t>(cfg.n_bins));
    CsvWriter csv(artifact_path(cfg, "pension_hist.csv"));
    csv.row({"bin_lo", "bin_hi", "count"});
    for (std::size_t i = 0; i < hist.counts.size(); ++i)
        csv.row({format_number(hist.edges[i]), format_number(hist.edges[i + 1]),
                 std::to_string(hist.counts[i])});
    csv.commit();
    return res;
}

inline BreakEvenParam break_even_param(const std::string& name) {
    if (name == "beta") return BreakEvenParam::ConversionBeta;
    if (name == "w") return BreakEvenParam::GdpGrowth;
    if (name == "g") return BreakEvenParam::SalaryGrowth;
    throw InvalidConfig("break-even parameter must be one of beta, w, g");
}

/// break_even_<param>.csv: the root plus the sampled P_o - P_n curve.
/// On NoSignChange the curve is still written before the error propagates.
inline double cmd_break_even(const RunConfig& cfg, const std::string& param_name) {
    validate(cfg);
    const BreakEvenParam param = break_even_param(param_name);
    const SalaryKind kind = configured_kind(cfg);
    BreakEvenQuery query{param,
                         salary_spec(cfg, kind),
                         pension_rules(cfg),
                         1.0 / retirement_annuity(cfg),
                         cfg.horizon(),
                         default_bracket_lo(param),
                         default_bracket_hi(param)};

    CsvWriter csv(artifact_path(cfg, "break_even_" + param_name + ".csv"));
    csv.row({"row_type", param_name, "gap"});
    double root = 0.0;
    bool have_root = true;
    try {
        root = break_even(query);
    } catch (const NoSignChange&) {
        have_root = false;
    }
    if (have_root) csv.row({"root", format_number(root), format_number(0.0)});
    constexpr int kCurveSamples = 101;
    for (int i = 0; i < kCurveSamples; ++i) {
        const double p = query.lo + (query.hi - query.lo) * i / (kCurveSamples - 1);
        csv.row({"sample", format_number(p), format_number(pension_gap(query, p))});
    }
    csv.commit();
    if (!have_root)
        throw NoSignChange("no break-even point for " + param_name + " on the bracket");
    return root;
}

/// age_sweep.csv: one row per retirement age, both salary kinds.
inline std::vector<std::pair<AgeSweepRow, AgeSweepRow>>
cmd_sweep_age(const RunConfig& cfg, const std::vector<int>& ages) {
    validate(cfg);
    const AnnuitySource annuities = annuity_source(cfg);
    const auto exp_rows = age_sweep(ages, cfg.entry_age,
                                    salary_spec(cfg, SalaryKind::Exponential),
                                    pension_rules(cfg), annuities, cfg.riskless_rate);
    const auto lin_rows =
        age_sweep(ages, cfg.entry_age, salary_spec(cfg, SalaryKind::Linear),
                  pension_rules(cfg), annuities, cfg.riskless_rate);

    CsvWriter csv(artifact_path(cfg, "age_sweep.csv"));
    csv.row({"age", "T", "annuity", "beta", "P_o_exp", "P_n_exp", "Pi_o_exp", "Pi_n_exp",
             "P_o_lin", "P_n_lin", "Pi_o_lin", "Pi_n_lin"});
    std::vector<std::pair<AgeSweepRow, AgeSweepRow>> rows;
    for (std::size_t i = 0; i < exp_rows.size(); ++i) {
        const auto& e = exp_rows[i];
        const auto& l = lin_rows[i];
        csv.row({std::to_string(e.retirement_age), format_number(e.T),
                 format_number(e.annuity), format_number(e.conversion_beta),
                 format_number(e.p_old), format_number(e.p_new), format_number(e.pi_old),
                 format_number(e.pi_new), format_number(l.p_old), format_number(l.p_new),
                 format_number(l.pi_old), format_number(l.pi_new)});
        rows.emplace_back(e, l);
    }
    csv.commit();
    return rows;
}

} // namespace pengap

#endif
