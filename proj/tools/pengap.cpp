// Batch front-end: reads a key = value run configuration, applies flag
// overrides and writes the CSV artifacts for each subcommand.

#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pengap/run.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Pension-gap pipeline: pension formulas, target-based optimal "
                 "investment, Monte Carlo fund evolution and break-even analysis"};
    app.require_subcommand(1);

    std::string config_path;
    std::string output_dir;
    std::vector<std::string> overrides;
    app.add_option("-c,--config", config_path, "key = value configuration file");
    app.add_option("-o,--out", output_dir, "output directory for CSV artifacts");
    app.add_option("-s,--set", overrides, "override a config key, e.g. --set drift=0.05")
        ->take_all();

    auto* pensions = app.add_subcommand("pensions", "Table of P_o, P_n, ratios and r*");
    auto* targets = app.add_subcommand("targets", "Calibrated target curves F(t)");
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo fund evolution");
    auto* break_even = app.add_subcommand("break-even", "Break-even point for beta, w or g");
    auto* sweep_age = app.add_subcommand("sweep-age", "Pension table across retirement ages");
    // let the global -c/-o/-s options appear after the subcommand too
    for (auto* sub : {pensions, targets, simulate, break_even, sweep_age})
        sub->fallthrough();

    std::string be_param;
    break_even->add_option("parameter", be_param, "one of: beta, w, g")->required();

    std::vector<int> ages{60, 63, 65, 67, 70};
    sweep_age->add_option("--ages", ages, "retirement ages to evaluate");

    bool force_riskless = false;
    simulate->add_flag("--force-riskless", force_riskless,
                       "hold the whole fund in the riskless asset");

    CLI11_PARSE(app, argc, argv);

    try {
        pengap::RunConfig cfg =
            config_path.empty() ? pengap::RunConfig{} : pengap::load_config(config_path);
        for (const auto& entry : overrides) {
            const auto eq = entry.find('=');
            if (eq == std::string::npos)
                throw pengap::InvalidConfig("--set expects key=value, got '" + entry + "'");
            pengap::apply_config_entry(cfg, entry.substr(0, eq), entry.substr(eq + 1));
        }
        if (!output_dir.empty()) cfg.output_dir = output_dir;
        if (force_riskless) cfg.force_riskless = true;

        if (*pensions) {
            for (const auto& row : pengap::cmd_pensions(cfg))
                std::printf("%-12s P_o=%.4f P_n=%.4f Pi_o=%.4f Pi_n=%.4f r*=%.4f S(T)=%.4f\n",
                            pengap::kind_name(row.kind).c_str(), row.p_old, row.p_new,
                            row.pi_old, row.pi_new, row.r_star, row.final_salary);
        } else if (*targets) {
            pengap::cmd_targets(cfg);
        } else if (*simulate) {
            const auto res = pengap::cmd_simulate(cfg);
            std::printf("%s: %d scenarios, median P_tot=%.4f (P_o=%.4f, P_n=%.4f)\n",
                        cfg.salary_kind.c_str(), cfg.n_scenarios,
                        pengap::percentile(res.total_pension, 50.0), res.pensions.p_old,
                        res.pensions.p_new);
        } else if (*break_even) {
            const double root = pengap::cmd_break_even(cfg, be_param);
            std::printf("break-even %s = %.6f (%s salary)\n", be_param.c_str(), root,
                        cfg.salary_kind.c_str());
        } else if (*sweep_age) {
            pengap::cmd_sweep_age(cfg, ages);
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
