#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "pengap/run.hpp"

using namespace pengap;
namespace fs = std::filesystem;

namespace {

fs::path make_temp_dir(const std::string& tag) {
    const fs::path dir = fs::temp_directory_path() / ("pengap_test_" + tag);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("config file parsing") {
    const fs::path dir = make_temp_dir("config");
    const fs::path file = dir / "run.cfg";
    {
        std::ofstream out(file);
        out << "# base case with a tweak\n"
            << "drift = 0.05\n"
            << "salary_kind = linear\n"
            << "n_scenarios = 64   # small run\n"
            << "annuity_overrides = 65:18.0, 70:15.0\n";
    }
    const RunConfig cfg = load_config(file);
    CHECK(cfg.drift == doctest::Approx(0.05));
    CHECK(cfg.salary_kind == "linear");
    CHECK(cfg.n_scenarios == 64);
    CHECK(cfg.annuity_overrides.at(65) == doctest::Approx(18.0));
    CHECK(cfg.annuity_overrides.size() == 2);
    // untouched keys keep their base-case defaults
    CHECK(cfg.volatility == doctest::Approx(0.12));
    CHECK(cfg.retirement_age == 65);

    SUBCASE("bad lines are rejected with context") {
        std::ofstream out(file);
        out << "drift 0.05\n";
        out.close();
        CHECK_THROWS_AS(load_config(file), InvalidConfig);
    }
    SUBCASE("unknown keys are rejected") {
        RunConfig c;
        CHECK_THROWS_AS(apply_config_entry(c, "dirft", "0.05"), InvalidConfig);
        CHECK_THROWS_AS(apply_config_entry(c, "drift", "fast"), InvalidConfig);
    }
}

TEST_CASE("validation rejects bad configs before any output") {
    const fs::path dir = make_temp_dir("validate");
    RunConfig cfg;
    cfg.output_dir = dir.string();
    cfg.volatility = 0.0;
    CHECK_THROWS_WITH_AS(static_cast<void>(cmd_pensions(cfg)), "volatility: must be > 0",
                         InvalidConfig);
    CHECK(!fs::exists(dir / "pensions.csv"));

    cfg = RunConfig{};
    cfg.retirement_age = 30;
    CHECK_THROWS_AS(static_cast<void>(cmd_pensions(cfg)), InvalidConfig);
    cfg = RunConfig{};
    cfg.salary_kind = "flat";
    CHECK_THROWS_AS(static_cast<void>(cmd_pensions(cfg)), InvalidConfig);
}

TEST_CASE("pensions artifact reproduces the headline table") {
    const fs::path dir = make_temp_dir("pensions");
    RunConfig cfg;
    cfg.output_dir = dir.string();
    const auto rows = cmd_pensions(cfg);

    REQUIRE(rows.size() == 2);
    const auto& e = rows[0];
    CHECK(e.p_old == doctest::Approx(5.716).epsilon(1e-3));
    CHECK(e.p_new == doctest::Approx(2.657).epsilon(1e-3));
    CHECK(e.pi_old == doctest::Approx(0.7).epsilon(1e-3));
    CHECK(e.pi_new == doctest::Approx(0.325).epsilon(2e-3));
    CHECK(std::fabs(e.r_star - 0.078) < 2e-3);
    CHECK(e.final_salary == doctest::Approx(8.166).epsilon(1e-3));
    const auto& l = rows[1];
    CHECK(l.p_old == doctest::Approx(2.66).epsilon(1e-3));
    CHECK(l.p_new == doctest::Approx(1.936).epsilon(1e-3));
    CHECK(l.pi_new == doctest::Approx(0.509).epsilon(2e-3));
    CHECK(std::fabs(l.r_star - 0.049) < 2e-3);
    CHECK(l.final_salary == doctest::Approx(3.8));

    const std::string csv = slurp(dir / "pensions.csv");
    CHECK(csv.rfind("kind,P_o,P_n,Pi_o,Pi_n,r_star,S_T\n", 0) == 0);
    CHECK(csv.find("exponential,") != std::string::npos);
    CHECK(csv.find("linear,") != std::string::npos);
    CHECK(!fs::exists(dir / "pensions.csv.tmp"));
}

TEST_CASE("targets artifact covers both kinds over the grid") {
    const fs::path dir = make_temp_dir("targets");
    RunConfig cfg;
    cfg.output_dir = dir.string();
    cmd_targets(cfg);
    const std::string csv = slurp(dir / "targets.csv");
    CHECK(csv.rfind("kind,t,target\n", 0) == 0);
    CHECK(csv.find("exponential,0,1\n") != std::string::npos);
    CHECK(csv.find("linear,0,1\n") != std::string::npos);
    CHECK(csv.find("linear,35,") != std::string::npos);
}

TEST_CASE("simulate artifacts are byte-identical for a fixed seed") {
    RunConfig cfg;
    cfg.n_scenarios = 80;
    cfg.master_seed = 5150;

    const fs::path dir_a = make_temp_dir("sim_a");
    cfg.output_dir = dir_a.string();
    cmd_simulate(cfg);
    const fs::path dir_b = make_temp_dir("sim_b");
    cfg.output_dir = dir_b.string();
    cmd_simulate(cfg);

    for (const char* name : {"strategy_stats.csv", "fund_stats.csv", "pension_hist.csv"}) {
        CHECK(slurp(dir_a / name) == slurp(dir_b / name));
        CHECK(!fs::exists(dir_a / (std::string(name) + ".tmp")));
    }
    CHECK(slurp(dir_a / "strategy_stats.csv")
              .rfind("t,p5,p25,p50,p75,p95,mean,std\n", 0) == 0);
}

TEST_CASE("forced riskless simulation is single-valued") {
    const fs::path dir = make_temp_dir("riskless");
    RunConfig cfg;
    cfg.output_dir = dir.string();
    cfg.salary_kind = "linear";
    cfg.retirement_age = 70;
    cfg.n_scenarios = 16;
    cfg.force_riskless = true;
    const auto res = cmd_simulate(cfg);
    for (double p : res.total_pension) {
        CHECK(p == doctest::Approx(res.total_pension.front()));
        CHECK(p == doctest::Approx(3.464).epsilon(5e-3));
        CHECK(p > res.pensions.p_old);
    }
}

TEST_CASE("break-even artifacts") {
    const fs::path dir = make_temp_dir("break_even");
    RunConfig cfg;
    cfg.output_dir = dir.string();

    cfg.salary_kind = "exponential";
    CHECK(cmd_break_even(cfg, "w") == doctest::Approx(0.065).epsilon(0.05));
    cfg.salary_kind = "linear";
    CHECK(cmd_break_even(cfg, "g") == doctest::Approx(0.015).epsilon(0.1));
    CHECK(cmd_break_even(cfg, "beta") == doctest::Approx(0.078).epsilon(0.05));

    const std::string csv = slurp(dir / "break_even_w.csv");
    CHECK(csv.rfind("row_type,w,gap\n", 0) == 0);
    CHECK(csv.find("root,") != std::string::npos);
    CHECK(csv.find("sample,") != std::string::npos);

    CHECK_THROWS_AS(cmd_break_even(cfg, "sigma"), InvalidConfig);
}

TEST_CASE("age sweep artifact") {
    const fs::path dir = make_temp_dir("sweep");
    RunConfig cfg;
    cfg.output_dir = dir.string();
    cfg.annuity_overrides = {{60, 20.95}, {63, 19.11}, {65, 17.88}, {67, 16.64},
                             {70, 14.81}};
    const auto rows = cmd_sweep_age(cfg, {60, 63, 65, 67, 70});
    REQUIRE(rows.size() == 5);
    CHECK(rows[4].second.p_new == doctest::Approx(2.98).epsilon(2e-3));
    CHECK(rows[0].first.annuity == doctest::Approx(20.95));

    const std::string csv = slurp(dir / "age_sweep.csv");
    CHECK(csv.rfind("age,T,annuity,beta,", 0) == 0);
    CHECK(csv.find("\n60,") != std::string::npos);

    CHECK_THROWS_AS(cmd_sweep_age(cfg, {25}), InvalidConfig);
}

TEST_CASE("mortality table can back the annuity source") {
    const fs::path dir = make_temp_dir("mortality");
    const fs::path table = dir / "table.csv";
    {
        std::ofstream out(table);
        out << "age,p\n";
        for (int age = 30; age <= 115; ++age) {
            const double q = std::min(1.0, 0.0002 * std::exp(0.1 * (age - 30)));
            out << age << "," << (1.0 - q) << "\n";
        }
    }
    RunConfig cfg;
    cfg.output_dir = dir.string();
    cfg.mortality_csv = table.string();
    const auto rows = cmd_pensions(cfg); // annuity now priced from the table
    CHECK(rows[0].p_new > 0.0);
    CHECK(retirement_annuity(cfg) > 0.0);

    cfg.mortality_csv = (dir / "missing.csv").string();
    CHECK_THROWS_AS(static_cast<void>(cmd_pensions(cfg)), InvalidConfig);
}
