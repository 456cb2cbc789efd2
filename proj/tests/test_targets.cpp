#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "pengap/quadrature.hpp"
#include "pengap/targets.hpp"

#include "base_case.hpp"

using namespace pengap;

namespace {

// quadrature of the defining integral, independent of the closed form
double interim_target_quadrature(double x0, const SalarySpec& spec, double r_star,
                                 double t) {
    const auto integrand = [&](double s) {
        return contribution_at(spec, s) * std::exp(r_star * (t - s));
    };
    return x0 * std::exp(r_star * t) + integrate(integrand, 0.0, t, 1e-14);
}

} // namespace

TEST_CASE("final target") {
    CHECK(final_target(5.716, 2.657, 17.875) == doctest::Approx(54.68).epsilon(1e-3));
    CHECK(final_target(2.66, 1.936, 17.875) == doctest::Approx(12.94).epsilon(1e-3));
    CHECK(final_target(3.3, 3.3, 17.875) == doctest::Approx(0.0));
}

TEST_CASE("r* calibration reproduces the base-case rates") {
    const auto sched_e = base_case::schedule(base_case::exponential_salary());
    CHECK(sched_e.r_star == doctest::Approx(0.078).epsilon(0.03));
    CHECK(std::fabs(sched_e.r_star - 0.0776) < 5e-4);

    const auto sched_l = base_case::schedule(base_case::linear_salary());
    CHECK(sched_l.r_star == doctest::Approx(0.049).epsilon(0.03));
    CHECK(std::fabs(sched_l.r_star - 0.0486) < 5e-4);
}

TEST_CASE("r* is a fixed point for riskless accumulation") {
    for (const auto& spec : {base_case::exponential_salary(), base_case::linear_salary()}) {
        const double r = base_case::kRisklessRate;
        const double F_T = accumulated_value(1.0, spec, r, 35.0);
        CHECK(std::fabs(solve_r_star(1.0, spec, 35.0, F_T) - r) < 1e-10);
    }
}

TEST_CASE("r* residual and edge cases") {
    CHECK_THROWS_AS(solve_r_star(1.0, base_case::linear_salary(), 35.0, -3.0),
                    NonPositiveGap);
    CHECK_THROWS_AS(solve_r_star(1.0, base_case::linear_salary(), 35.0, 0.0),
                    NonPositiveGap);

    std::mt19937 gen(11);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (int i = 0; i < 40; ++i) {
        const SalaryKind kind = i % 2 ? SalaryKind::Linear : SalaryKind::Exponential;
        const SalarySpec spec(kind, 0.5 + u01(gen), 0.08 * u01(gen), 0.02 + 0.2 * u01(gen));
        const double x0 = 2.0 * u01(gen);
        const double T = 10.0 + 30.0 * u01(gen);
        const double F_T = 0.5 + 80.0 * u01(gen);
        const double r_star = solve_r_star(x0, spec, T, F_T);
        const double residual = accumulated_value(x0, spec, r_star, T) - F_T;
        CHECK(std::fabs(residual) < 1e-10 * std::max(1.0, F_T));
    }

    // a tiny gap may calibrate to a negative rate
    const double small_F = accumulated_value(1.0, base_case::linear_salary(), -0.02, 35.0);
    CHECK(solve_r_star(1.0, base_case::linear_salary(), 35.0, small_F) ==
          doctest::Approx(-0.02).epsilon(1e-8));
}

TEST_CASE("interim targets") {
    for (const auto& spec : {base_case::exponential_salary(), base_case::linear_salary()}) {
        const auto sched = base_case::schedule(spec);
        CHECK(interim_target(sched, 0.0) == doctest::Approx(base_case::kX0));
        // continuity at T after calibration
        CHECK(std::fabs(interim_target(sched, sched.T) - sched.final_target) <
              1e-8 * sched.final_target);
        // closed form vs quadrature mid-horizon
        const double mid = interim_target_quadrature(sched.x0, spec, sched.r_star, 17.5);
        CHECK(interim_target(sched, 17.5) == doctest::Approx(mid).epsilon(1e-9));
    }
}

TEST_CASE("interim target closed form matches quadrature on random draws") {
    std::mt19937 gen(23);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (int i = 0; i < 50; ++i) {
        const SalaryKind kind = i % 2 ? SalaryKind::Linear : SalaryKind::Exponential;
        const SalarySpec spec(kind, 0.5 + u01(gen), 0.09 * u01(gen), 0.02 + 0.2 * u01(gen));
        const double x0 = 2.0 * u01(gen);
        const double T = 10.0 + 30.0 * u01(gen);
        const double F_T = 1.0 + 60.0 * u01(gen);
        TargetSchedule sched(x0, spec, T, F_T);
        const double t = T * u01(gen);
        const double oracle = interim_target_quadrature(x0, spec, sched.r_star, t);
        CHECK(interim_target(sched, t) ==
              doctest::Approx(oracle).epsilon(1e-8).scale(1.0));
    }
}

TEST_CASE("target curve is strictly increasing for positive r*") {
    for (const auto& spec : {base_case::exponential_salary(), base_case::linear_salary()}) {
        const auto sched = base_case::schedule(spec);
        REQUIRE(sched.r_star > 0.0);
        double prev = interim_target(sched, 0.0);
        for (int i = 1; i <= 200; ++i) {
            const double cur = interim_target(sched, sched.T * i / 200.0);
            CHECK(cur > prev);
            prev = cur;
        }
    }
}
