#ifndef PENGAP_TARGETS_HPP
#define PENGAP_TARGETS_HPP

#include <cmath>

#include "pengap/errors.hpp"
#include "pengap/salary.hpp"

namespace pengap {

/// Final target: the lump sum that buys the missing pension at retirement,
/// F(T) = (P_o - P_n) * annuity.  May be <= 0 when the gap is already
/// closed; calibration rejects that case.
inline double final_target(double p_old, double p_new, double annuity) {
    return (p_old - p_new) * annuity;
}

// Value at time t of the initial fund plus contributions compounded at a
// constant rate. The calibration residual is accumulated_value(T) - F(T).
inline double accumulated_value(double x0, const SalarySpec& spec, double rate, double t) {
    return x0 * std::exp(rate * t) + spec.k * salary_accum_integral(spec, rate, t);
}

inline double accumulated_value_drate(double x0, const SalarySpec& spec, double rate,
                                      double t) {
    return x0 * t * std::exp(rate * t) + spec.k * salary_accum_integral_drate(spec, rate, t);
}

/// Solves accumulated_value(x0, spec, r*, T) = F_T for the unique r*.
/// Newton with the analytic derivative, bisection fallback on a grown
/// bracket; the accumulated value is strictly increasing in the rate.
inline double solve_r_star(double x0, const SalarySpec& spec, double T, double F_T,
                           double initial_guess = 0.015) {
    if (!(F_T > 0.0)) throw NonPositiveGap("final target must be > 0");
    if (!(x0 >= 0.0)) throw InvalidConfig("x0 must be >= 0");

    const double residual_tol = 1e-10 * std::max(1.0, F_T);
    const auto residual = [&](double rate) {
        return accumulated_value(x0, spec, rate, T) - F_T;
    };

    double rate = initial_guess;
    bool converged = false;
    for (int it = 0; it < 100; ++it) {
        const double f = residual(rate);
        const double df = accumulated_value_drate(x0, spec, rate, T);
        if (!(df > 0.0) || !std::isfinite(f)) break;
        const double step = f / df;
        rate -= step;
        if (!std::isfinite(rate) || std::fabs(rate) > 10.0) break;
        if (std::fabs(step) < 1e-12) {
            converged = true;
            break;
        }
    }
    if (converged && std::fabs(residual(rate)) <= residual_tol) return rate;

    // bisection on a geometrically grown bracket
    double lo = -0.5, hi = 1.0;
    for (int grow = 0; residual(lo) > 0.0 || residual(hi) < 0.0; ++grow) {
        if (grow >= 20) throw NoConvergence("could not bracket r*");
        lo *= 2.0;
        hi *= 2.0;
    }
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double f = residual(mid);
        if (std::fabs(f) <= residual_tol) return mid;
        (f < 0.0 ? lo : hi) = mid;
        if (hi - lo < 1e-15 * std::max(1.0, std::fabs(mid))) return mid;
    }
    throw NoConvergence("r* iteration cap hit");
}

/// Calibrated target curve: F(t) compounds fund and contributions at r*,
/// F(T) equals the final target by construction of r*.
struct TargetSchedule {
    double x0;
    double r_star;
    double T;
    double final_target;
    SalarySpec spec;

    TargetSchedule(double x0_, SalarySpec spec_, double T_, double F_T,
                   double initial_guess = 0.015)
        : x0(x0_), r_star(solve_r_star(x0_, spec_, T_, F_T, initial_guess)), T(T_),
          final_target(F_T), spec(spec_) {
        const double at_T = accumulated_value(x0, spec, r_star, T);
        if (std::fabs(at_T - F_T) > 1e-8 * std::fabs(F_T))
            throw NoConvergence("interim target does not meet final target at T");
    }
};

inline double interim_target(const TargetSchedule& sched, double t) {
    return accumulated_value(sched.x0, sched.spec, sched.r_star, t);
}

} // namespace pengap

#endif
