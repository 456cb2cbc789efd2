#ifndef PENGAP_CONTROL_HPP
#define PENGAP_CONTROL_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "pengap/errors.hpp"
#include "pengap/market.hpp"
#include "pengap/ode.hpp"
#include "pengap/quadrature.hpp"
#include "pengap/targets.hpp"

namespace pengap {

enum class RiccatiMode { ClosedForm, NumericalODE };

namespace detail {

inline constexpr double kDegenerate = 1e-9;
inline constexpr std::size_t kOdeSteps = 10000;

// alpha(t) = (1 - 1/a) e^{-a(T-t)} + 1/a, with the a -> 0 limit 1 + (T-t).
inline double alpha_closed(const MarketModel& m, double T, double t) {
    if (std::fabs(m.a) < 1e-12) return 1.0 + (T - t);
    return (1.0 - 1.0 / m.a) * std::exp(-m.a * (T - t)) + 1.0 / m.a;
}

// Printed solution of the beta ODE for the linear salary.  The one
// misprinted exponent in the source expression reads (T - t) here; note
// r - a~ = -a, so that term carries e^{-a(T-t)}.
inline double beta_closed_linear(const MarketModel& m, const TargetSchedule& sched,
                                 double t) {
    const double a = m.a, at = m.a_tilde, r = m.r;
    const double T = sched.T, rs = sched.r_star, g = sched.spec.g;
    const double kS0 = sched.spec.k * sched.spec.s0;
    const double k1 = 2.0 * kS0;
    const double k2 = 2.0 * kS0 / rs;
    const double k3 = 2.0 * sched.x0 + k2 + 2.0 * kS0 * g / (rs * rs);
    const double k4 = k1 * (1.0 - 1.0 / a);
    const double k5 = k1 / a + k2 * (1.0 + g / rs);

    const double e_at = std::exp(-at * (T - t)); // e^{-a~(T-t)}
    const double e_a = std::exp(-a * (T - t));   // e^{-a(T-t)}
    double beta = -2.0 * sched.final_target * e_at;
    beta += (k4 / r) * (1.0 + g / r) * e_a;
    beta += (k5 + k1 * g / (a * at) + k2 * g / at) / at;
    beta += (k4 * g / r) * t * e_a;
    beta += (g / at) * (k1 / a + k2) * t;
    beta += k3 / (rs - at) * (std::exp(rs * t) - std::exp(at * t + (rs - at) * T));
    beta -= (k4 / r + k5 / at + k4 * g / (r * r) + k1 * g / (a * at * at) +
             k2 * g / (at * at) + (k4 * g / r + k1 * g / (a * at) + k2 * g / at) * T) *
            e_at;
    return beta;
}

// Printed solution of the beta ODE for the exponential salary.
inline double beta_closed_exponential(const MarketModel& m, const TargetSchedule& sched,
                                      double t) {
    const double a = m.a, at = m.a_tilde, r = m.r;
    const double T = sched.T, rs = sched.r_star, g = sched.spec.g;
    const double kS0 = sched.spec.k * sched.spec.s0;
    const double k1 = 2.0 * kS0;
    const double kt2 = 2.0 * kS0 / (g - rs);
    const double kt3 = 2.0 * sched.x0 - kt2;
    const double kt4 = k1 / a - kt2;
    const double k4 = k1 * (1.0 - 1.0 / a);

    double beta = -2.0 * sched.final_target * std::exp(-at * (T - t));
    beta -= k4 / (g - r) * std::exp((g + a) * t - a * T);
    beta -= kt4 / (g - at) * std::exp(g * t);
    beta += (k4 / (g - r) + kt4 / (g - at)) * std::exp(at * t + (g - at) * T);
    beta -= kt3 / (rs - at) *
            (std::exp(at * t + (rs - at) * T) - std::exp(rs * t));
    return beta;
}

inline bool beta_closed_form_defined(const MarketModel& m, const TargetSchedule& sched) {
    const double rs = sched.r_star, g = sched.spec.g;
    if (std::fabs(m.a) < kDegenerate || std::fabs(m.a_tilde) < kDegenerate ||
        std::fabs(rs - m.a_tilde) < kDegenerate)
        return false;
    if (sched.spec.kind == SalaryKind::Linear)
        return std::fabs(m.r) >= kDegenerate && std::fabs(rs) >= kDegenerate;
    return std::fabs(g - m.r) >= kDegenerate && std::fabs(g - m.a_tilde) >= kDegenerate &&
           std::fabs(g - rs) >= kDegenerate;
}

inline double beta_closed(const MarketModel& m, const TargetSchedule& sched, double t) {
    return sched.spec.kind == SalaryKind::Linear ? beta_closed_linear(m, sched, t)
                                                 : beta_closed_exponential(m, sched, t);
}

} // namespace detail

/// Value-function coefficients for V(t,x) = e^{-rho t}[alpha x^2 + beta x + gamma].
/// The backward RK4 grid for beta is always built and is the ground truth;
/// the printed closed forms are used as a fast path only after agreeing
/// with the grid to 1e-6 relative.
struct RiccatiSolution {
    MarketModel market;
    TargetSchedule sched;
    RiccatiMode mode;
    bool closed_beta; // closed form validated and in use
    std::vector<double> beta_grid;
    double grid_step;
};

inline double alpha_at(const RiccatiSolution& sol, double t) {
    return detail::alpha_closed(sol.market, sol.sched.T, t);
}

inline double beta_at(const RiccatiSolution& sol, double t) {
    if (sol.closed_beta) return detail::beta_closed(sol.market, sol.sched, t);
    const double pos = std::clamp(t / sol.grid_step, 0.0,
                                  static_cast<double>(sol.beta_grid.size() - 1));
    const auto i = static_cast<std::size_t>(pos);
    if (i + 1 >= sol.beta_grid.size()) return sol.beta_grid.back();
    const double frac = pos - static_cast<double>(i);
    return (1.0 - frac) * sol.beta_grid[i] + frac * sol.beta_grid[i + 1];
}

inline RiccatiSolution make_riccati(const MarketModel& market, const TargetSchedule& sched,
                                    RiccatiMode mode = RiccatiMode::ClosedForm) {
    const double T = sched.T;
    const auto beta_rhs = [&](double t, double beta) {
        return market.a_tilde * beta + 2.0 * interim_target(sched, t) -
               2.0 * contribution_at(sched.spec, t) * detail::alpha_closed(market, T, t);
    };
    RiccatiSolution sol{market, sched, mode, false,
                       rk4_backward(beta_rhs, T, -2.0 * sched.final_target,
                                    detail::kOdeSteps),
                       T / static_cast<double>(detail::kOdeSteps)};

    if (mode == RiccatiMode::ClosedForm && detail::beta_closed_form_defined(market, sched)) {
        for (std::size_t i = 0; i < sol.beta_grid.size(); i += 100) {
            const double t = static_cast<double>(i) * sol.grid_step;
            const double closed = detail::beta_closed(market, sched, t);
            const double oracle = sol.beta_grid[i];
            if (std::fabs(closed - oracle) > 1e-6 * std::max(1.0, std::fabs(oracle)))
                throw ClosedFormMismatch("beta closed form disagrees with ODE at t = " +
                                         std::to_string(t));
        }
        sol.closed_beta = true;
    }
    return sol;
}

/// gamma(t) from its backward integral representation, by adaptive
/// quadrature over [t,T].  Reporting only; the strategy never uses it.
inline double gamma_at(const RiccatiSolution& sol, double t) {
    const MarketModel& m = sol.market;
    const double T = sol.sched.T;
    const double lambda2 = m.lambda * m.lambda;
    const auto integrand = [&](double s) {
        const double F = interim_target(sol.sched, s);
        const double beta = beta_at(sol, s);
        const double q = F * F + contribution_at(sol.sched.spec, s) * beta -
                         lambda2 * beta * beta / (4.0 * alpha_at(sol, s));
        return q * std::exp(-m.rho * (s - t));
    };
    const double FT = sol.sched.final_target;
    const double scale = std::max(1.0, FT * FT);
    return FT * FT * std::exp(-m.rho * (T - t)) +
           integrate(integrand, t, T, 1e-10 * scale);
}

/// Unconstrained optimal risky fraction at (t, x).
inline double optimal_fraction(const RiccatiSolution& sol, double t, double x) {
    if (x == 0.0) throw ZeroWealth("optimal fraction undefined at zero wealth");
    const MarketModel& m = sol.market;
    return -(m.lambda / m.sigma) * (1.0 + beta_at(sol, t) / (2.0 * alpha_at(sol, t) * x));
}

inline double clamp_fraction(double y) { return std::clamp(y, 0.0, 1.0); }

/// Fraction actually applied along a path: clamped to [0,1], with full
/// risky exposure at non-positive wealth (the x -> 0+ clamp limit when the
/// fund is below target).
inline double applied_fraction(const RiccatiSolution& sol, double t, double x) {
    if (x <= 0.0) return 1.0;
    return clamp_fraction(optimal_fraction(sol, t, x));
}

} // namespace pengap

#endif
