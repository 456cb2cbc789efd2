#ifndef PENGAP_SALARY_HPP
#define PENGAP_SALARY_HPP

#include <cmath>

#include "pengap/errors.hpp"
#include "pengap/math.hpp"

namespace pengap {

enum class SalaryKind { Linear, Exponential };

/// Salary path S(t) together with the fund contribution fraction k,
/// so the contribution rate is c(t) = k * S(t).
struct SalarySpec {
    SalaryKind kind;
    double s0; // initial salary
    double g;  // mean real salary growth per year
    double k;  // fund contribution fraction

    SalarySpec(SalaryKind kind_, double s0_, double g_, double k_)
        : kind(kind_), s0(s0_), g(g_), k(k_) {
        if (!(s0 > 0.0)) throw InvalidConfig("s0 must be > 0");
        if (!(k > 0.0 && k < 1.0)) throw InvalidConfig("k must be in (0,1)");
        if (!(g >= 0.0)) throw InvalidConfig("g must be >= 0");
    }
};

inline double salary_at(const SalarySpec& spec, double t) {
    return spec.kind == SalaryKind::Linear ? spec.s0 * (1.0 + spec.g * t)
                                           : spec.s0 * std::exp(spec.g * t);
}

inline double contribution_at(const SalarySpec& spec, double t) {
    return spec.k * salary_at(spec, t);
}

// int_0^t S(s) e^{rate (t - s)} ds, evaluated in closed form.  The same
// kernel backs the continuous new-pension formula (rate = w), the target
// calibration residual and the interim targets (rate = r*).
inline double salary_accum_integral(const SalarySpec& spec, double rate, double t) {
    const double growth = std::exp(rate * t);
    if (spec.kind == SalaryKind::Exponential)
        return spec.s0 * growth * growth_integral0(spec.g - rate, t);
    return spec.s0 * growth *
           (growth_integral0(-rate, t) + spec.g * growth_integral1(-rate, t));
}

// d/drate of salary_accum_integral, also closed form.
inline double salary_accum_integral_drate(const SalarySpec& spec, double rate, double t) {
    const double base = salary_accum_integral(spec, rate, t);
    const double growth = std::exp(rate * t);
    double first_moment;
    if (spec.kind == SalaryKind::Exponential)
        first_moment = spec.s0 * growth_integral1(spec.g - rate, t);
    else
        first_moment = spec.s0 *
                       (growth_integral1(-rate, t) + spec.g * growth_integral2(-rate, t));
    return t * base - growth * first_moment;
}

} // namespace pengap

#endif
