#ifndef PENGAP_PENSION_HPP
#define PENGAP_PENSION_HPP

#include <cmath>
#include <utility>

#include "pengap/errors.hpp"
#include "pengap/salary.hpp"

namespace pengap {

/// Public pension rules: old-system accrual rate, public contribution
/// fraction c and mean real GDP growth w used to revalue contributions.
struct PensionRules {
    double accrual = 0.02;
    double c = 0.33;
    double w = 0.0;

    PensionRules() = default;
    PensionRules(double accrual_, double c_, double w_) : accrual(accrual_), c(c_), w(w_) {
        if (!(accrual > 0.0)) throw InvalidConfig("accrual must be > 0");
        if (!(c > 0.0 && c < 1.0)) throw InvalidConfig("c must be in (0,1)");
    }
};

/// Salary-related pension: accrual * T * S(T).
inline double old_pension(const PensionRules& rules, double T, double final_salary) {
    return rules.accrual * T * final_salary;
}

/// Contribution-based pension, continuous formulation:
///   P_n = beta * c * int_0^T S(t) e^{w(T-t)} dt
/// evaluated in closed form (degenerate w and g-w handled by limits).
inline double new_pension(const SalarySpec& spec, const PensionRules& rules, double T,
                          double beta) {
    return beta * rules.c * salary_accum_integral(spec, rules.w, T);
}

/// Discrete-sum variant beta * c * sum_{t=0}^{T-1} S(t)(1+w)^{T-t}.
/// Kept for comparison with the statutory year-by-year formula; the
/// pipeline itself uses the continuous new_pension above.
inline double new_pension_discrete(const SalarySpec& spec, const PensionRules& rules, int T,
                                   double beta) {
    double total = 0.0;
    for (int t = 0; t < T; ++t)
        total += salary_at(spec, static_cast<double>(t)) *
                 std::pow(1.0 + rules.w, static_cast<double>(T - t));
    return beta * rules.c * total;
}

/// (Pi_o, Pi_n): each pension over the final salary.
inline std::pair<double, double> replacement_ratios(double p_old, double p_new,
                                                    double final_salary) {
    return {p_old / final_salary, p_new / final_salary};
}

} // namespace pengap

#endif
