#ifndef PENGAP_ANALYSIS_HPP
#define PENGAP_ANALYSIS_HPP

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "pengap/errors.hpp"
#include "pengap/mortality.hpp"
#include "pengap/pension.hpp"
#include "pengap/salary.hpp"

namespace pengap {

enum class BreakEvenParam { ConversionBeta, GdpGrowth, SalaryGrowth };

/// Root search for P_o = P_n in one parameter, everything else pinned.
struct BreakEvenQuery {
    BreakEvenParam parameter;
    SalarySpec spec;
    PensionRules rules;
    double conversion_beta; // base-case 1/annuity
    double T;
    double lo;
    double hi;
};

inline double default_bracket_lo(BreakEvenParam p) {
    switch (p) {
    case BreakEvenParam::ConversionBeta: return 0.01;
    case BreakEvenParam::GdpGrowth: return 0.0;
    default: return 0.0;
    }
}

inline double default_bracket_hi(BreakEvenParam p) {
    switch (p) {
    case BreakEvenParam::ConversionBeta: return 0.3;
    case BreakEvenParam::GdpGrowth: return 0.15;
    default: return 0.1;
    }
}

/// P_o - P_n with the query's parameter set to `value`.
inline double pension_gap(const BreakEvenQuery& q, double value) {
    SalarySpec spec = q.spec;
    PensionRules rules = q.rules;
    double beta = q.conversion_beta;
    switch (q.parameter) {
    case BreakEvenParam::ConversionBeta: beta = value; break;
    case BreakEvenParam::GdpGrowth: rules.w = value; break;
    case BreakEvenParam::SalaryGrowth: spec.g = value; break;
    }
    const double p_old = old_pension(rules, q.T, salary_at(spec, q.T));
    const double p_new = new_pension(spec, rules, q.T, beta);
    return p_old - p_new;
}

/// Bisection on [lo, hi]; the gap is monotone there, so the root is unique.
inline double break_even(const BreakEvenQuery& q) {
    double lo = q.lo, hi = q.hi;
    double f_lo = pension_gap(q, lo);
    double f_hi = pension_gap(q, hi);
    if (f_lo == 0.0) return lo;
    if (f_hi == 0.0) return hi;
    if ((f_lo > 0.0) == (f_hi > 0.0))
        throw NoSignChange("P_o - P_n does not change sign on the bracket");
    while (hi - lo > 1e-8) {
        const double mid = 0.5 * (lo + hi);
        const double f_mid = pension_gap(q, mid);
        if (f_mid == 0.0) return mid;
        if ((f_mid > 0.0) == (f_lo > 0.0)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

/// One retirement-age row for a fixed salary kind: annuity, conversion
/// coefficient and both pensions with their replacement ratios.
struct AgeSweepRow {
    int retirement_age;
    double T;
    double annuity;
    double conversion_beta;
    double p_old;
    double p_new;
    double pi_old;
    double pi_new;
};

inline std::vector<AgeSweepRow> age_sweep(const std::vector<int>& ages, int entry_age,
                                          const SalarySpec& spec, const PensionRules& rules,
                                          const AnnuitySource& annuities,
                                          double annuity_rate) {
    std::vector<AgeSweepRow> rows;
    rows.reserve(ages.size());
    for (int age : ages) {
        const double T = age - entry_age;
        if (!(T > 0.0))
            throw InvalidConfig("retirement age " + std::to_string(age) +
                                " does not exceed entry age");
        const double annuity = annuity_factor(annuities, age, annuity_rate);
        const double beta = 1.0 / annuity;
        const double final_salary = salary_at(spec, T);
        const double p_old = old_pension(rules, T, final_salary);
        const double p_new = new_pension(spec, rules, T, beta);
        const auto [pi_old, pi_new] = replacement_ratios(p_old, p_new, final_salary);
        rows.push_back({age, T, annuity, beta, p_old, p_new, pi_old, pi_new});
    }
    return rows;
}

struct Histogram {
    std::vector<double> edges; // n_bins + 1, strictly increasing
    std::vector<std::size_t> counts;
    std::size_t total = 0;
};

/// Equal-width bins over [min, max]; the last bin is right-closed.
inline Histogram histogram(const std::vector<double>& samples, std::size_t n_bins) {
    if (samples.empty()) throw EmptySamples("histogram of empty sample set");
    if (n_bins < 1) throw InvalidConfig("n_bins must be >= 1");
    auto [lo_it, hi_it] = std::minmax_element(samples.begin(), samples.end());
    double lo = *lo_it, hi = *hi_it;
    if (lo == hi) { // degenerate support, e.g. a deterministic run
        lo -= 0.5;
        hi += 0.5;
    }
    Histogram h;
    h.edges.resize(n_bins + 1);
    const double width = (hi - lo) / static_cast<double>(n_bins);
    for (std::size_t i = 0; i <= n_bins; ++i)
        h.edges[i] = lo + width * static_cast<double>(i);
    h.edges.back() = hi;
    h.counts.assign(n_bins, 0);
    for (double s : samples) {
        auto bin = static_cast<std::size_t>((s - lo) / width);
        if (bin >= n_bins) bin = n_bins - 1;
        ++h.counts[bin];
    }
    h.total = samples.size();
    return h;
}

} // namespace pengap

#endif
