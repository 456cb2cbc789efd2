#ifndef PENGAP_MORTALITY_HPP
#define PENGAP_MORTALITY_HPP

#include <cmath>
#include <istream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "pengap/errors.hpp"

namespace pengap {

/// One-year survival probabilities p_x for contiguous ages
/// min_age .. max_age (omega).
struct MortalityTable {
    int min_age = 0;
    std::vector<double> survival; // survival[i] = p_{min_age + i}

    int max_age() const { return min_age + static_cast<int>(survival.size()) - 1; }

    double p(int age) const {
        if (age < min_age || age > max_age())
            throw AgeOutOfTable("age " + std::to_string(age) + " not covered by table");
        return survival[static_cast<std::size_t>(age - min_age)];
    }
};

// CSV layout: header `age,p` (or `age,q`, with p = 1 - q), one row per age,
// ascending contiguous ages, dot-decimal probabilities.
inline MortalityTable load_mortality_table(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw MalformedRow("empty mortality stream");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    bool q_column;
    if (line == "age,p")
        q_column = false;
    else if (line == "age,q")
        q_column = true;
    else
        throw MalformedRow("expected header 'age,p' or 'age,q', got '" + line + "'");

    MortalityTable table;
    bool first = true;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw MalformedRow("line " + std::to_string(line_no) + ": missing comma");
        int age;
        double prob;
        std::size_t used = 0;
        try {
            age = std::stoi(line.substr(0, comma), &used);
            if (used != comma) throw std::invalid_argument("trailing junk");
            const std::string val = line.substr(comma + 1);
            prob = std::stod(val, &used);
            if (used != val.size()) throw std::invalid_argument("trailing junk");
        } catch (const std::exception&) {
            throw MalformedRow("line " + std::to_string(line_no) + ": '" + line + "'");
        }
        if (q_column) prob = 1.0 - prob;
        if (!(prob >= 0.0 && prob <= 1.0))
            throw ProbabilityOutOfRange("line " + std::to_string(line_no) +
                                        ": probability outside [0,1]");
        if (first) {
            table.min_age = age;
            first = false;
        } else if (age != table.max_age() + 1) {
            throw NonContiguousAges("line " + std::to_string(line_no) +
                                    ": expected age " + std::to_string(table.max_age() + 1));
        }
        table.survival.push_back(prob);
    }
    if (table.survival.empty()) throw MalformedRow("no data rows");
    return table;
}

/// Either a mortality table priced at a discount rate, or explicit
/// age -> annuity overrides (so published annuity values can be used
/// directly when the underlying table is unavailable).
struct AnnuitySource {
    MortalityTable table;           // used when overrides is empty
    std::map<int, double> overrides;

    static AnnuitySource from_table(MortalityTable t) {
        AnnuitySource src;
        src.table = std::move(t);
        return src;
    }

    static AnnuitySource from_overrides(std::map<int, double> values) {
        for (const auto& [age, value] : values)
            if (!(value > 0.0))
                throw InvalidConfig("annuity override at age " + std::to_string(age) +
                                    " must be > 0");
        AnnuitySource src;
        src.overrides = std::move(values);
        return src;
    }

    bool override_mode() const { return !overrides.empty(); }
};

// a"_x = sum_{n=1}^{omega-x} np_x v^n with v = 1/(1+rate).  In override
// mode the stored value is returned and the rate is ignored.
inline double annuity_factor(const AnnuitySource& src, int age, double rate) {
    if (src.override_mode()) {
        const auto it = src.overrides.find(age);
        if (it == src.overrides.end())
            throw AgeOutOfTable("no annuity override for age " + std::to_string(age));
        return it->second;
    }
    const MortalityTable& t = src.table;
    if (age < t.min_age || age > t.max_age())
        throw AgeOutOfTable("age " + std::to_string(age) + " not covered by table");
    const double v = 1.0 / (1.0 + rate);
    double survive = 1.0; // np_x
    double discount = 1.0;
    double total = 0.0;
    for (int n = 1; n <= t.max_age() - age; ++n) {
        survive *= t.p(age + n - 1);
        discount *= v;
        total += survive * discount;
        if (survive == 0.0) break;
    }
    return total;
}

} // namespace pengap

#endif
