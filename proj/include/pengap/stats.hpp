#ifndef PENGAP_STATS_HPP
#define PENGAP_STATS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "pengap/errors.hpp"

namespace pengap {

// Linear-interpolation percentile on a copy of the samples, p in [0,100].
inline double percentile(std::vector<double> samples, double p) {
    if (samples.empty()) throw EmptySamples("percentile of empty sample set");
    std::sort(samples.begin(), samples.end());
    if (samples.size() == 1) return samples.front();
    const double rank = p / 100.0 * static_cast<double>(samples.size() - 1);
    const auto lo = static_cast<std::size_t>(rank);
    if (lo + 1 >= samples.size()) return samples.back();
    const double frac = rank - static_cast<double>(lo);
    return (1.0 - frac) * samples[lo] + frac * samples[lo + 1];
}

inline double mean(const std::vector<double>& samples) {
    if (samples.empty()) throw EmptySamples("mean of empty sample set");
    double total = 0.0;
    for (double s : samples) total += s;
    return total / static_cast<double>(samples.size());
}

// Sample standard deviation (n-1); zero for a single observation.
inline double stddev(const std::vector<double>& samples) {
    const double m = mean(samples);
    if (samples.size() < 2) return 0.0;
    double ss = 0.0;
    for (double s : samples) ss += (s - m) * (s - m);
    return std::sqrt(ss / static_cast<double>(samples.size() - 1));
}

} // namespace pengap

#endif
