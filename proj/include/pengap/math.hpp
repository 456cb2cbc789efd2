#ifndef PENGAP_MATH_HPP
#define PENGAP_MATH_HPP

#include <cmath>
#include <cstddef>

namespace pengap {

// Moments of the exponential over [0,t]:
//   growth_integral0(th, t) = int_0^t e^{th s} ds
//   growth_integral1(th, t) = int_0^t s e^{th s} ds
//   growth_integral2(th, t) = int_0^t s^2 e^{th s} ds
// Small |th*t| switches to a truncated series so the th -> 0 limits are
// continuous and free of cancellation.

inline constexpr double kSeriesSwitch = 1e-5;

inline double growth_integral0(double th, double t) {
    const double z = th * t;
    if (std::fabs(z) < kSeriesSwitch)
        return t * (1.0 + z / 2.0 + z * z / 6.0 + z * z * z / 24.0 + z * z * z * z / 120.0);
    return std::expm1(z) / th;
}

inline double growth_integral1(double th, double t) {
    const double z = th * t;
    if (std::fabs(z) < kSeriesSwitch)
        return t * t * (0.5 + z / 3.0 + z * z / 8.0 + z * z * z / 30.0 + z * z * z * z / 144.0);
    return (t * std::exp(z) - growth_integral0(th, t)) / th;
}

inline double growth_integral2(double th, double t) {
    const double z = th * t;
    if (std::fabs(z) < kSeriesSwitch)
        return t * t * t * (1.0 / 3.0 + z / 4.0 + z * z / 10.0 + z * z * z / 36.0 + z * z * z * z / 168.0);
    return (t * t * std::exp(z) - 2.0 * growth_integral1(th, t)) / th;
}

inline bool nearly_equal(double x, double y, double rel_tol, double abs_floor = 1.0) {
    return std::fabs(x - y) <= rel_tol * std::max(std::fabs(y), abs_floor);
}

} // namespace pengap

#endif
