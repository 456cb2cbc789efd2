#ifndef PENGAP_ODE_HPP
#define PENGAP_ODE_HPP

#include <cstddef>
#include <vector>

namespace pengap {

// Fixed-step RK4 integration of y' = f(t, y) backward from t = t_end to t = 0,
// given y(t_end). Returns the solution on the uniform ascending grid
// t_i = i * t_end / n_steps, i = 0..n_steps.
template <class F>
std::vector<double> rk4_backward(const F& f, double t_end, double y_end, std::size_t n_steps) {
    std::vector<double> grid(n_steps + 1);
    const double h = t_end / static_cast<double>(n_steps);
    grid[n_steps] = y_end;
    double y = y_end;
    for (std::size_t i = n_steps; i > 0; --i) {
        const double t = static_cast<double>(i) * h;
        // step of size -h
        const double s1 = f(t, y);
        const double s2 = f(t - 0.5 * h, y - 0.5 * h * s1);
        const double s3 = f(t - 0.5 * h, y - 0.5 * h * s2);
        const double s4 = f(t - h, y - h * s3);
        y -= h / 6.0 * (s1 + 2.0 * s2 + 2.0 * s3 + s4);
        grid[i - 1] = y;
    }
    return grid;
}

} // namespace pengap

#endif
