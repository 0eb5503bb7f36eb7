#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "schoenberg/functions.hpp"

namespace schoenberg {

inline constexpr int default_h_steps = 64;
inline constexpr int default_x_steps = 4096;

namespace detail {

// Alternating binomial sum; callers guarantee the stencil stays in [0,1].
template <typename F>
double forward_difference_sum(F&& f, double x, double h, int r) {
    double sum = 0.0;
    double binom = 1.0;
    for (int l = 0; l <= r; ++l) {
        const double sign = ((r - l) % 2 == 0) ? 1.0 : -1.0;
        sum += sign * binom * f(x + l * h);
        binom = binom * (r - l) / (l + 1);
    }
    return sum;
}

}

/// Forward difference Delta_h^r f(x) = sum_{l=0}^r (-1)^{r-l} C(r,l) f(x+lh).
inline double forward_difference(const RealFunction& f, double x, double h, int r) {
    if (r < 1) throw std::invalid_argument("forward_difference: order must be >= 1");
    if (!(h > 0.0)) throw std::invalid_argument("forward_difference: step must be positive");
    if (x < 0.0 || x + r * h > 1.0)
        throw std::domain_error("forward_difference: stencil leaves [0,1]");
    return detail::forward_difference_sum(f, x, h, r);
}

/// Grid estimate of the r-th modulus of smoothness omega_r(f, t).
///
/// The sup over 0 < h < t is replaced by a max over h = t*i/h_steps,
/// i = 1..h_steps (h = t included: |Delta_h^r f| is continuous in h, so
/// the open sup equals the closed max), and x runs over a uniform grid on
/// [0, 1-rh].  A grid max never exceeds the true sup, so the estimate is
/// a lower bound of omega_r(f, t) up to rounding.
struct ModulusEstimate {
    double value;
    int r;
    double t;
    int h_grid_size;
    int x_grid_size;
};

inline ModulusEstimate modulus(const RealFunction& f, int r, double t,
                               int h_steps = default_h_steps, int x_steps = default_x_steps) {
    if (r < 1) throw std::invalid_argument("modulus: order must be >= 1");
    if (!(t > 0.0 && t <= 1.0 / r))
        throw std::invalid_argument("modulus: t must lie in (0, 1/r]");
    if (h_steps < 1 || x_steps < 1) throw std::invalid_argument("modulus: degenerate grid");

    // rounding in 1 - rh can push the last stencil one ulp past 1
    const auto safe_f = [&f](double u) { return f(std::min(u, 1.0)); };
    double best = 0.0;
    for (int i = 1; i <= h_steps; ++i) {
        const double h = t * (static_cast<double>(i) / h_steps);
        const double x_max = 1.0 - r * h;
        if (x_max < 0.0) continue;
        for (int jx = 0; jx <= x_steps; ++jx) {
            const double x = x_max * (static_cast<double>(jx) / x_steps);
            best = std::max(best, std::fabs(detail::forward_difference_sum(safe_f, x, h, r)));
        }
    }
    return ModulusEstimate{best, r, t, h_steps, x_steps};
}

}
