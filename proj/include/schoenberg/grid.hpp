#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "schoenberg/knots.hpp"

namespace schoenberg {

inline constexpr std::size_t default_grid_points = 10001;

/// points equally spaced values covering [0,1] inclusively.
inline std::vector<double> uniform_grid(std::size_t points) {
    if (points < 2) throw std::invalid_argument("uniform_grid: need at least 2 points");
    std::vector<double> xs(points);
    for (std::size_t i = 0; i < points; ++i)
        xs[i] = static_cast<double>(i) / static_cast<double>(points - 1);
    return xs;
}

/// Evaluation grid for sup-norm estimates: uniform points plus the knots
/// and Greville nodes of kv, sorted and deduplicated.
inline std::vector<double> sup_grid(const KnotVector& kv, std::size_t points = default_grid_points) {
    std::vector<double> xs = uniform_grid(points);
    xs.reserve(points + 2 * kv.knots().size());
    for (double t : kv.knots()) xs.push_back(t);
    if (kv.degree() >= 1) {
        const std::vector<double> xi = greville_nodes(kv).values();
        for (double t : xi) xs.push_back(t);
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    return xs;
}

template <typename F>
double max_abs_on(const std::vector<double>& xs, F&& f) {
    double best = 0.0;
    for (double x : xs) best = std::max(best, std::fabs(f(x)));
    return best;
}

}
