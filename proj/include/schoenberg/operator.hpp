#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "schoenberg/bspline.hpp"
#include "schoenberg/functions.hpp"
#include "schoenberg/grid.hpp"
#include "schoenberg/knots.hpp"
#include "schoenberg/matrix.hpp"

namespace schoenberg {

/// S f = sum_j f(xi_{j,k}) N_j: sample at the Greville nodes.
inline SplineFunction apply(const KnotVector& kv, const RealFunction& f) {
    const auto xi = greville_nodes(kv).values();
    std::vector<double> coeffs;
    coeffs.reserve(xi.size());
    for (double node : xi) {
        const double v = f(node);
        if (!std::isfinite(v))
            throw std::domain_error("apply: function not evaluable at a Greville node");
        coeffs.push_back(v);
    }
    return SplineFunction(kv, std::move(coeffs));
}

/// (n+k) x (n+k) matrix with entry (i,j) = N_j(xi_i), indices running over
/// -k,...,n-1 in order.  Non-negative and row-stochastic.
struct CollocationMatrix {
    int degree;
    int intervals;
    Matrix values;

    int dimension() const { return degree + intervals; }

    /// Entry by paper indices i, j in [-k, n-1].
    double entry(int i, int j) const {
        return values(static_cast<std::size_t>(i + degree), static_cast<std::size_t>(j + degree));
    }
};

inline CollocationMatrix collocation_matrix(const KnotVector& kv) {
    const int k = kv.degree();
    const int dim = kv.dimension();
    const auto xi = greville_nodes(kv).values();
    Matrix m(static_cast<std::size_t>(dim), static_cast<std::size_t>(dim));
    for (int i = 0; i < dim; ++i) {
        const double x = xi[static_cast<std::size_t>(i)];
        const int span = find_span(kv, x);
        const auto vals = nonzero_basis(kv, span, x);
        for (int r = 0; r <= k; ++r)
            m(static_cast<std::size_t>(i), static_cast<std::size_t>(span - k + r)) =
                vals[static_cast<std::size_t>(r)];
    }
    return CollocationMatrix{k, kv.intervals(), std::move(m)};
}

/// m-th iterate S^m f, computed in coefficient space: the coefficients are
/// N^{m-1} c with c_j = f(xi_j).  Exact because S maps into the spline
/// space after one application.
inline SplineFunction iterate(const KnotVector& kv, const RealFunction& f, int m) {
    if (m < 1) throw std::invalid_argument("iterate: m must be >= 1");
    SplineFunction s = apply(kv, f);
    if (m == 1) return s;
    const CollocationMatrix N = collocation_matrix(kv);
    std::vector<double> c = s.coeffs;
    for (int step = 1; step < m; ++step) c = N.values.multiply(c);
    return SplineFunction(kv, std::move(c));
}

/// Affine interpolation of f at the endpoints: (Lf)(x) = f(0) + (f(1)-f(0)) x.
struct AffineFunction {
    double at0;
    double at1;
    double operator()(double x) const { return at0 + (at1 - at0) * x; }
};

inline AffineFunction limit_operator(const RealFunction& f) {
    return AffineFunction{f(0.0), f(1.0)};
}

/// max over the evaluation grid of |S^m f - L f|.
inline double iterate_distance(const KnotVector& kv, const RealFunction& f, int m,
                               std::size_t grid = default_grid_points) {
    const SplineFunction s = iterate(kv, f, m);
    const AffineFunction lf = limit_operator(f);
    const auto xs = sup_grid(kv, grid);
    return max_abs_on(xs, [&](double x) { return eval_spline(s, x) - lf(x); });
}

}
