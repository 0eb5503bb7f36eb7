#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "schoenberg/grid.hpp"
#include "schoenberg/knots.hpp"

namespace schoenberg {

/// Storage index of the knot span containing x: the unique mu with
/// T[mu] <= x < T[mu+1] among the nonempty spans, except that x = 1 maps
/// to the last nonempty span (left-limit convention).
inline int find_span(const KnotVector& kv, double x) {
    if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("find_span: x outside [0,1]");
    const int k = kv.degree();
    const int n = kv.intervals();
    if (x >= 1.0) return n + k - 1;
    const auto& t = kv.knots();
    // nonempty spans have storage index in [k, n+k-1]
    int lo = k, hi = n + k - 1;
    while (lo < hi) {
        const int mid = (lo + hi + 1) / 2;
        if (t[static_cast<std::size_t>(mid)] <= x) lo = mid;
        else hi = mid - 1;
    }
    return lo;
}

/// Values of the k+1 B-splines that are nonzero on the span mu, i.e.
/// N_{mu-k},...,N_{mu} in storage indexing, via the two-term degree-raising
/// recursion (0/0 := 0).
inline std::vector<double> nonzero_basis(const KnotVector& kv, int span, double x) {
    const int k = kv.degree();
    const auto& t = kv.knots();
    std::vector<double> vals(static_cast<std::size_t>(k) + 1, 0.0);
    std::vector<double> left(static_cast<std::size_t>(k) + 1), right(static_cast<std::size_t>(k) + 1);
    vals[0] = 1.0;
    for (int d = 1; d <= k; ++d) {
        left[static_cast<std::size_t>(d)] = x - t[static_cast<std::size_t>(span + 1 - d)];
        right[static_cast<std::size_t>(d)] = t[static_cast<std::size_t>(span + d)] - x;
        double saved = 0.0;
        for (int r = 0; r < d; ++r) {
            const double denom = right[static_cast<std::size_t>(r + 1)] + left[static_cast<std::size_t>(d - r)];
            const double temp = denom != 0.0 ? vals[static_cast<std::size_t>(r)] / denom : 0.0;
            vals[static_cast<std::size_t>(r)] = saved + right[static_cast<std::size_t>(r + 1)] * temp;
            saved = left[static_cast<std::size_t>(d - r)] * temp;
        }
        vals[static_cast<std::size_t>(d)] = saved;
    }
    return vals;
}

/// N_{j,k}(x) for paper index j in [-k, n-1]; at x = 1 the left-limit value.
inline double eval_basis(const KnotVector& kv, int j, double x) {
    const int k = kv.degree();
    const int n = kv.intervals();
    if (j < -k || j > n - 1) throw std::out_of_range("eval_basis: basis index out of range");
    if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("eval_basis: x outside [0,1]");
    const int span = find_span(kv, x);
    const int a = j + k;  // storage index
    if (a < span - k || a > span) return 0.0;
    return nonzero_basis(kv, span, x)[static_cast<std::size_t>(a - span + k)];
}

namespace detail {

// (t-x)_+^k, literally 0 for t <= x.
inline double truncated_power(double t, double x, int k) {
    const double s = t - x;
    if (s <= 0.0) return 0.0;
    return k == 0 ? 1.0 : std::pow(s, k);
}

// m-th derivative in t of (t-x)_+^k; zero branch at the kink t == x,
// matching the truncated power being defined as 0 for t <= x.
inline double truncated_power_derivative(double t, double x, int k, int m) {
    if (m > k) return 0.0;
    const double s = t - x;
    if (s <= 0.0) return 0.0;
    double falling = 1.0;
    for (int i = 0; i < m; ++i) falling *= static_cast<double>(k - i);
    const int p = k - m;
    return p == 0 ? falling : falling * std::pow(s, p);
}

inline double factorial(int m) {
    double f = 1.0;
    for (int i = 2; i <= m; ++i) f *= static_cast<double>(i);
    return f;
}

}

/// N_{j,k}(x) through the divided-difference definition
/// (x_{j+k+1}-x_j)[x_j,...,x_{j+k+1}](.-x)_+^k, with the confluent
/// (derivative-based) extension of the table at repeated boundary knots.
/// Independent of eval_basis; serves as a cross-check oracle.
///
/// Outside the open support the divided difference is that of a plain
/// degree-k polynomial (or of zero) and vanishes identically; those cases
/// return exact 0 rather than accumulating cancellation noise.
inline double eval_basis_divdiff(const KnotVector& kv, int j, double x) {
    const int k = kv.degree();
    const int n = kv.intervals();
    if (j < -k || j > n - 1) throw std::out_of_range("eval_basis_divdiff: basis index out of range");
    if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("eval_basis_divdiff: x outside [0,1]");
    if (x == 0.0) return j == -k ? 1.0 : 0.0;
    if (x == 1.0) return j == n - 1 ? 1.0 : 0.0;  // left-limit convention

    std::vector<double> t(static_cast<std::size_t>(k) + 2);
    for (int i = 0; i <= k + 1; ++i) t[static_cast<std::size_t>(i)] = kv.knot(j + i);
    if (x <= t.front() || x >= t.back()) return 0.0;

    std::vector<double> col(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) col[i] = detail::truncated_power(t[i], x, k);
    for (int m = 1; m <= k + 1; ++m) {
        for (int i = 0; i + m <= k + 1; ++i) {
            const double span = t[static_cast<std::size_t>(i + m)] - t[static_cast<std::size_t>(i)];
            if (span == 0.0)
                col[static_cast<std::size_t>(i)] =
                    detail::truncated_power_derivative(t[static_cast<std::size_t>(i)], x, k, m) / detail::factorial(m);
            else
                col[static_cast<std::size_t>(i)] =
                    (col[static_cast<std::size_t>(i + 1)] - col[static_cast<std::size_t>(i)]) / span;
        }
    }
    return (t.back() - t.front()) * col.front();
}

/// Spline in S(Delta_n, k): coefficients c_j, j = -k,...,n-1, over the
/// normalized B-spline basis of kv.
struct SplineFunction {
    KnotVector kv;
    std::vector<double> coeffs;

    SplineFunction(KnotVector knot_vector, std::vector<double> c)
        : kv(std::move(knot_vector)), coeffs(std::move(c)) {
        if (static_cast<int>(coeffs.size()) != kv.dimension())
            throw std::invalid_argument("SplineFunction: coefficient count must equal n+k");
    }

    /// Coefficient by paper index j in [-k, n-1].
    double coeff(int j) const { return coeffs[static_cast<std::size_t>(j + kv.degree())]; }
};

inline double eval_spline(const SplineFunction& s, double x) {
    if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("eval_spline: x outside [0,1]");
    const int k = s.kv.degree();
    const int span = find_span(s.kv, x);
    const auto vals = nonzero_basis(s.kv, span, x);
    double sum = 0.0;
    for (int r = 0; r <= k; ++r)
        sum += vals[static_cast<std::size_t>(r)] * s.coeffs[static_cast<std::size_t>(span - k + r)];
    return sum;
}

/// First derivative as a spline of degree k-1 over the knot sequence with
/// one boundary knot dropped at each end:
///   Ds = sum_{j=1-k}^{n-1} (c_j - c_{j-1}) / (xi_j - xi_{j-1}) N_{j,k-1}.
inline SplineFunction derivative(const SplineFunction& s) {
    const int k = s.kv.degree();
    if (k == 0) throw std::invalid_argument("derivative: spline is already piecewise constant");
    const int n = s.kv.intervals();
    const GrevilleNodes xi = greville_nodes(s.kv);
    std::vector<double> d;
    d.reserve(static_cast<std::size_t>(n + k - 1));
    for (int j = 1 - k; j <= n - 1; ++j)
        d.push_back((s.coeff(j) - s.coeff(j - 1)) / (xi.node(j) - xi.node(j - 1)));
    return SplineFunction(KnotVector(k - 1, s.kv.interior()), std::move(d));
}

/// l-fold derivative, 1 <= l < k.
inline SplineFunction derivative_power(const SplineFunction& s, int l) {
    const int k = s.kv.degree();
    if (l < 1 || l >= k) throw std::invalid_argument("derivative_power: requires 1 <= l < k");
    SplineFunction out = derivative(s);
    for (int i = 1; i < l; ++i) out = derivative(out);
    return out;
}

/// Empirical condition of the basis in sup norm: a certified-from-below
/// sample estimate of d_k on this knot vector, next to the literature
/// upper bound k*2^k.
struct BasisConditionEstimate {
    double lower_estimate;
    double certified_upper;
};

inline BasisConditionEstimate estimate_basis_condition(const KnotVector& kv, int trials,
                                                       std::size_t grid) {
    const int k = kv.degree();
    const int dim = kv.dimension();
    if (trials < 1) throw std::invalid_argument("estimate_basis_condition: trials must be >= 1");
    if (grid < 10 * static_cast<std::size_t>(dim))
        throw std::invalid_argument("estimate_basis_condition: degenerate grid");

    const auto xs = sup_grid(kv, grid);

    std::vector<std::vector<double>> candidates;
    candidates.emplace_back(static_cast<std::size_t>(dim), 1.0);  // proves d_k >= 1
    for (int start : {0, 1}) {
        std::vector<double> alt(static_cast<std::size_t>(dim));
        for (int i = 0; i < dim; ++i) alt[static_cast<std::size_t>(i)] = ((i + start) % 2 == 0) ? 1.0 : -1.0;
        candidates.push_back(std::move(alt));
    }
    std::mt19937_64 rng(0x5eedULL);
    for (int tcase = 0; tcase < trials; ++tcase) {
        std::vector<double> c(static_cast<std::size_t>(dim));
        for (auto& v : c) v = (rng() & 1ULL) ? 1.0 : -1.0;
        candidates.push_back(std::move(c));
    }

    std::vector<double> sup(candidates.size(), 0.0);
    std::vector<double> basis_sup(static_cast<std::size_t>(dim), 0.0);  // per-basis sup for unit vectors
    for (double x : xs) {
        const int span = find_span(kv, x);
        const auto vals = nonzero_basis(kv, span, x);
        for (int r = 0; r <= k; ++r) {
            const std::size_t a = static_cast<std::size_t>(span - k + r);
            basis_sup[a] = std::max(basis_sup[a], vals[static_cast<std::size_t>(r)]);
        }
        for (std::size_t ci = 0; ci < candidates.size(); ++ci) {
            double s = 0.0;
            for (int r = 0; r <= k; ++r)
                s += vals[static_cast<std::size_t>(r)] * candidates[ci][static_cast<std::size_t>(span - k + r)];
            sup[ci] = std::max(sup[ci], std::fabs(s));
        }
    }

    double lower = 1.0;  // the all-ones candidate realizes 1 exactly
    for (std::size_t ci = 0; ci < candidates.size(); ++ci)
        if (sup[ci] > 0.0) lower = std::max(lower, 1.0 / sup[ci]);
    for (double bs : basis_sup)
        if (bs > 0.0) lower = std::max(lower, 1.0 / bs);

    const double upper = static_cast<double>(k) * std::pow(2.0, k);
    return BasisConditionEstimate{lower, upper};
}

}
