#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "schoenberg/eigen_solver.hpp"
#include "schoenberg/grid.hpp"
#include "schoenberg/operator.hpp"

namespace schoenberg {

inline constexpr double default_tol_one = 1e-8;

inline std::vector<std::complex<double>> eigenvalues(const CollocationMatrix& N) {
    auto eig = dense_eigenvalues(N.values);
    std::sort(eig.begin(), eig.end(), [](const auto& a, const auto& b) {
        const double ma = std::abs(a), mb = std::abs(b);
        if (ma != mb) return ma > mb;
        if (a.real() != b.real()) return a.real() > b.real();
        return a.imag() > b.imag();
    });
    return eig;
}

/// Spectrum of the operator through its collocation matrix.  gamma is the
/// spectral gap: the largest eigenvalue modulus outside the cluster
/// |lambda - 1| <= tol_one (0 if no eigenvalue lies outside it).
struct SpectrumResult {
    int degree;
    int intervals;
    std::vector<std::complex<double>> eigenvalues;  // sorted by descending modulus
    double gamma;
    int one_multiplicity;
    std::complex<double> gamma_attained_by;  // argmax eigenvalue, for inspection
    double tol_one;
    bool projector_case;  // k = 1: collocation matrix is the identity
    bool gap_ambiguous;   // some |lambda| in (1 - tol_one, 1] with |lambda - 1| > tol_one
};

inline SpectrumResult spectrum(const KnotVector& kv, double tol_one = default_tol_one) {
    if (kv.degree() < 1) throw std::invalid_argument("spectrum: degree must be >= 1");
    if (!(tol_one > 0.0 && tol_one <= 0.1))
        throw std::invalid_argument("spectrum: tol_one must lie in (0, 0.1]");
    const CollocationMatrix N = collocation_matrix(kv);
    SpectrumResult res;
    res.degree = kv.degree();
    res.intervals = kv.intervals();
    res.eigenvalues = eigenvalues(N);
    res.tol_one = tol_one;
    res.gamma = 0.0;
    res.one_multiplicity = 0;
    res.gamma_attained_by = 0.0;
    res.projector_case = (kv.degree() == 1);
    res.gap_ambiguous = false;
    for (const auto& lam : res.eigenvalues) {
        const double mod = std::abs(lam);
        if (std::abs(lam - 1.0) <= tol_one) {
            res.one_multiplicity++;
        } else {
            if (mod > res.gamma) {
                res.gamma = mod;
                res.gamma_attained_by = lam;
            }
            if (mod > 1.0 - tol_one) res.gap_ambiguous = true;
        }
    }
    return res;
}

/// Row discs of the collocation matrix: centers are the diagonal entries
/// N_j(xi_j), radii the off-diagonal row sums.  Row-stochasticity makes
/// every disc internally tangent to the unit circle at 1.
struct GershgorinDisc {
    double center;
    double radius;
};

struct GershgorinDiscs {
    std::vector<GershgorinDisc> discs;
};

inline GershgorinDiscs gershgorin_discs(const CollocationMatrix& N) {
    const std::size_t dim = N.values.rows();
    GershgorinDiscs out;
    out.discs.reserve(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        double radius = 0.0;
        for (std::size_t j = 0; j < dim; ++j)
            if (j != i) radius += N.values(i, j);
        out.discs.push_back(GershgorinDisc{N.values(i, i), radius});
    }
    return out;
}

/// Distance from lambda to the union of discs (0 if inside some disc).
inline double disc_distance(const GershgorinDiscs& g, std::complex<double> lambda) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& disc : g.discs)
        best = std::min(best, std::max(0.0, std::abs(lambda - disc.center) - disc.radius));
    return best;
}

/// Residuals of the two known fixed vectors: N*1 = 1 and N*xi = xi.
struct FixedVectorReport {
    double one_residual;
    double greville_residual;
    bool pass;
};

inline FixedVectorReport verify_fixed_vectors(const CollocationMatrix& N, const GrevilleNodes& xi,
                                              double tol = 1e-12) {
    const std::size_t dim = N.values.rows();
    if (xi.values().size() != dim)
        throw std::invalid_argument("verify_fixed_vectors: dimension mismatch");
    const std::vector<double> ones(dim, 1.0);
    const auto n_ones = N.values.multiply(ones);
    const auto n_xi = N.values.multiply(xi.values());
    double r1 = 0.0, rxi = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
        r1 = std::max(r1, std::fabs(n_ones[i] - 1.0));
        rxi = std::max(rxi, std::fabs(n_xi[i] - xi.values()[i]));
    }
    return FixedVectorReport{r1, rxi, r1 <= tol && rxi <= tol};
}

/// Least-squares fit of log(iterate distance) against m; rho = exp(slope)
/// estimates the geometric decay rate of S^m toward L.  The intercept is
/// reported as an empirical proxy for the constant in the decay bound.
struct DecayFit {
    double rho;
    double r_squared;
    double log_intercept;
    int points_used;
};

inline DecayFit decay_rate_estimate(const KnotVector& kv, const RealFunction& f, int m_min,
                                    int m_max, std::size_t grid = default_grid_points) {
    if (kv.degree() < 2)
        throw std::invalid_argument("decay_rate_estimate: requires degree >= 2 (k = 1 is a projector)");
    if (m_min < 1 || m_max - m_min < 5)
        throw std::invalid_argument("decay_rate_estimate: need m_min >= 1 and m_max - m_min >= 5");

    const CollocationMatrix N = collocation_matrix(kv);
    const AffineFunction lf = limit_operator(f);
    const auto xs = sup_grid(kv, grid);

    // cache basis values per grid point; only the coefficients change with m
    const int k = kv.degree();
    std::vector<int> spans(xs.size());
    std::vector<std::vector<double>> basis(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        spans[i] = find_span(kv, xs[i]);
        basis[i] = nonzero_basis(kv, spans[i], xs[i]);
    }

    std::vector<double> c = apply(kv, f).coeffs;
    for (int m = 1; m < m_min; ++m) c = N.values.multiply(c);

    std::vector<std::pair<int, double>> points;
    for (int m = m_min; m <= m_max; ++m) {
        if (m > m_min) c = N.values.multiply(c);
        double dist = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            double s = 0.0;
            for (int r = 0; r <= k; ++r)
                s += basis[i][static_cast<std::size_t>(r)] *
                     c[static_cast<std::size_t>(spans[i] - k + r)];
            dist = std::max(dist, std::fabs(s - lf(xs[i])));
        }
        if (m == m_min && dist <= 1e-13)
            throw std::invalid_argument("decay_rate_estimate: function is fixed by the operator");
        if (dist <= 1e-13) break;  // fit on the prefix above underflow
        points.emplace_back(m, std::log(dist));
    }
    if (points.size() < 3)
        throw std::runtime_error("decay_rate_estimate: fewer than 3 usable distances");

    const double n_pts = static_cast<double>(points.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& [m, ld] : points) {
        sx += m;
        sy += ld;
        sxx += static_cast<double>(m) * m;
        sxy += m * ld;
    }
    const double slope = (n_pts * sxy - sx * sy) / (n_pts * sxx - sx * sx);
    const double intercept = (sy - slope * sx) / n_pts;
    double ss_res = 0, ss_tot = 0;
    const double mean_y = sy / n_pts;
    for (const auto& [m, ld] : points) {
        const double fit = intercept + slope * m;
        ss_res += (ld - fit) * (ld - fit);
        ss_tot += (ld - mean_y) * (ld - mean_y);
    }
    const double r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
    return DecayFit{std::exp(slope), r2, intercept, static_cast<int>(points.size())};
}

}
