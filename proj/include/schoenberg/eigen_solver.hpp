#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "schoenberg/matrix.hpp"

namespace schoenberg {

/// Raised when the shifted QR iteration fails to deflate within its
/// iteration budget.  Never silently truncates the eigenvalue list.
struct EigenSolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline constexpr std::size_t eigen_dimension_cap = 2000;

namespace detail {

// Diagonal similarity scaling so row and column norms are comparable
// (radix-2 balancing; eigenvalues are unchanged).
inline void balance(Matrix& a) {
    const std::size_t n = a.rows();
    const double radix = 2.0, sqrdx = radix * radix;
    bool done = false;
    while (!done) {
        done = true;
        for (std::size_t i = 0; i < n; ++i) {
            double r = 0.0, c = 0.0;
            for (std::size_t j = 0; j < n; ++j)
                if (j != i) {
                    c += std::fabs(a(j, i));
                    r += std::fabs(a(i, j));
                }
            if (c != 0.0 && r != 0.0) {
                double g = r / radix, f = 1.0;
                const double s = c + r;
                while (c < g) {
                    f *= radix;
                    c *= sqrdx;
                }
                g = r * radix;
                while (c > g) {
                    f /= radix;
                    c /= sqrdx;
                }
                if ((c + r) / f < 0.95 * s) {
                    done = false;
                    g = 1.0 / f;
                    for (std::size_t j = 0; j < n; ++j) a(i, j) *= g;
                    for (std::size_t j = 0; j < n; ++j) a(j, i) *= f;
                }
            }
        }
    }
}

// Householder reduction to upper Hessenberg form (no transform
// accumulation; only eigenvalues are wanted).
inline void hessenberg(Matrix& h) {
    const std::size_t n = h.rows();
    if (n < 3) return;
    const std::size_t high = n - 1;
    std::vector<double> ort(n, 0.0);
    for (std::size_t m = 1; m <= high - 1; ++m) {
        double scale = 0.0;
        for (std::size_t i = m; i <= high; ++i) scale += std::fabs(h(i, m - 1));
        if (scale == 0.0) continue;

        double hh = 0.0;
        for (std::size_t i = high; i >= m; --i) {
            ort[i] = h(i, m - 1) / scale;
            hh += ort[i] * ort[i];
            if (i == m) break;
        }
        double g = std::sqrt(hh);
        if (ort[m] > 0.0) g = -g;
        hh -= ort[m] * g;
        ort[m] -= g;

        for (std::size_t j = m; j < n; ++j) {
            double f = 0.0;
            for (std::size_t i = high; i >= m; --i) {
                f += ort[i] * h(i, j);
                if (i == m) break;
            }
            f /= hh;
            for (std::size_t i = m; i <= high; ++i) h(i, j) -= f * ort[i];
        }
        for (std::size_t i = 0; i <= high; ++i) {
            double f = 0.0;
            for (std::size_t j = high; j >= m; --j) {
                f += ort[j] * h(i, j);
                if (j == m) break;
            }
            f /= hh;
            for (std::size_t j = m; j <= high; ++j) h(i, j) -= f * ort[j];
        }
        ort[m] *= scale;
        h(m, m - 1) = scale * g;
    }
}

// Francis implicit double-shift QR on an upper Hessenberg matrix,
// eigenvalues only, with deflation and exceptional shifts.
inline void hqr_eigenvalues(Matrix& H, std::vector<double>& d, std::vector<double>& e) {
    const int nn = static_cast<int>(H.rows());
    auto h = [&H](int i, int j) -> double& {
        return H(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
    };
    d.assign(static_cast<std::size_t>(nn), 0.0);
    e.assign(static_cast<std::size_t>(nn), 0.0);

    int n = nn - 1;
    const int low = 0;
    const double eps = std::pow(2.0, -52.0);
    double exshift = 0.0;
    double p = 0, q = 0, r = 0, s = 0, z = 0, w, x, y;

    double norm = 0.0;
    for (int i = 0; i < nn; ++i)
        for (int j = std::max(i - 1, 0); j < nn; ++j) norm += std::fabs(h(i, j));

    int iter = 0;
    long total_iter = 0;
    const long total_cap = 50L * std::max(nn, 1);
    while (n >= low) {
        // single small subdiagonal element?
        int l = n;
        while (l > low) {
            s = std::fabs(h(l - 1, l - 1)) + std::fabs(h(l, l));
            if (s == 0.0) s = norm;
            if (std::fabs(h(l, l - 1)) < eps * s) break;
            l--;
        }

        if (l == n) {
            // one real root
            h(n, n) += exshift;
            d[static_cast<std::size_t>(n)] = h(n, n);
            e[static_cast<std::size_t>(n)] = 0.0;
            n--;
            iter = 0;
        } else if (l == n - 1) {
            // a 2x2 block: real or complex conjugate pair
            w = h(n, n - 1) * h(n - 1, n);
            p = (h(n - 1, n - 1) - h(n, n)) / 2.0;
            q = p * p + w;
            z = std::sqrt(std::fabs(q));
            h(n, n) += exshift;
            h(n - 1, n - 1) += exshift;
            x = h(n, n);
            if (q >= 0) {
                z = (p >= 0) ? p + z : p - z;
                d[static_cast<std::size_t>(n - 1)] = x + z;
                d[static_cast<std::size_t>(n)] =
                    (z != 0.0) ? x - w / z : d[static_cast<std::size_t>(n - 1)];
                e[static_cast<std::size_t>(n - 1)] = 0.0;
                e[static_cast<std::size_t>(n)] = 0.0;
            } else {
                d[static_cast<std::size_t>(n - 1)] = x + p;
                d[static_cast<std::size_t>(n)] = x + p;
                e[static_cast<std::size_t>(n - 1)] = z;
                e[static_cast<std::size_t>(n)] = -z;
            }
            n -= 2;
            iter = 0;
        } else {
            // form shift
            x = h(n, n);
            y = 0.0;
            w = 0.0;
            if (l < n) {
                y = h(n - 1, n - 1);
                w = h(n, n - 1) * h(n - 1, n);
            }
            if (iter == 10) {
                // exceptional shift (Wilkinson)
                exshift += x;
                for (int i = low; i <= n; ++i) h(i, i) -= x;
                s = std::fabs(h(n, n - 1)) + std::fabs(h(n - 1, n - 2));
                x = y = 0.75 * s;
                w = -0.4375 * s * s;
            }
            if (iter == 30) {
                s = (y - x) / 2.0;
                s = s * s + w;
                if (s > 0) {
                    s = std::sqrt(s);
                    if (y < x) s = -s;
                    s = x - w / ((y - x) / 2.0 + s);
                    for (int i = low; i <= n; ++i) h(i, i) -= s;
                    exshift += s;
                    x = y = w = 0.964;
                }
            }
            iter++;
            total_iter++;
            if (iter > 50 || total_iter > total_cap)
                throw EigenSolverError("QR iteration failed to converge");

            // look for two consecutive small subdiagonal elements
            int m = n - 2;
            while (m >= l) {
                z = h(m, m);
                r = x - z;
                s = y - z;
                p = (r * s - w) / h(m + 1, m) + h(m, m + 1);
                q = h(m + 1, m + 1) - z - r - s;
                r = h(m + 2, m + 1);
                s = std::fabs(p) + std::fabs(q) + std::fabs(r);
                p /= s;
                q /= s;
                r /= s;
                if (m == l) break;
                if (std::fabs(h(m, m - 1)) * (std::fabs(q) + std::fabs(r)) <
                    eps * (std::fabs(p) *
                           (std::fabs(h(m - 1, m - 1)) + std::fabs(z) + std::fabs(h(m + 1, m + 1)))))
                    break;
                m--;
            }
            for (int i = m + 2; i <= n; ++i) {
                h(i, i - 2) = 0.0;
                if (i > m + 2) h(i, i - 3) = 0.0;
            }

            // double QR step on rows l..n, columns m..n
            for (int k = m; k <= n - 1; ++k) {
                const bool notlast = (k != n - 1);
                if (k != m) {
                    p = h(k, k - 1);
                    q = h(k + 1, k - 1);
                    r = notlast ? h(k + 2, k - 1) : 0.0;
                    x = std::fabs(p) + std::fabs(q) + std::fabs(r);
                    if (x == 0.0) continue;
                    p /= x;
                    q /= x;
                    r /= x;
                }
                s = std::sqrt(p * p + q * q + r * r);
                if (p < 0) s = -s;
                if (s == 0.0) continue;
                if (k != m) h(k, k - 1) = -s * x;
                else if (l != m) h(k, k - 1) = -h(k, k - 1);
                p += s;
                x = p / s;
                y = q / s;
                z = r / s;
                q /= p;
                r /= p;

                for (int j = k; j < nn; ++j) {
                    p = h(k, j) + q * h(k + 1, j);
                    if (notlast) {
                        p += r * h(k + 2, j);
                        h(k + 2, j) -= p * z;
                    }
                    h(k, j) -= p * x;
                    h(k + 1, j) -= p * y;
                }
                for (int i = 0; i <= std::min(n, k + 3); ++i) {
                    p = x * h(i, k) + y * h(i, k + 1);
                    if (notlast) {
                        p += z * h(i, k + 2);
                        h(i, k + 2) -= p * r;
                    }
                    h(i, k) -= p;
                    h(i, k + 1) -= p * q;
                }
            }
        }
    }
}

}

/// All eigenvalues (with algebraic multiplicity) of a square real matrix:
/// balancing, Householder reduction to Hessenberg form, then Francis
/// double-shift QR with deflation.  Throws EigenSolverError if the
/// iteration does not converge.
inline std::vector<std::complex<double>> dense_eigenvalues(Matrix a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("dense_eigenvalues: matrix must be square");
    const std::size_t n = a.rows();
    if (n == 0) return {};
    if (n > eigen_dimension_cap)
        throw std::invalid_argument("dense_eigenvalues: dimension exceeds the supported desk scale");
    if (n == 1) return {std::complex<double>(a(0, 0), 0.0)};

    detail::balance(a);
    detail::hessenberg(a);
    std::vector<double> re, im;
    detail::hqr_eigenvalues(a, re, im);

    std::vector<std::complex<double>> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.emplace_back(re[i], im[i]);
    return out;
}

}
