#pragma once

#include <algorithm>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace schoenberg {

/// Knot partition of [0,1] with (k+1)-fold boundary knots and simple,
/// strictly increasing interior knots.  Immutable after construction.
///
/// Knots are indexed x_{-k},...,x_{n+k} (stored flat, length n+2k+1),
/// with x_{-k}=...=x_0=0 and x_n=...=x_{n+k}=1.
class KnotVector {
public:
    /// Degree 0 is admitted so that derivatives of degree-1 splines are
    /// representable; use make_knot_vector / uniform_knot_vector for the
    /// public k >= 1 constructors.
    KnotVector(int degree, std::vector<double> interior)
        : k_(degree), n_(static_cast<int>(interior.size()) + 1) {
        if (degree < 0) throw std::invalid_argument("KnotVector: degree must be >= 0");
        for (std::size_t i = 0; i < interior.size(); ++i) {
            if (!(interior[i] > 0.0 && interior[i] < 1.0))
                throw std::invalid_argument("KnotVector: interior knots must lie in (0,1)");
            if (i > 0 && !(interior[i] > interior[i - 1]))
                throw std::invalid_argument("KnotVector: interior knots must be strictly increasing");
        }
        knots_.reserve(static_cast<std::size_t>(n_) + 2 * k_ + 1);
        knots_.insert(knots_.end(), static_cast<std::size_t>(k_) + 1, 0.0);
        knots_.insert(knots_.end(), interior.begin(), interior.end());
        knots_.insert(knots_.end(), static_cast<std::size_t>(k_) + 1, 1.0);
    }

    int degree() const { return k_; }

    /// Number of mesh intervals n (x_n = 1).
    int intervals() const { return n_; }

    /// Dimension of the spline space S(Delta_n, k), i.e. n + k.
    int dimension() const { return n_ + k_; }

    /// Knot by paper index j in [-k, n+k].
    double knot(int j) const { return knots_[static_cast<std::size_t>(j + k_)]; }

    /// Flat knot storage x_{-k},...,x_{n+k}.
    const std::vector<double>& knots() const { return knots_; }

    std::vector<double> interior() const {
        return {knots_.begin() + k_ + 1, knots_.end() - k_ - 1};
    }

    bool operator==(const KnotVector& other) const = default;

private:
    int k_;
    int n_;
    std::vector<double> knots_;
};

/// Greville nodes xi_{j,k} = (x_{j+1}+...+x_{j+k})/k for j = -k,...,n-1.
class GrevilleNodes {
public:
    GrevilleNodes(int degree, std::vector<double> values)
        : k_(degree), xi_(std::move(values)) {}

    int degree() const { return k_; }
    int size() const { return static_cast<int>(xi_.size()); }

    /// Node by paper index j in [-k, n-1].
    double node(int j) const { return xi_[static_cast<std::size_t>(j + k_)]; }

    const std::vector<double>& values() const { return xi_; }

private:
    int k_;
    std::vector<double> xi_;
};

struct MeshStats {
    double delta_min;
    double delta_max;
};

inline KnotVector make_knot_vector(std::vector<double> interior, int degree) {
    if (degree < 1) throw std::invalid_argument("make_knot_vector: degree must be >= 1");
    return KnotVector(degree, std::move(interior));
}

inline KnotVector uniform_knot_vector(int n, int k) {
    if (n < 1) throw std::invalid_argument("uniform_knot_vector: n must be >= 1");
    if (k < 1) throw std::invalid_argument("uniform_knot_vector: degree must be >= 1");
    std::vector<double> interior;
    interior.reserve(static_cast<std::size_t>(n) - 1);
    for (int j = 1; j < n; ++j) interior.push_back(static_cast<double>(j) / n);
    return KnotVector(k, std::move(interior));
}

/// Interior knots accumulating toward 1 with gap ratio q in (0,1):
/// gap_i proportional to q^i, so x_j = (1-q^j)/(1-q^n).
inline KnotVector geometric_knot_vector(int n, int k, double q) {
    if (n < 1) throw std::invalid_argument("geometric_knot_vector: n must be >= 1");
    if (k < 1) throw std::invalid_argument("geometric_knot_vector: degree must be >= 1");
    if (!(q > 0.0 && q < 1.0))
        throw std::invalid_argument("geometric_knot_vector: ratio q must lie in (0,1)");
    const double scale = 1.0 - std::pow(q, n);
    std::vector<double> interior;
    interior.reserve(static_cast<std::size_t>(n) - 1);
    for (int j = 1; j < n; ++j) interior.push_back((1.0 - std::pow(q, j)) / scale);
    return KnotVector(k, std::move(interior));
}

/// Interior knots drawn i.i.d. uniform on (0,1) and sorted; deterministic
/// for a fixed seed.  Redraws in the (measure-zero) event of a tie.
inline KnotVector random_knot_vector(int n, int k, unsigned long long seed) {
    if (n < 1) throw std::invalid_argument("random_knot_vector: n must be >= 1");
    if (k < 1) throw std::invalid_argument("random_knot_vector: degree must be >= 1");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> interior(static_cast<std::size_t>(n) - 1);
    for (int attempt = 0; attempt < 64; ++attempt) {
        for (auto& v : interior) {
            do { v = unit(rng); } while (v <= 0.0 || v >= 1.0);
        }
        std::sort(interior.begin(), interior.end());
        if (std::adjacent_find(interior.begin(), interior.end()) == interior.end())
            return KnotVector(k, interior);
    }
    throw std::runtime_error("random_knot_vector: could not draw distinct interior knots");
}

inline GrevilleNodes greville_nodes(const KnotVector& kv) {
    const int k = kv.degree();
    if (k < 1) throw std::invalid_argument("greville_nodes: degree must be >= 1");
    const int n = kv.intervals();
    std::vector<double> xi;
    xi.reserve(static_cast<std::size_t>(n + k));
    for (int j = -k; j <= n - 1; ++j) {
        double sum = 0.0;
        for (int i = 1; i <= k; ++i) sum += kv.knot(j + i);
        xi.push_back(sum / k);
    }
    return GrevilleNodes(k, std::move(xi));
}

/// Smallest and largest positive knot gap.  The coincident boundary knots
/// contribute zero-length gaps which are excluded.
inline MeshStats mesh_stats(const KnotVector& kv) {
    const auto& t = kv.knots();
    double lo = 1.0, hi = 0.0;
    for (std::size_t i = 0; i + 1 < t.size(); ++i) {
        const double gap = t[i + 1] - t[i];
        if (gap > 0.0) {
            lo = std::min(lo, gap);
            hi = std::max(hi, gap);
        }
    }
    return MeshStats{lo, hi};
}

}
