#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

#include "schoenberg/bspline.hpp"
#include "schoenberg/grid.hpp"
#include "schoenberg/operator.hpp"
#include "schoenberg/smoothness.hpp"
#include "schoenberg/spectral.hpp"

namespace schoenberg {

/// Raised when the spectral-gap hypotheses do not apply (k = 1: the
/// operator is an interpolation projector and the iterate theory is void).
struct ProjectorCaseError : std::domain_error {
    ProjectorCaseError()
        : std::domain_error(
              "projector case (k = 1): the iterate-decay hypotheses do not apply") {}
};

/// Grid sup of |f - S f| over the uniform grid plus knots and Greville nodes.
inline double approximation_error(const KnotVector& kv, const RealFunction& f,
                                  std::size_t grid = default_grid_points) {
    const SplineFunction s = apply(kv, f);
    const auto xs = sup_grid(kv, grid);
    return max_abs_on(xs, [&](double x) { return f(x) - eval_spline(s, x); });
}

/// M = 1 / (2^r (1 + dk t^r / (delta_min^r (1 - gamma)))), the constant of
/// the lower bound M * omega_r(f, t) <= ||f - S f||.
inline double lower_bound_constant(const KnotVector& kv, int r, double t, double gamma,
                                   double dk) {
    if (r < 2) throw std::invalid_argument("lower_bound_constant: requires r >= 2");
    if (kv.degree() <= r) throw std::invalid_argument("lower_bound_constant: requires k > r");
    if (!(t > 0.0 && t <= 1.0 / r))
        throw std::invalid_argument("lower_bound_constant: t must lie in (0, 1/r]");
    if (!(gamma < 1.0)) throw std::domain_error("lower_bound_constant: spectral gap failure (gamma >= 1)");
    const double dmin = mesh_stats(kv).delta_min;
    const double ratio = dk * std::pow(t, r) / (std::pow(dmin, r) * (1.0 - gamma));
    return 1.0 / (std::pow(2.0, r) * (1.0 + ratio));
}

/// delta = delta_min ((1 - gamma) / dk)^{1/r}; at t = delta the lower
/// bound constant is exactly 2^{-(r+1)}.
inline double corollary_delta(const KnotVector& kv, int r, double gamma, double dk) {
    if (r < 2) throw std::invalid_argument("corollary_delta: requires r >= 2");
    if (kv.degree() <= r) throw std::invalid_argument("corollary_delta: requires k > r");
    if (!(gamma < 1.0)) throw std::domain_error("corollary_delta: spectral gap failure (gamma >= 1)");
    if (!(dk > 0.0)) throw std::invalid_argument("corollary_delta: dk must be positive");
    const double dmin = mesh_stats(kv).delta_min;
    return dmin * std::pow((1.0 - gamma) / dk, 1.0 / r);
}

/// Scale of the Beutel et al. upper bound
/// ||f - S f|| <= 3/2 omega_2(f, sqrt(min{1/(2k), (k+1) delta_max^2 / 12})).
/// Clamped to 1/2 (the omega_2 domain) and flagged in the pathological case.
struct BeutelScale {
    double value;
    bool clamped;
};

inline BeutelScale beutel_upper_scale(const KnotVector& kv) {
    const int k = kv.degree();
    if (k < 1) throw std::invalid_argument("beutel_upper_scale: degree must be >= 1");
    const double dmax = mesh_stats(kv).delta_max;
    const double scale = std::sqrt(std::min(1.0 / (2.0 * k), (k + 1) * dmax * dmax / 12.0));
    if (scale > 0.5) return BeutelScale{0.5, true};
    return BeutelScale{scale, false};
}

struct InequalityVerdict {
    std::string name;
    std::string status;  // "pass" | "inconclusive" | "fail"
    double lhs;
    double rhs;
    double margin;  // rhs - lhs
    bool refined;   // grids were refined x4 before settling
};

struct BoundsConfig {
    int r = 2;
    std::optional<double> t{};  // defaults to the corollary delta
    std::size_t grid = default_grid_points;
    int h_steps = default_h_steps;
    int x_steps = default_x_steps;
    double tol_one = default_tol_one;
    double slack_budget = 1e-8;
};

struct BoundsReport {
    int n;
    int k;
    double delta_min;
    double delta_max;
    double gamma;
    double dk_used;       // certified upper bound k 2^k, used in every verdict
    double dk_empirical;  // sampled lower estimate, informational only
    int r;
    double t;
    double approx_error;
    double omega_r_t;
    double omega_r_delta;
    double omega_2_beutel;
    double lower_constant;            // M at t with the certified dk
    double lower_constant_empirical;  // M at t with dk_empirical (not certified)
    double corollary_delta;
    double beutel_t;
    bool beutel_clamped;
    double tol_one;
    std::size_t grid;
    int h_steps;
    int x_steps;
    InequalityVerdict lower_at_delta;  // 2^{-(r+1)} omega_r(f, delta) <= approx error
    InequalityVerdict upper_beutel;    // approx error <= 3/2 omega_2(f, beutel scale)
    InequalityVerdict lower_at_t;      // M(t) omega_r(f, t) <= approx error

    bool all_pass() const {
        return lower_at_delta.status == "pass" && upper_beutel.status == "pass" &&
               lower_at_t.status == "pass";
    }
};

namespace detail {

// The asserted inequality is lhs <= rhs + slack budget; both sides are
// grid estimates.  On a miss, refine once (x4) before deciding, and call
// the result inconclusive when the failure gap is smaller than the
// movement the refinement produced (grid error dominates the margin).
template <typename Eval>
InequalityVerdict settle_inequality(const std::string& name, double lhs, double rhs,
                                    double budget, Eval&& refine) {
    InequalityVerdict v{name, "pass", lhs, rhs, rhs - lhs, false};
    if (lhs <= rhs + budget) return v;
    v.refined = true;
    const auto [rl, rr] = refine();
    const double movement = std::fabs(rl - lhs) + std::fabs(rr - rhs);
    v.lhs = rl;
    v.rhs = rr;
    v.margin = rr - rl;
    if (rl <= rr + budget) v.status = "pass";
    else if (rl - rr - budget < movement) v.status = "inconclusive";
    else v.status = "fail";
    return v;
}

}

/// Full report on the two-sided estimates for one function and one knot
/// vector: Theorem 4's lower bound at t and at the corollary delta, and
/// the Beutel upper bound.
inline BoundsReport equivalence_report(const KnotVector& kv, const RealFunction& f,
                                       const BoundsConfig& config = {}) {
    const int k = kv.degree();
    const int r = config.r;
    if (r < 2) throw std::invalid_argument("equivalence_report: requires r >= 2");
    if (k == 1) throw ProjectorCaseError{};
    if (k <= r) throw std::invalid_argument("equivalence_report: requires k > r");

    const MeshStats mesh = mesh_stats(kv);
    const SpectrumResult spec = spectrum(kv, config.tol_one);
    const double gamma = spec.gamma;
    const double dk_cert = static_cast<double>(k) * std::pow(2.0, k);
    const double dk_emp =
        estimate_basis_condition(
            kv, 32, std::max(config.grid, static_cast<std::size_t>(10 * kv.dimension())))
            .lower_estimate;

    const double delta = corollary_delta(kv, r, gamma, dk_cert);
    const BeutelScale beutel = beutel_upper_scale(kv);
    const double t = config.t.value_or(delta);
    if (!(t > 0.0 && t <= 1.0 / r))
        throw std::invalid_argument("equivalence_report: t must lie in (0, 1/r]");

    // omega_r stays within its domain even if delta edges past 1/r on
    // extreme meshes; shrinking t only weakens the asserted instance.
    const double delta_eval = std::min(delta, 1.0 / r);

    const double err = approximation_error(kv, f, config.grid);
    const double om_t = modulus(f, r, t, config.h_steps, config.x_steps).value;
    const double om_delta = modulus(f, r, delta_eval, config.h_steps, config.x_steps).value;
    const double om_beutel = modulus(f, 2, beutel.value, config.h_steps, config.x_steps).value;

    const double m_t = lower_bound_constant(kv, r, t, gamma, dk_cert);
    const double m_t_emp = lower_bound_constant(kv, r, t, gamma, dk_emp);
    const double m_delta = std::pow(2.0, -(r + 1));

    BoundsReport rep;
    rep.n = kv.intervals();
    rep.k = k;
    rep.delta_min = mesh.delta_min;
    rep.delta_max = mesh.delta_max;
    rep.gamma = gamma;
    rep.dk_used = dk_cert;
    rep.dk_empirical = dk_emp;
    rep.r = r;
    rep.t = t;
    rep.approx_error = err;
    rep.omega_r_t = om_t;
    rep.omega_r_delta = om_delta;
    rep.omega_2_beutel = om_beutel;
    rep.lower_constant = m_t;
    rep.lower_constant_empirical = m_t_emp;
    rep.corollary_delta = delta;
    rep.beutel_t = beutel.value;
    rep.beutel_clamped = beutel.clamped;
    rep.tol_one = config.tol_one;
    rep.grid = config.grid;
    rep.h_steps = config.h_steps;
    rep.x_steps = config.x_steps;

    const auto fine_err = [&] { return approximation_error(kv, f, config.grid * 4); };
    const auto fine_modulus = [&](int order, double scale) {
        return modulus(f, order, scale, config.h_steps * 4, config.x_steps * 4).value;
    };

    rep.lower_at_delta = detail::settle_inequality(
        "lower_at_delta", m_delta * om_delta, err, config.slack_budget,
        [&] { return std::pair{m_delta * fine_modulus(r, delta_eval), fine_err()}; });
    rep.upper_beutel = detail::settle_inequality(
        "upper_beutel", err, 1.5 * om_beutel, config.slack_budget,
        [&] { return std::pair{fine_err(), 1.5 * fine_modulus(2, beutel.value)}; });
    rep.lower_at_t = detail::settle_inequality(
        "lower_at_t", m_t * om_t, err, config.slack_budget,
        [&] { return std::pair{m_t * fine_modulus(r, t), fine_err()}; });
    return rep;
}

}
