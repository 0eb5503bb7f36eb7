#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "schoenberg/bspline.hpp"
#include "schoenberg/grid.hpp"

using namespace schoenberg;

namespace {

// independent Bernstein oracle: C(k,i) x^i (1-x)^(k-i)
double bernstein(int k, int i, double x) {
    double binom = 1.0;
    for (int j = 0; j < i; ++j) binom = binom * (k - j) / (j + 1);
    return binom * std::pow(x, i) * std::pow(1.0 - x, k - i);
}

std::vector<KnotVector> sample_knot_vectors() {
    return {
        uniform_knot_vector(1, 3),
        uniform_knot_vector(2, 1),
        uniform_knot_vector(4, 2),
        uniform_knot_vector(5, 3),
        uniform_knot_vector(8, 4),
        make_knot_vector({0.1, 0.15, 0.6, 0.9}, 3),
        geometric_knot_vector(8, 3, 0.5),
    };
}

}

TEST_CASE("Bernstein basis values at 1/2") {
    const KnotVector kv = uniform_knot_vector(1, 3);
    const double expected[] = {0.125, 0.375, 0.375, 0.125};
    for (int j = -3; j <= 0; ++j) {
        REQUIRE(eval_basis(kv, j, 0.5) == Catch::Approx(expected[j + 3]).margin(1e-14));
        REQUIRE(eval_basis(kv, j, 0.5) == Catch::Approx(bernstein(3, j + 3, 0.5)).margin(1e-14));
    }
}

TEST_CASE("partition of unity on sample knot vectors") {
    for (const auto& kv : sample_knot_vectors()) {
        double worst = 0.0;
        for (double x : uniform_grid(1001)) {
            double sum = 0.0;
            for (int j = -kv.degree(); j <= kv.intervals() - 1; ++j) sum += eval_basis(kv, j, x);
            worst = std::max(worst, std::fabs(sum - 1.0));
        }
        REQUIRE(worst <= 1e-12);
    }
}

TEST_CASE("hat function peaks at its Greville node") {
    const KnotVector kv = uniform_knot_vector(2, 1);
    REQUIRE(eval_basis(kv, 0, 0.5) == 1.0);
}

TEST_CASE("basis is non-negative with exact local support") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (const auto& kv : sample_knot_vectors()) {
        for (int trial = 0; trial < 200; ++trial) {
            const double x = unit(rng);
            for (int j = -kv.degree(); j <= kv.intervals() - 1; ++j) {
                const double v = eval_basis(kv, j, x);
                REQUIRE(v >= -1e-14);
                if (x < kv.knot(j) || x > kv.knot(j + kv.degree() + 1)) REQUIRE(v == 0.0);
            }
        }
    }
}

TEST_CASE("basis rejects bad arguments") {
    const KnotVector kv = uniform_knot_vector(4, 2);
    REQUIRE_THROWS_AS(eval_basis(kv, -3, 0.5), std::out_of_range);
    REQUIRE_THROWS_AS(eval_basis(kv, 4, 0.5), std::out_of_range);
    REQUIRE_THROWS_AS(eval_basis(kv, 0, -0.1), std::domain_error);
    REQUIRE_THROWS_AS(eval_basis(kv, 0, 1.1), std::domain_error);
}

TEST_CASE("divided-difference oracle agrees with the recursion") {
    for (const auto& kv : {uniform_knot_vector(5, 3), uniform_knot_vector(16, 6),
                           geometric_knot_vector(8, 3, 0.5)}) {
        std::mt19937 rng(1234);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        for (int trial = 0; trial < 1000; ++trial) {
            const double x = unit(rng);
            const int j =
                static_cast<int>(rng() % static_cast<unsigned>(kv.dimension())) - kv.degree();
            const double a = eval_basis(kv, j, x);
            const double b = eval_basis_divdiff(kv, j, x);
            REQUIRE(a == Catch::Approx(b).margin(1e-10));
        }
    }
}

TEST_CASE("divided-difference value on a hat edge") {
    const KnotVector kv = make_knot_vector({0.5}, 1);
    REQUIRE(eval_basis_divdiff(kv, -1, 0.25) == Catch::Approx(0.5).margin(1e-14));
}

TEST_CASE("divided-difference oracle is exactly zero off support") {
    const KnotVector kv = uniform_knot_vector(5, 3);
    REQUIRE(eval_basis_divdiff(kv, 2, 0.1) == 0.0);
    REQUIRE(eval_basis_divdiff(kv, -3, 0.95) == 0.0);
}

TEST_CASE("divided-difference boundary conventions") {
    const KnotVector kv = uniform_knot_vector(4, 3);
    REQUIRE(eval_basis_divdiff(kv, -3, 0.0) == 1.0);
    REQUIRE(eval_basis_divdiff(kv, 0, 0.0) == 0.0);
    REQUIRE(eval_basis_divdiff(kv, 3, 1.0) == 1.0);  // left-limit value
    REQUIRE(eval_basis_divdiff(kv, 0, 1.0) == 0.0);
}

TEST_CASE("spline evaluation reproduces constants, x, and zero") {
    for (const auto& kv : sample_knot_vectors()) {
        const int dim = kv.dimension();
        const SplineFunction ones(kv, std::vector<double>(static_cast<std::size_t>(dim), 1.0));
        const SplineFunction zeros(kv, std::vector<double>(static_cast<std::size_t>(dim), 0.0));
        const SplineFunction ident(kv, greville_nodes(kv).values());
        for (double x : uniform_grid(301)) {
            REQUIRE(eval_spline(ones, x) == Catch::Approx(1.0).margin(1e-13));
            REQUIRE(eval_spline(zeros, x) == 0.0);
            REQUIRE(eval_spline(ident, x) == Catch::Approx(x).margin(1e-13));
        }
    }
}

TEST_CASE("spline value at 1 is the last coefficient") {
    const KnotVector kv = uniform_knot_vector(4, 3);
    std::vector<double> c(static_cast<std::size_t>(kv.dimension()));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = 0.1 * static_cast<double>(i) - 0.3;
    const SplineFunction s(kv, c);
    REQUIRE(eval_spline(s, 1.0) == c.back());
}

TEST_CASE("derivative of the identity is the constant one") {
    const KnotVector kv = uniform_knot_vector(4, 3);
    const SplineFunction ident(kv, greville_nodes(kv).values());
    const SplineFunction d = derivative(ident);
    REQUIRE(d.kv.degree() == 2);
    for (double c : d.coeffs) REQUIRE(c == Catch::Approx(1.0).margin(1e-13));
    for (double x : uniform_grid(101)) REQUIRE(eval_spline(d, x) == Catch::Approx(1.0).margin(1e-13));
}

TEST_CASE("derivative of a constant spline vanishes") {
    const KnotVector kv = uniform_knot_vector(4, 3);
    const SplineFunction ones(kv, std::vector<double>(static_cast<std::size_t>(kv.dimension()), 1.0));
    const SplineFunction d = derivative(ones);
    for (double c : d.coeffs) REQUIRE(c == 0.0);
}

TEST_CASE("derivative matches central finite differences") {
    const KnotVector kv = uniform_knot_vector(4, 3);
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    std::vector<double> c(static_cast<std::size_t>(kv.dimension()));
    for (auto& v : c) v = coeff(rng);
    const SplineFunction s(kv, c);
    const SplineFunction ds = derivative(s);
    const double h = 1e-6;
    for (double x : uniform_grid(101)) {
        if (x < 2 * h || x > 1.0 - 2 * h) continue;
        const double fd = (eval_spline(s, x + h) - eval_spline(s, x - h)) / (2 * h);
        REQUIRE(eval_spline(ds, x) == Catch::Approx(fd).margin(1e-5));
    }
}

TEST_CASE("derivative of a hat spline is piecewise constant (degree 0)") {
    const KnotVector kv = uniform_knot_vector(2, 1);
    const SplineFunction s(kv, {0.0, 1.0, 0.5});
    const SplineFunction d = derivative(s);
    REQUIRE(d.kv.degree() == 0);
    REQUIRE(eval_spline(d, 0.25) == Catch::Approx(2.0));
    REQUIRE(eval_spline(d, 0.75) == Catch::Approx(-1.0));
    REQUIRE(eval_spline(d, 1.0) == Catch::Approx(-1.0));  // left limit
    REQUIRE_THROWS_AS(derivative(d), std::invalid_argument);
}

TEST_CASE("iterated derivatives") {
    const KnotVector kv = uniform_knot_vector(4, 3);
    const SplineFunction ident(kv, greville_nodes(kv).values());

    const SplineFunction d2 = derivative_power(ident, 2);
    for (double x : uniform_grid(101)) REQUIRE(eval_spline(d2, x) == Catch::Approx(0.0).margin(1e-12));

    std::mt19937 rng(5);
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    std::vector<double> c(static_cast<std::size_t>(kv.dimension()));
    for (auto& v : c) v = coeff(rng);
    const SplineFunction s(kv, c);
    const SplineFunction d1a = derivative_power(s, 1);
    const SplineFunction d1b = derivative(s);
    REQUIRE(d1a.coeffs == d1b.coeffs);

    REQUIRE_THROWS_AS(derivative_power(s, 0), std::invalid_argument);
    REQUIRE_THROWS_AS(derivative_power(s, 3), std::invalid_argument);
}

TEST_CASE("second derivatives respect the differential operator bound") {
    const KnotVector kv = uniform_knot_vector(5, 4);
    const auto xs = sup_grid(kv, 2001);
    const double bound = std::pow(2.0 * 5, 2) * 4 * std::pow(2.0, 4);  // (2/delta_min)^2 k 2^k
    std::mt19937 rng(21);
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> c(static_cast<std::size_t>(kv.dimension()));
        for (auto& v : c) v = coeff(rng);
        SplineFunction s(kv, c);
        const double nrm = max_abs_on(xs, [&](double x) { return eval_spline(s, x); });
        if (nrm == 0.0) continue;
        for (auto& v : s.coeffs) v /= nrm;  // unit sup norm on the grid
        const SplineFunction d2 = derivative_power(s, 2);
        const double peak = max_abs_on(xs, [&](double x) { return eval_spline(d2, x); });
        REQUIRE(peak <= bound);
    }
}

TEST_CASE("basis condition estimate") {
    SECTION("hat basis is perfectly conditioned") {
        const auto est = estimate_basis_condition(uniform_knot_vector(6, 1), 16, 1000);
        REQUIRE(est.lower_estimate == 1.0);
        REQUIRE(est.certified_upper == 2.0);
    }
    SECTION("estimate sits between 1 and the literature bound") {
        const auto est = estimate_basis_condition(uniform_knot_vector(8, 3), 32, 2001);
        REQUIRE(est.lower_estimate >= 1.0);
        REQUIRE(est.lower_estimate <= 24.0);
        REQUIRE(est.certified_upper == 24.0);
    }
    SECTION("degenerate grid is rejected") {
        REQUIRE_THROWS_AS(estimate_basis_condition(uniform_knot_vector(8, 3), 8, 50),
                          std::invalid_argument);
    }
}

TEST_CASE("stability sandwich for random coefficients") {
    const KnotVector kv = uniform_knot_vector(6, 3);
    const auto xs = sup_grid(kv, 4001);
    const double dk_upper = 3 * std::pow(2.0, 3);
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> c(static_cast<std::size_t>(kv.dimension()));
        double cmax = 0.0;
        for (auto& v : c) {
            v = coeff(rng);
            cmax = std::max(cmax, std::fabs(v));
        }
        const SplineFunction s(kv, c);
        const double snorm = max_abs_on(xs, [&](double x) { return eval_spline(s, x); });
        REQUIRE(snorm <= cmax * (1.0 + 1e-12));
        REQUIRE(cmax <= dk_upper * snorm * (1.0 + 1e-6));
    }
}
