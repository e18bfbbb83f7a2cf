#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "ineq/manifold.hpp"
#include "ineq/numerics.hpp"

using namespace ineq;

namespace {
const double kPi = std::acos(-1.0);

// Maclaurin series for erf, the independent oracle.
double erf_series(double x) {
    double term = x, sum = x;
    for (int n = 1; n < 60; ++n) {
        term *= -x * x / n;
        sum += term / (2 * n + 1);
    }
    return 2.0 / std::sqrt(kPi) * sum;
}
} // namespace

TEST_CASE("semi-infinite quadrature on exponential and Gaussian tails") {
    auto r1 = integrate_semi_infinite([](double x) { return std::exp(-2.0 * x); });
    CHECK(r1.value == Catch::Approx(0.5).epsilon(1e-11));
    CHECK(std::abs(r1.value - 0.5) <= std::max(1e-12, r1.error_estimate * 10));

    auto r2 = integrate_semi_infinite([](double x) { return std::exp(-0.5 * x * x); });
    CHECK(r2.value == Catch::Approx(std::sqrt(kPi / 2.0)).epsilon(1e-11));

    // int rho e^{-b rho} = 1/b^2
    auto r3 = integrate_semi_infinite([](double x) { return x * std::exp(-4.0 * x); });
    CHECK(r3.value == Catch::Approx(1.0 / 16.0).epsilon(1e-11));
    CHECK(r3.error_estimate >= 0.0);
    CHECK(r3.evaluations > 0);
}

TEST_CASE("quadrature is linear within its error estimate") {
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> coef(0.2, 3.0);
    for (int trial = 0; trial < 5; ++trial) {
        const double a = coef(rng), b = coef(rng);
        const double ra = coef(rng), rb = coef(rng);
        auto f = [&](double x) { return std::exp(-ra * x); };
        auto g = [&](double x) { return std::exp(-rb * x * x); };
        auto combined = integrate_semi_infinite([&](double x) { return a * f(x) + b * g(x); });
        auto fa = integrate_semi_infinite(f);
        auto gb = integrate_semi_infinite(g);
        const double expect = a * fa.value + b * gb.value;
        const double budget = 2.0 * (combined.error_estimate + a * fa.error_estimate +
                                     b * gb.error_estimate) + 1e-12;
        CHECK(std::abs(combined.value - expect) <= budget);
    }
}

TEST_CASE("quadrature error paths") {
    CHECK_THROWS_AS(integrate_semi_infinite([](double x) { return 1.0 / (x - 1.0); }),
                    NonFinite);
    // non-integrable growth never becomes negligible
    CHECK_THROWS_AS(integrate_semi_infinite([](double x) { return 1.0 / (1.0 + x); }),
                    NonConvergent);
    QuadratureConfig starved;
    starved.max_subdivisions = 1;
    starved.rel_tol = 1e-14;
    starved.abs_tol = 1e-300;
    CHECK_THROWS_AS(
        integrate_adaptive([](double x) { return std::cos(40.0 * x * x); }, 0.0, 10.0, starved),
        NonConvergent);
}

TEST_CASE("finite differences with Richardson extrapolation") {
    CHECK(differentiate([](double t) { return std::sinh(t); }, 0.0, 3) ==
          Catch::Approx(1.0).margin(1e-7));
    CHECK(differentiate([](double t) { return t + t * t * t - std::pow(t, 5); }, 0.0, 3) ==
          Catch::Approx(6.0).epsilon(1e-7));
    CHECK(differentiate([](double t) { return std::sinh(t); }, 1.0, 1) ==
          Catch::Approx(std::cosh(1.0)).epsilon(1e-9));

    // analytic-derivative agreement across orders and sample points
    for (double x : {-1.5, -0.3, 0.7, 2.0}) {
        CHECK(differentiate([](double t) { return std::cosh(t); }, x, 1) ==
              Catch::Approx(std::sinh(x)).epsilon(1e-7).margin(1e-9));
        CHECK(differentiate([](double t) { return std::sinh(t); }, x, 2) ==
              Catch::Approx(std::sinh(x)).epsilon(1e-7).margin(1e-7));
        CHECK(differentiate([](double t) { return std::pow(t, 6); }, x, 3) ==
              Catch::Approx(120.0 * x * x * x).epsilon(1e-7).margin(1e-6));
    }
    CHECK_THROWS_AS(differentiate([](double t) { return std::sinh(t); }, 0.0, 4), RangeError);
}

TEST_CASE("monotone inversion") {
    // Phi on the hyperbolic 3-space: closed antiderivative oracle
    const auto h3 = builtin_manifold(BuiltinManifold::hyperbolic, 3);
    const double y = 0.75 * std::sinh(2.0) - 1.5; // Phi(1)
    CHECK(invert_monotone([&](double t) { return phi(h3, t); }, y, 0.0, 5.0) ==
          Catch::Approx(1.0).epsilon(1e-12));

    CHECK(invert_monotone([](double t) { return t * t * t; }, 8.0, 0.0, 5.0) ==
          Catch::Approx(2.0).epsilon(1e-12));
    CHECK(invert_monotone([](double t) { return t * t * t; }, 0.0, 0.0, 5.0) == 0.0);
    CHECK_THROWS_AS(invert_monotone([](double t) { return t; }, 7.0, 0.0, 5.0), BracketError);

    // inversion round trip on sampled points
    auto f = [](double t) { return std::sinh(t) + 0.5 * t; };
    for (double x : {0.1, 0.9, 2.3, 4.0}) {
        const double back = invert_monotone(f, f(x), 0.0, 5.0);
        CHECK(back == Catch::Approx(x).epsilon(1e-10));
    }
}

TEST_CASE("grid-then-refine minimization") {
    auto r1 = minimize_scalar([](double t) { return (t - 2.0) * (t - 2.0); }, 0.0, 5.0, 101);
    CHECK(r1.argmin == Catch::Approx(2.0).margin(1e-9));
    CHECK(r1.min == Catch::Approx(0.0).margin(1e-15));

    auto r2 = minimize_scalar([](double t) { return std::cosh(t); }, -1.0, 1.0, 51);
    CHECK(r2.argmin == Catch::Approx(0.0).margin(1e-9));
    CHECK(r2.min == Catch::Approx(1.0).epsilon(1e-12));

    // the correction quotient is flat near its infimum at the left edge
    const auto h3 = builtin_manifold(BuiltinManifold::hyperbolic, 3);
    auto quotient = [&](double t) {
        return detail::kernel_at_radius(h3, 2.0, t) / std::pow(phi(h3, t), 2.0);
    };
    auto r3 = minimize_scalar(quotient, 1e-3, 20.0, 400);
    CHECK(r3.min == Catch::Approx(0.4).margin(2e-4));
    CHECK(r3.min >= 0.4);

    CHECK_THROWS_AS(minimize_scalar([](double) { return 1.0; }, 0.0, 1.0, 2), RangeError);
    CHECK_THROWS_AS(
        minimize_scalar([](double t) { return 1.0 / t; }, -1.0, 1.0, 11), NonFinite);
}

TEST_CASE("error function") {
    CHECK(ineq::erf(0.0) == 0.0);
    CHECK(ineq::erf(1.0) == Catch::Approx(erf_series(1.0)).margin(1e-12));
    CHECK(ineq::erf(1.0) == Catch::Approx(0.8427007929).margin(1e-9));
    CHECK(ineq::erf(-1.0) == Catch::Approx(-0.8427007929).margin(1e-9));
    double prev = -1.0;
    for (double x = -3.0; x <= 3.0; x += 0.25) {
        CHECK(ineq::erf(x) + ineq::erf(-x) == 0.0); // exact oddness
        CHECK(ineq::erf(x) > prev);                 // strictly increasing
        prev = ineq::erf(x);
        CHECK(std::abs(ineq::erf(x) - erf_series(x)) < 1e-12);
    }
    CHECK(ineq::erf(40.0) == 1.0);
    CHECK(ineq::erf(-40.0) == -1.0);
}
