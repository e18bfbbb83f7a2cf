#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "ineq/gaussmeasure.hpp"
#include "ineq/profiles.hpp"

using namespace ineq;

namespace {
RadialProfile linear_profile() { // u = rho
    RadialProfile p;
    p.value = [](double r) { return r; };
    p.derivative = [](double) { return 1.0; };
    p.decay = {DecayKind::exponential, 0.0};
    p.label = "linear";
    return p;
}
} // namespace

TEST_CASE("dm is a probability measure") {
    for (int n = 2; n <= 8; ++n) { // series normalization vs quadrature mass
        const auto gm = gaussian_measure(n);
        CHECK(dm_integral(gm, [](double) { return 1.0; }) == Catch::Approx(1.0).margin(1e-8));
    }
}

TEST_CASE("dm integrals of unbounded integrands stay finite") {
    const auto gm = gaussian_measure(3);
    const double second_moment = dm_integral(gm, [](double rho) { return rho * rho; });
    CHECK(second_moment > 0.0);
    // independent quadrature oracle for the same integrand
    const auto m = gm.space;
    QuadratureConfig cfg;
    cfg.tail_cut = 40.0;
    const double oracle = m.omega_nm1 / gm.G *
                          integrate_semi_infinite(
                              [&](double rho) {
                                  return rho * rho * std::exp(-0.5 * rho * rho) *
                                         std::pow(m.psi(rho), 2.0);
                              },
                              cfg)
                              .value;
    CHECK(second_moment == Catch::Approx(oracle).epsilon(1e-9));

    // Gaussian weight beats single-exponential growth
    const double grown = dm_integral(gm, [](double rho) { return std::exp(rho); });
    CHECK(std::isfinite(grown));
    CHECK(grown > 1.0);
}

TEST_CASE("rho coth rho - 1 is continuous through its series switch") {
    CHECK(rho_coth_rho_minus_one(0.0) == 0.0);
    const double below = rho_coth_rho_minus_one(0.999e-3);
    const double above = rho_coth_rho_minus_one(1.001e-3);
    CHECK(below == Catch::Approx(above).epsilon(1e-6));
    CHECK(rho_coth_rho_minus_one(2.0) ==
          Catch::Approx(2.0 / std::tanh(2.0) - 1.0).epsilon(1e-14));
}

TEST_CASE("potential bracket term, piecewise cross-check at u = 1") {
    const auto gm = gaussian_measure(3);
    RadialProfile one;
    one.value = [](double) { return 1.0; };
    one.derivative = [](double) { return 0.0; };
    one.decay = {DecayKind::exponential, 0.0};
    one.label = "one";

    const double total = potential_term(gm, one);
    const double coth_piece = dm_integral(gm, rho_coth_rho_minus_one);
    const double expect = 2.0 * coth_piece - 9.0 * 2.0 / (2.0 * 5.0) +
                          std::log(gaussian_c2(3));
    CHECK(total == Catch::Approx(expect).epsilon(1e-9));

    // compactly supported data is dominated by the bracket's sup on the support
    const auto bump = bump_profile(1.0);
    const double bp = potential_term(gm, bump);
    double sup = 0.0;
    for (double rho = 0.0; rho <= 1.0; rho += 0.01)
        sup = std::max(sup, std::abs(gaussian_bracket(gm, rho)));
    const double mass = dm_integral(gm, [&](double rho) {
        const double v = bump.value(rho);
        return v * v;
    });
    CHECK(std::abs(bp) <= sup * mass + 1e-12);
}

TEST_CASE("Dirichlet energy under dm") {
    const auto gm = gaussian_measure(3);
    const auto bump = bump_profile(1.0);
    RadialProfile constant;
    constant.value = [](double) { return 0.7; };
    constant.derivative = [](double) { return 0.0; };
    constant.decay = {DecayKind::exponential, 0.0};
    constant.label = "const";
    CHECK(dirichlet_dm(gm, constant) == 0.0);

    CHECK(dirichlet_dm(gm, linear_profile()) == Catch::Approx(1.0).margin(1e-8));

    const auto e1 = expdecay_profile(1.0);
    const double identity = dm_integral(gm, [](double rho) { return std::exp(-2.0 * rho); });
    CHECK(dirichlet_dm(gm, e1) == Catch::Approx(identity).epsilon(1e-10));
    (void)bump;
}

TEST_CASE("entropy scaling identity under dm") {
    const auto gm = gaussian_measure(3);
    const auto u = gauss_profile(0.5);
    auto ent = [&](const RadialProfile& f) {
        return dm_integral(gm, [&](double rho) {
            const double v = f.value(rho) * f.value(rho);
            return v > 0.0 ? v * std::log(v) : 0.0;
        });
    };
    auto mass = [&](const RadialProfile& f) {
        return dm_integral(gm, [&](double rho) { return f.value(rho) * f.value(rho); });
    };
    const double c = 2.0;
    const auto scaled = scale_profile(u, c);
    const double expect = c * c * ent(u) + c * c * std::log(c * c) * mass(u);
    CHECK(ent(scaled) == Catch::Approx(expect).epsilon(1e-9));
}
