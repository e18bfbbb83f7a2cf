#pragma once

// The weighted Gaussian measure dm = G^{-1} e^{-rho^2/2} dV on the hyperbolic
// space, its functionals, and the potential bracket shared by the Gaussian
// log-Sobolev and generalized Poincare verifiers.

#include <cmath>
#include <functional>

#include "ineq/constants.hpp"
#include "ineq/errors.hpp"
#include "ineq/manifold.hpp"
#include "ineq/numerics.hpp"
#include "ineq/profiles.hpp"

namespace ineq {

struct GaussianMeasure {
    int N = 3;
    double G = 0.0; // normalization, from the erf series
    ManifoldModel space;
};

inline GaussianMeasure gaussian_measure(int n_dim) {
    GaussianMeasure gm;
    gm.N = n_dim;
    gm.G = gaussian_normalization(n_dim);
    gm.space = builtin_manifold(BuiltinManifold::hyperbolic, n_dim);
    return gm;
}

inline double gaussian_density(const GaussianMeasure& gm, double rho) {
    return std::exp(-0.5 * rho * rho) / gm.G;
}

// int f dm by radial quadrature; the Gaussian factor dominates any
// polynomial or single-exponential growth of f.
inline QuadratureResult dm_integral_result(const GaussianMeasure& gm,
                                           const std::function<double(double)>& f,
                                           const QuadratureConfig& cfg = {}) {
    const int n_dim = gm.N;
    const ManifoldModel& m = gm.space;
    auto integrand = [&](double rho) {
        const double w = m.psi(rho);
        if (w <= 0.0) return 0.0;
        const double lw = (n_dim - 1) * std::log(w) - 0.5 * rho * rho;
        if (lw < -745.0) return 0.0;
        return f(rho) * std::exp(lw);
    };
    QuadratureConfig c = cfg;
    c.tail_cut = std::max(cfg.tail_cut, double(n_dim) + 10.0);
    QuadratureResult r = integrate_semi_infinite(integrand, c);
    r.value *= m.omega_nm1 / gm.G;
    r.error_estimate *= m.omega_nm1 / gm.G;
    return r;
}

inline double dm_integral(const GaussianMeasure& gm, const std::function<double(double)>& f,
                          const QuadratureConfig& cfg = {}) {
    return dm_integral_result(gm, f, cfg).value;
}

// rho coth rho - 1, with the removable singularity filled by series.
inline double rho_coth_rho_minus_one(double rho) {
    if (std::abs(rho) < 1e-3) {
        const double r2 = rho * rho;
        return r2 / 3.0 - r2 * r2 / 45.0 + 2.0 * r2 * r2 * r2 / 945.0;
    }
    return rho * std::cosh(rho) / std::sinh(rho) - 1.0;
}

// The zeroth-order bracket of the Gaussian log-Sobolev inequality:
//   (N-1)(rho coth rho - 1) - N^2 (N-1) / (2 (N+2)) + log C_2
inline double gaussian_bracket(const GaussianMeasure& gm, double rho) {
    const int n_dim = gm.N;
    return (n_dim - 1) * rho_coth_rho_minus_one(rho) -
           double(n_dim) * n_dim * (n_dim - 1) / (2.0 * (n_dim + 2)) +
           std::log(gaussian_c2(n_dim));
}

// int [bracket] u^2 dm
inline QuadratureResult potential_term_result(const GaussianMeasure& gm, const RadialProfile& u,
                                              const QuadratureConfig& cfg = {}) {
    return dm_integral_result(
        gm,
        [&](double rho) {
            const double v = u.value(rho);
            return gaussian_bracket(gm, rho) * v * v;
        },
        cfg);
}

inline double potential_term(const GaussianMeasure& gm, const RadialProfile& u,
                             const QuadratureConfig& cfg = {}) {
    return potential_term_result(gm, u, cfg).value;
}

// int |u'|^2 dm
inline QuadratureResult dirichlet_dm_result(const GaussianMeasure& gm, const RadialProfile& u,
                                            const QuadratureConfig& cfg = {}) {
    return dm_integral_result(
        gm,
        [&](double rho) {
            const double d = u.derivative(rho);
            return d * d;
        },
        cfg);
}

inline double dirichlet_dm(const GaussianMeasure& gm, const RadialProfile& u,
                           const QuadratureConfig& cfg = {}) {
    return dirichlet_dm_result(gm, u, cfg).value;
}

} // namespace ineq
