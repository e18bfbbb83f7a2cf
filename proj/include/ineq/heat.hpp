#pragma once

// Odd-dimension hyperbolic heat kernels, semigroup self-tests, the kernel
// measure gamma, and the semigroup-interpolation verifiers.
//
// For N = 2m+1 the kernel is ((-1)^m / (2 pi)^m) (4 pi t)^{-1/2} L^m seed,
// with L = (1/sinh rho) d/drho and seed = e^{-m^2 t - rho^2/(4t)}. N = 3 has
// the closed form (4 pi t)^{-3/2} (rho/sinh rho) e^{-t - rho^2/(4t)}; the
// higher kernels apply L numerically. Radial even functions are smooth in
// x = rho^2, and L = (2 rho / sinh rho) d/dx there, so the nested derivatives
// are taken in x with widening steps per level.

#include <algorithm>
#include <cmath>
#include <functional>

#include "ineq/errors.hpp"
#include "ineq/manifold.hpp"
#include "ineq/numerics.hpp"
#include "ineq/profiles.hpp"
#include "ineq/report.hpp"

namespace ineq {

struct HeatKernelSpec {
    int N = 3;          // odd, in {3, 5, 7}
    double t = 1.0;     // time > 0
    double alpha = 1.0; // semigroup time scale; the measure gamma uses p_N(rho, alpha)
};

namespace detail {

inline void validate_heat_spec(const HeatKernelSpec& spec) {
    if (spec.N != 3 && spec.N != 5 && spec.N != 7)
        throw RangeError("heat kernel: N must be 3, 5 or 7");
    if (!(spec.t > 0.0)) throw RangeError("heat kernel: need t > 0");
    if (!(spec.alpha > 0.0)) throw RangeError("heat kernel: need alpha > 0");
}

inline double rho_over_sinh(double rho) {
    if (rho < 1e-4) {
        const double r2 = rho * rho;
        return 1.0 - r2 / 6.0 + 7.0 * r2 * r2 / 360.0;
    }
    return rho / std::sinh(rho);
}

// 2 rho / sinh rho as a function of x = rho^2
inline double heat_w(double x) { return 2.0 * rho_over_sinh(std::sqrt(std::max(x, 0.0))); }

// O(h^4) first derivative; one-sided stencil near the x = 0 boundary.
template <class F>
double deriv_x(F&& f, double x, double h) {
    if (x >= 2.0 * h) {
        return (f(x - 2.0 * h) - 8.0 * f(x - h) + 8.0 * f(x + h) - f(x + 2.0 * h)) / (12.0 * h);
    }
    return (-25.0 * f(x) + 48.0 * f(x + h) - 36.0 * f(x + 2.0 * h) + 16.0 * f(x + 3.0 * h) -
            3.0 * f(x + 4.0 * h)) /
           (12.0 * h);
}

// m-fold application of L to the exponential seed, in x coordinates.
// Steps widen per level to absorb the noise of the inner derivative.
inline double heat_l_power(int m, double t, double x) {
    const double scale = std::max(1.0, 4.0 * t);
    const double steps[3] = {1e-3 * scale, 6e-3 * scale, 3e-2 * scale};
    std::function<double(int, double)> level = [&](int k, double xx) -> double {
        if (k == 0) return std::exp(-double(m) * m * t - xx / (4.0 * t));
        const double h = steps[k - 1];
        return heat_w(xx) * deriv_x([&](double y) { return level(k - 1, y); }, xx, h);
    };
    return level(m, x);
}

} // namespace detail

// Kernel density p_N(rho, spec.t); the removable singularity at rho = 0 is
// filled by the analytic limit.
inline double heat_kernel(const HeatKernelSpec& spec, double rho) {
    detail::validate_heat_spec(spec);
    if (rho < 0.0) throw RangeError("heat kernel: need rho >= 0");
    const double t = spec.t;
    const double pi = std::acos(-1.0);
    if (spec.N == 3) {
        const double value = std::pow(4.0 * pi * t, -1.5) * detail::rho_over_sinh(rho) *
                             std::exp(-t - rho * rho / (4.0 * t));
        if (!std::isfinite(value)) throw NonFinite("heat kernel overflow");
        return value;
    }
    const int m = (spec.N - 1) / 2;
    const double sign = (m % 2 == 0) ? 1.0 : -1.0;
    const double value = sign / std::pow(2.0 * pi, double(m)) / std::sqrt(4.0 * pi * t) *
                         detail::heat_l_power(m, t, rho * rho);
    if (!std::isfinite(value)) throw NonFinite("heat kernel overflow");
    return value;
}

namespace detail {

// int g(rho) p_N(rho, time) dV by radial quadrature
template <class G>
QuadratureResult heat_radial_integral(const HeatKernelSpec& spec, double time, G&& g,
                                      const QuadratureConfig& cfg = {}) {
    HeatKernelSpec at_time = spec;
    at_time.t = time;
    const int n_dim = spec.N;
    const ManifoldModel m = builtin_manifold(BuiltinManifold::hyperbolic, n_dim);
    auto f = [&](double rho) {
        const double w = m.psi(rho);
        const double kern = heat_kernel(at_time, rho);
        if (w <= 0.0 || kern <= 0.0) return 0.0;
        return g(rho) * kern * std::pow(w, n_dim - 1);
    };
    QuadratureConfig c = cfg;
    // the integrand peaks near rho = 2(N-1)t against the volume growth
    c.tail_cut = std::max(cfg.tail_cut, 2.0 * (n_dim - 1) * time + 12.0 * std::sqrt(time) + 8.0);
    QuadratureResult r = integrate_semi_infinite(f, c);
    r.value *= m.omega_nm1;
    r.error_estimate *= m.omega_nm1;
    return r;
}

} // namespace detail

// Total mass int p_N dV; the mass-conservation oracle expects 1.
inline double heat_normalization(const HeatKernelSpec& spec, const QuadratureConfig& cfg = {}) {
    detail::validate_heat_spec(spec);
    return detail::heat_radial_integral(spec, spec.t, [](double) { return 1.0; }, cfg).value;
}

// max over the grid of |d_t p - (d_rho^2 p + (N-1) coth(rho) d_rho p)|,
// central finite differences.
inline double heat_pde_residual(const HeatKernelSpec& spec, double rho_min, double rho_max,
                                int n_rho, double t_min, double t_max, int n_t) {
    detail::validate_heat_spec(spec);
    if (n_rho <= 0 || n_t <= 0) return 0.0;
    if (!(rho_min > 0.0) || !(t_min > 0.0))
        throw RangeError("heat_pde_residual: grid must be strictly inside (0,inf)^2");
    const double h_rho = (spec.N == 3) ? 5e-4 : 8e-3;
    const double h_t = (spec.N == 3) ? 5e-4 : 8e-3;
    double worst = 0.0;
    for (int i = 0; i < n_rho; ++i) {
        const double rho = n_rho == 1 ? rho_min : rho_min + (rho_max - rho_min) * i / (n_rho - 1);
        for (int j = 0; j < n_t; ++j) {
            const double tt = n_t == 1 ? t_min : t_min + (t_max - t_min) * j / (n_t - 1);
            auto at = [&](double r, double time) {
                HeatKernelSpec s = spec;
                s.t = time;
                return heat_kernel(s, r);
            };
            const double pc = at(rho, tt);
            const double dt = (at(rho, tt + h_t) - at(rho, tt - h_t)) / (2.0 * h_t);
            const double dr = (at(rho + h_rho, tt) - at(rho - h_rho, tt)) / (2.0 * h_rho);
            const double drr =
                (at(rho + h_rho, tt) - 2.0 * pc + at(rho - h_rho, tt)) / (h_rho * h_rho);
            const double res =
                dt - (drr + (spec.N - 1) / std::tanh(rho) * dr);
            if (!std::isfinite(res)) throw NonFinite("heat_pde_residual: non-finite sample");
            worst = std::max(worst, std::abs(res));
        }
    }
    return worst;
}

// Origin-reduced semigroup identity P_s P_t = P_{s+t}:
// lhs = int p(rho,s) p(rho,t) dV, rhs = p(0, s+t).
inline std::pair<double, double> chapman_kolmogorov_origin(const HeatKernelSpec& spec, double s,
                                                           double t,
                                                           const QuadratureConfig& cfg = {}) {
    detail::validate_heat_spec(spec);
    if (!(s > 0.0) || !(t > 0.0)) throw RangeError("chapman_kolmogorov: need s, t > 0");
    HeatKernelSpec other = spec;
    other.t = t;
    const double lhs =
        detail::heat_radial_integral(spec, s, [&](double rho) { return heat_kernel(other, rho); },
                                     cfg)
            .value;
    HeatKernelSpec sum = spec;
    sum.t = s + t;
    return {lhs, heat_kernel(sum, 0.0)};
}

// P_1 f(0) = int f p_N(rho, alpha) dV
inline double semigroup_apply_origin(const RadialProfile& f, const HeatKernelSpec& spec,
                                     const QuadratureConfig& cfg = {}) {
    detail::validate_heat_spec(spec);
    return detail::heat_radial_integral(spec, spec.alpha,
                                        [&](double rho) { return f.value(rho); }, cfg)
        .value;
}

// ---------------------------------------------------------------------------
// Interpolation inequalities for the measure dgamma = p_N(rho, alpha) dV.

// (int |f|^q dgamma)^{2/q} - (int |f|^p dgamma)^{2/p}
//     <= 2 alpha (q - p) (int |grad f|^q dgamma)^{2/q}
inline InequalityReport verify_extended_beckner(const RadialProfile& f,
                                                const HeatKernelSpec& spec, double p, double q,
                                                const QuadratureConfig& cfg = {}) {
    detail::validate_heat_spec(spec);
    if (!(q >= 2.0) || !(p >= 1.0) || !(p <= q))
        throw RangeError("extended_beckner: need q >= 2 and 1 <= p <= q");
    InequalityReport rep;
    rep.id = InequalityId::extended_beckner;
    rep.params.N = spec.N;
    rep.params.p = p;
    rep.params.q = q;
    rep.params.alpha_time = spec.alpha;
    rep.manifold_label = "hyperbolic";
    rep.profile_label = f.label;
    auto moment = [&](double r) {
        return detail::heat_radial_integral(
            spec, spec.alpha, [&](double rho) { return std::pow(std::abs(f.value(rho)), r); },
            cfg);
    };
    const QuadratureResult iq = moment(q);
    const QuadratureResult ip = moment(p);
    const QuadratureResult grad = detail::heat_radial_integral(
        spec, spec.alpha, [&](double rho) { return std::pow(std::abs(f.derivative(rho)), q); },
        cfg);
    rep.lhs = std::pow(iq.value, 2.0 / q) - std::pow(ip.value, 2.0 / p);
    rep.rhs = 2.0 * spec.alpha * (q - p) * std::pow(grad.value, 2.0 / q);
    rep.quad_error = iq.error_estimate + ip.error_estimate + grad.error_estimate;
    rep.finish();
    return rep;
}

// int f^2 log f^2 dgamma <= log(int f^2 dgamma) int f^2 dgamma
//                            + 4 alpha int |grad f|^2 dgamma
inline InequalityReport verify_gamma_log_sobolev(const RadialProfile& f,
                                                 const HeatKernelSpec& spec,
                                                 const QuadratureConfig& cfg = {}) {
    detail::validate_heat_spec(spec);
    InequalityReport rep;
    rep.id = InequalityId::gamma_log_sobolev;
    rep.params.N = spec.N;
    rep.params.p = 2.0;
    rep.params.alpha_time = spec.alpha;
    rep.manifold_label = "hyperbolic";
    rep.profile_label = f.label;
    auto ent = detail::heat_radial_integral(
        spec, spec.alpha,
        [&](double rho) {
            const double v = f.value(rho) * f.value(rho);
            return v > 0.0 ? v * std::log(v) : 0.0;
        },
        cfg);
    auto mass = detail::heat_radial_integral(
        spec, spec.alpha, [&](double rho) { return f.value(rho) * f.value(rho); }, cfg);
    auto grad = detail::heat_radial_integral(
        spec, spec.alpha, [&](double rho) { return f.derivative(rho) * f.derivative(rho); },
        cfg);
    rep.lhs = ent.value;
    rep.rhs = std::log(mass.value) * mass.value + 4.0 * spec.alpha * grad.value;
    rep.quad_error = ent.error_estimate + mass.error_estimate + grad.error_estimate;
    rep.finish();
    return rep;
}

} // namespace ineq
