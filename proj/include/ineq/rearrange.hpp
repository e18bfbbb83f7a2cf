#pragma once

// Distribution functions, decreasing rearrangements, and the radial
// L^p / entropy / gradient functionals on model manifolds, including the
// split of the rearranged gradient energy into its Euclidean part and the
// warped correction term.
//
// All radial integrands are assembled in log space so that exponentially
// small profile values against exponentially large volume weights never
// overflow halfway through a product.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "ineq/constants.hpp"
#include "ineq/errors.hpp"
#include "ineq/manifold.hpp"
#include "ineq/numerics.hpp"
#include "ineq/profiles.hpp"

namespace ineq {

struct VolumeProfile {
    std::function<double(double)> value;      // v(s), non-increasing
    std::function<double(double)> derivative; // v'(s)
    double support_bound = std::numeric_limits<double>::infinity();
};

namespace detail {

inline double exp_safe(double log_sum) {
    if (log_sum < -745.0) return 0.0;
    if (log_sum > 709.0) throw NonFinite("radial integrand overflowed");
    return std::exp(log_sum);
}

// Radius beyond which the profile is negligible against every level and
// weight we integrate, capped by the validity interval of the warp.
inline double profile_span(const RadialProfile& u, const ManifoldModel& m) {
    double span;
    switch (u.decay.kind) {
        case DecayKind::gaussian: span = std::sqrt(80.0 / u.decay.rate) + 3.0; break;
        case DecayKind::exponential: span = 80.0 / std::max(u.decay.rate, 1e-6) + 10.0; break;
        case DecayKind::compact: span = u.decay.rate; break;
        default: span = 80.0; break;
    }
    return std::min(span, m.validity_end);
}

inline void require_integrable(const RadialProfile& u, const ManifoldModel& m, double p) {
    if (u.decay.kind != DecayKind::exponential) return;
    if (p * u.decay.rate <= m.growth_rate + 0.05)
        throw NotIntegrable("profile " + u.label + " with p=" + std::to_string(p) +
                            " decays too slowly against the volume growth of " + m.label);
}

// Integrate a radial integrand against the manifold, honoring compact
// support and finite validity intervals.
template <class F>
QuadratureResult integrate_radial(F&& f, const RadialProfile& u, const ManifoldModel& m,
                                  const QuadratureConfig& cfg) {
    const double span = profile_span(u, m);
    if (u.decay.kind == DecayKind::compact || std::isfinite(m.validity_end))
        return integrate_adaptive(f, 0.0, span, cfg);
    QuadratureConfig c = cfg;
    c.tail_cut = std::min(std::max(cfg.tail_cut, 0.25 * span), span);
    return integrate_semi_infinite(f, c);
}

} // namespace detail

// ---------------------------------------------------------------------------
// Norms and entropy.

// int |u|^p dV, as a quadrature result.
inline QuadratureResult lp_power(const RadialProfile& u, const ManifoldModel& m, double p,
                                 const QuadratureConfig& cfg = {}) {
    if (!(p >= 1.0)) throw RangeError("lp_power: need p >= 1");
    detail::require_integrable(u, m, p);
    const int n_dim = m.dim;
    auto f = [&](double rho) {
        const double a = std::abs(u.value(rho));
        const double w = m.psi(rho);
        if (a <= 0.0 || w <= 0.0) return 0.0;
        return detail::exp_safe(p * std::log(a) + (n_dim - 1) * std::log(w));
    };
    QuadratureResult r = detail::integrate_radial(f, u, m, cfg);
    r.value *= m.omega_nm1;
    r.error_estimate *= m.omega_nm1;
    return r;
}

inline double lp_norm(const RadialProfile& u, const ManifoldModel& m, double p,
                      const QuadratureConfig& cfg = {}) {
    return std::pow(lp_power(u, m, p, cfg).value, 1.0 / p);
}

// int |u'|^p dV; the radial gradient of a radial function.
inline QuadratureResult grad_lp_power(const RadialProfile& u, const ManifoldModel& m, double p,
                                      const QuadratureConfig& cfg = {}) {
    if (!(p >= 1.0)) throw RangeError("grad_lp_power: need p >= 1");
    detail::require_integrable(u, m, p);
    const int n_dim = m.dim;
    auto f = [&](double rho) {
        const double a = std::abs(u.derivative(rho));
        const double w = m.psi(rho);
        if (a <= 0.0 || w <= 0.0) return 0.0;
        return detail::exp_safe(p * std::log(a) + (n_dim - 1) * std::log(w));
    };
    QuadratureResult r = detail::integrate_radial(f, u, m, cfg);
    r.value *= m.omega_nm1;
    r.error_estimate *= m.omega_nm1;
    return r;
}

inline double grad_lp_norm(const RadialProfile& u, const ManifoldModel& m, double p,
                           const QuadratureConfig& cfg = {}) {
    return std::pow(grad_lp_power(u, m, p, cfg).value, 1.0 / p);
}

namespace detail {

// Radii 0 = b_0 < b_1 < ... < b_k = span splitting [0, span] into intervals
// on which u is monotone, located by derivative sign flips plus bisection.
inline std::vector<double> monotone_breakpoints(const RadialProfile& u, double span) {
    constexpr int kScan = 2048;
    std::vector<double> out{0.0};
    int last_sign = 0;
    double last_rho = 0.0;
    for (int i = 0; i <= kScan; ++i) {
        const double rho = span * i / kScan;
        const double d = u.derivative(rho);
        const int sign = d > 0.0 ? 1 : (d < 0.0 ? -1 : 0);
        if (sign != 0 && last_sign != 0 && sign != last_sign) {
            double lo = last_rho, hi = rho;
            for (int it = 0; it < 80 && hi - lo > 1e-13 * std::max(1.0, hi); ++it) {
                const double mid = 0.5 * (lo + hi);
                const double dm = u.derivative(mid);
                ((dm > 0.0 ? 1 : (dm < 0.0 ? -1 : -last_sign)) == last_sign ? lo : hi) = mid;
            }
            out.push_back(0.5 * (lo + hi));
        }
        if (sign != 0) {
            last_sign = sign;
            last_rho = rho;
        }
    }
    out.push_back(span);
    return out;
}

// Volume of the superlevel set { u > t } by per-segment monotone inversion.
inline double superlevel_volume(const RadialProfile& u, const ManifoldModel& m, double t,
                                const std::vector<double>& breaks) {
    double vol = 0.0;
    for (size_t i = 0; i + 1 < breaks.size(); ++i) {
        const double a = breaks[i], b = breaks[i + 1];
        const double ua = u.value(a), ub = u.value(b);
        if (t >= std::max(ua, ub)) continue;
        double lo = a, hi = b;
        if (t >= std::min(ua, ub)) {
            if (ub >= ua)
                lo = invert_monotone([&](double r) { return u.value(r); }, t, a, b);
            else
                hi = invert_monotone([&](double r) { return -u.value(r); }, -t, a, b);
        }
        vol += ball_volume(m, hi) - ball_volume(m, lo);
    }
    return vol;
}

// Crossing radii of u with a level, located by scan plus bisection.
inline std::vector<double> level_crossings(const RadialProfile& u, double level, double span) {
    constexpr int kScan = 4096;
    std::vector<double> out;
    double prev_rho = 0.0;
    double prev = u.value(0.0) - level;
    for (int i = 1; i <= kScan; ++i) {
        const double rho = span * i / kScan;
        const double cur = u.value(rho) - level;
        if ((prev > 0.0) != (cur > 0.0)) {
            double lo = prev_rho, hi = rho;
            const bool rising = cur > 0.0;
            for (int it = 0; it < 100 && (hi - lo) > 1e-14 * std::max(1.0, hi); ++it) {
                const double mid = 0.5 * (lo + hi);
                const bool above = u.value(mid) - level > 0.0;
                (above == rising ? hi : lo) = mid;
            }
            out.push_back(0.5 * (lo + hi));
        }
        prev_rho = rho;
        prev = cur;
    }
    return out;
}

} // namespace detail

// int |u|^p ln|u| dV, split at the u = 1 level set; u^p ln u := 0 where u = 0.
inline QuadratureResult entropy_integral_result(const RadialProfile& u, const ManifoldModel& m,
                                                double p, const QuadratureConfig& cfg = {}) {
    detail::require_integrable(u, m, p);
    const int n_dim = m.dim;
    auto f = [&](double rho) {
        const double a = std::abs(u.value(rho));
        const double w = m.psi(rho);
        if (a <= 0.0 || w <= 0.0) return 0.0;
        const double la = std::log(a);
        return detail::exp_safe(p * la + (n_dim - 1) * std::log(w)) * la;
    };
    const double span = detail::profile_span(u, m);
    const auto cross = detail::level_crossings(u, 1.0, span);
    if (cross.empty()) {
        QuadratureResult r = detail::integrate_radial(f, u, m, cfg);
        r.value *= m.omega_nm1;
        r.error_estimate *= m.omega_nm1;
        return r;
    }

    QuadratureResult total;
    double left = 0.0;
    for (double c : cross) {
        QuadratureResult piece = integrate_adaptive(f, left, c, cfg);
        total.value += piece.value;
        total.error_estimate += piece.error_estimate;
        total.evaluations += piece.evaluations;
        left = c;
    }
    QuadratureResult tail;
    if (u.decay.kind == DecayKind::compact || std::isfinite(m.validity_end)) {
        tail = integrate_adaptive(f, left, span, cfg);
    } else {
        const double base = left;
        tail = integrate_semi_infinite([&](double x) { return f(base + x); }, cfg);
    }
    total.value += tail.value;
    total.error_estimate += tail.error_estimate;
    total.evaluations += tail.evaluations;
    total.value *= m.omega_nm1;
    total.error_estimate *= m.omega_nm1;
    return total;
}

inline double entropy_integral(const RadialProfile& u, const ManifoldModel& m, double p,
                               const QuadratureConfig& cfg = {}) {
    return entropy_integral_result(u, m, p, cfg).value;
}

// ---------------------------------------------------------------------------
// Distribution function and rearrangements.

// mu_u(t) = Vol({ |u| > t }), by superlevel-interval location.
inline double distribution_function(const RadialProfile& u, const ManifoldModel& m, double t,
                                    const QuadratureConfig& cfg = {}) {
    (void)cfg;
    if (!(t > 0.0)) throw RangeError("distribution_function: need level t > 0");
    const double span = detail::profile_span(u, m);
    auto cross = detail::level_crossings(u, t, span);
    std::vector<double> edges;
    if (u.value(0.0) > t) edges.push_back(0.0);
    for (double c : cross) edges.push_back(c);
    if (edges.size() % 2 == 1) edges.push_back(span); // still above the level at span
    double vol = 0.0;
    for (size_t i = 0; i + 1 < edges.size(); i += 2)
        vol += ball_volume(m, edges[i + 1]) - ball_volume(m, edges[i]);
    return vol;
}

// u is non-increasing if its derivative never turns positive on the span.
inline bool profile_monotone(const RadialProfile& u, const ManifoldModel& m) {
    const double span = detail::profile_span(u, m);
    for (int i = 0; i <= 256; ++i) {
        const double rho = span * i / 256.0;
        if (u.derivative(rho) > 1e-10 * (1.0 + std::abs(u.value(rho)))) return false;
    }
    return true;
}

// Decreasing rearrangement v(s) = u^*(s), parameterized by volume. Monotone
// profiles reduce to a change of variables through Phi; general profiles
// invert the distribution function.
inline VolumeProfile decreasing_rearrangement(const RadialProfile& u, const ManifoldModel& m,
                                              const QuadratureConfig& cfg = {}) {
    VolumeProfile vp;
    if (u.decay.kind == DecayKind::compact)
        vp.support_bound = ball_volume(m, std::min(u.decay.rate, m.validity_end));

    if (profile_monotone(u, m)) {
        const ManifoldModel model = m; // immutable copy shared by the closures
        auto val = u.value;
        auto der = u.derivative;
        const double support = vp.support_bound;
        vp.value = [model, val, support](double s) {
            if (s < 0.0) throw DomainError("volume coordinate must be >= 0");
            if (s >= support) return 0.0;
            return val(phi_inverse(model, s / model.sigma_n));
        };
        vp.derivative = [model, der, support](double s) {
            if (s >= support) return 0.0;
            const double rho = std::max(phi_inverse(model, s / model.sigma_n), 1e-12);
            return der(rho) / (model.omega_nm1 * std::pow(model.psi(rho), model.dim - 1));
        };
        return vp;
    }

    const ManifoldModel model = m;
    const RadialProfile prof = u;
    const double span = detail::profile_span(u, m);
    double peak = 0.0;
    for (int i = 0; i <= 4096; ++i)
        peak = std::max(peak, std::abs(prof.value(span * i / 4096.0)));
    const QuadratureConfig c = cfg;
    auto value = [model, prof, peak, c](double s) {
        if (s < 0.0) throw DomainError("volume coordinate must be >= 0");
        double lo = 0.0, hi = peak; // invariant: mu(lo) > s >= mu(hi)
        for (int it = 0; it < 60; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (mid <= 0.0) break;
            (distribution_function(prof, model, mid, c) > s ? lo : hi) = mid;
        }
        return lo;
    };
    vp.value = value;
    vp.derivative = [value](double s) {
        const double h = 1e-5 * std::max(1.0, s);
        return (value(s + h) - value(std::max(0.0, s - h))) / (h + std::min(s, h));
    };
    return vp;
}

// (int_0^support v^q ds)^{1/q}. The substitution s = e^y - 1 turns the
// algebraic tail of v into an exponential one.
inline double lp_norm_volume(const VolumeProfile& v, double q,
                             const QuadratureConfig& cfg = {}) {
    if (!(q >= 1.0)) throw RangeError("lp_norm_volume: need q >= 1");
    QuadratureResult r;
    if (std::isfinite(v.support_bound)) {
        r = integrate_adaptive([&](double s) { return std::pow(v.value(s), q); }, 0.0,
                               v.support_bound, cfg);
    } else {
        QuadratureConfig c = cfg;
        c.tail_cut = 55.0;
        r = integrate_semi_infinite(
            [&](double y) {
                const double ey = std::exp(y);
                return std::pow(v.value(ey - 1.0), q) * ey;
            },
            c);
    }
    return std::pow(r.value, 1.0 / q);
}

// ---------------------------------------------------------------------------
// Gradient decomposition of the rearranged energy.

struct GradientDecomposition {
    double euclidean_term = 0.0;  // int_{R^N} |grad u_e|^p dx
    double correction_term = 0.0; // (N sigma_N)^p int |v'|^p k_{N,p}(s/sigma_N) ds
    double quad_error = 0.0;
};

// Both terms are evaluated in the radius variable through s = sigma_N Phi(rho);
// the correction factor goes through the kernel (and its Phi inversion) so the
// identity euclidean + correction = ||grad u||_p^p genuinely tests the chain.
inline GradientDecomposition gradient_decomposition(const RadialProfile& u,
                                                    const ManifoldModel& m, double p,
                                                    const QuadratureConfig& cfg = {}) {
    if (!(p >= 2.0)) throw RangeError("gradient_decomposition: need p >= 2");
    if (!profile_monotone(u, m))
        throw MonotoneRequired("gradient_decomposition: profile must be non-increasing");
    detail::require_integrable(u, m, p);
    const int n_dim = m.dim;
    const double b = (1.0 - p) * (n_dim - 1);

    auto euclid_f = [&](double rho) {
        const double a = std::abs(u.derivative(rho));
        const double w = m.psi(rho);
        if (a <= 0.0 || w <= 0.0) return 0.0;
        const double lphi = std::log(phi(m, rho));
        return detail::exp_safe(p * std::log(a) + b * std::log(w) +
                                p * (n_dim - 1) / double(n_dim) * lphi);
    };
    auto corr_f = [&](double rho) {
        const double a = std::abs(u.derivative(rho));
        const double w = m.psi(rho);
        if (a <= 0.0 || w <= 0.0) return 0.0;
        const double weight = detail::exp_safe(p * std::log(a) + b * std::log(w));
        if (weight == 0.0) return 0.0;
        return weight * correction_kernel(m, p, phi(m, rho));
    };
    QuadratureResult euclid = detail::integrate_radial(euclid_f, u, m, cfg);
    QuadratureResult corr = detail::integrate_radial(corr_f, u, m, cfg);
    GradientDecomposition out;
    out.euclidean_term = m.omega_nm1 * euclid.value;
    out.correction_term = m.omega_nm1 * corr.value;
    out.quad_error = m.omega_nm1 * (euclid.error_estimate + corr.error_estimate);
    return out;
}

} // namespace ineq
