#pragma once

// Rotationally symmetric model manifolds g = dr^2 + psi(r)^2 g_{S^{N-1}}.
// A model owns the warp psi with derivatives up to order 3, the volume
// coordinate Phi(t) = N * int_0^t psi^{N-1}, and checkers for the sufficient
// conditions a warp must satisfy for the correction-kernel machinery.
//
// Warp mini-grammar for the CLI: `sinh`, `id`, `poly:c1,...,c5` (coefficients
// of t^1..t^5), each optionally suffixed `@interval:a,b`.

#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ineq/errors.hpp"
#include "ineq/numerics.hpp"

namespace ineq {

enum class WarpKind { euclidean, hyperbolic, poly };

struct ManifoldModel {
    int dim = 3;
    std::function<double(double)> psi, psi_d1, psi_d2, psi_d3;
    std::string label;
    WarpKind kind = WarpKind::hyperbolic;
    double validity_end = std::numeric_limits<double>::infinity();
    double omega_nm1 = 0.0; // area of the unit sphere S^{N-1}
    double sigma_n = 0.0;   // volume of the unit ball, omega_nm1 / N
    // Exponential volume-growth rate; (N-1) for hyperbolic, 0 otherwise.
    double growth_rate = 0.0;
    // For poly warps: coefficients of Phi(t) (power-indexed), kept exact.
    std::vector<double> phi_coeffs;
};

enum class BuiltinManifold { euclidean, hyperbolic, counterexample };

namespace detail {

inline double unit_sphere_area(int n_dim) {
    return 2.0 * std::pow(std::acos(-1.0), 0.5 * n_dim) / std::tgamma(0.5 * n_dim);
}

inline std::vector<double> poly_multiply(const std::vector<double>& a,
                                         const std::vector<double>& b) {
    std::vector<double> out(a.size() + b.size() - 1, 0.0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

inline double poly_eval(const std::vector<double>& c, double t) {
    double v = 0.0;
    for (size_t i = c.size(); i-- > 0;) v = v * t + c[i];
    return v;
}

inline std::vector<double> poly_derivative(const std::vector<double>& c) {
    if (c.size() <= 1) return {0.0};
    std::vector<double> out(c.size() - 1);
    for (size_t i = 1; i < c.size(); ++i) out[i - 1] = c[i] * double(i);
    return out;
}

// sinh(x) - x without cancellation at small x.
inline double sinh_minus_id(double x) {
    if (std::abs(x) > 1.0) return std::sinh(x) - x;
    double term = x * x * x / 6.0;
    double sum = term;
    for (int k = 2; k <= 10; ++k) {
        term *= x * x / double((2 * k) * (2 * k + 1));
        sum += term;
    }
    return sum;
}

// First zero of psi beyond the pole, if any; bounds the validity interval.
inline double first_positive_root(const std::function<double(double)>& psi) {
    double prev = 1e-4;
    double fprev = psi(prev);
    for (double t = 0.01; t <= 100.0; t += 0.01) {
        const double ft = psi(t);
        if (fprev > 0.0 && ft <= 0.0) {
            double lo = prev, hi = t;
            for (int i = 0; i < 200 && (hi - lo) > 1e-14 * hi; ++i) {
                const double mid = 0.5 * (lo + hi);
                (psi(mid) > 0.0 ? lo : hi) = mid;
            }
            return 0.5 * (lo + hi);
        }
        prev = t;
        fprev = ft;
    }
    return std::numeric_limits<double>::infinity();
}

} // namespace detail

inline ManifoldModel make_poly_manifold(const std::vector<double>& coeffs, int n_dim,
                                        std::optional<std::pair<double, double>> interval,
                                        const std::string& label) {
    if (n_dim < 2) throw DimensionError("manifold dimension must be >= 2");
    ManifoldModel m;
    m.dim = n_dim;
    m.kind = WarpKind::poly;
    m.label = label;
    std::vector<double> c(6, 0.0); // powers t^0..t^5, constant term zero
    for (size_t i = 0; i < coeffs.size() && i < 5; ++i) c[i + 1] = coeffs[i];
    const auto d1 = detail::poly_derivative(c);
    const auto d2 = detail::poly_derivative(d1);
    const auto d3 = detail::poly_derivative(d2);
    m.psi = [c](double t) { return detail::poly_eval(c, t); };
    m.psi_d1 = [d1](double t) { return detail::poly_eval(d1, t); };
    m.psi_d2 = [d2](double t) { return detail::poly_eval(d2, t); };
    m.psi_d3 = [d3](double t) { return detail::poly_eval(d3, t); };
    m.validity_end = interval ? interval->second : detail::first_positive_root(m.psi);
    m.omega_nm1 = detail::unit_sphere_area(n_dim);
    m.sigma_n = m.omega_nm1 / n_dim;
    // Exact antiderivative of N * psi^{N-1}.
    std::vector<double> power{1.0};
    for (int k = 0; k < n_dim - 1; ++k) power = detail::poly_multiply(power, c);
    m.phi_coeffs.assign(power.size() + 1, 0.0);
    for (size_t j = 0; j < power.size(); ++j)
        m.phi_coeffs[j + 1] = double(n_dim) * power[j] / double(j + 1);
    return m;
}

inline ManifoldModel builtin_manifold(BuiltinManifold which, int n_dim) {
    if (n_dim < 2) throw DimensionError("manifold dimension must be >= 2");
    ManifoldModel m;
    m.dim = n_dim;
    m.omega_nm1 = detail::unit_sphere_area(n_dim);
    m.sigma_n = m.omega_nm1 / n_dim;
    switch (which) {
        case BuiltinManifold::euclidean:
            m.kind = WarpKind::euclidean;
            m.label = "euclidean";
            m.psi = [](double t) { return t; };
            m.psi_d1 = [](double) { return 1.0; };
            m.psi_d2 = [](double) { return 0.0; };
            m.psi_d3 = [](double) { return 0.0; };
            return m;
        case BuiltinManifold::hyperbolic:
            m.kind = WarpKind::hyperbolic;
            m.label = "hyperbolic";
            m.growth_rate = double(n_dim - 1);
            m.psi = [](double t) { return std::sinh(t); };
            m.psi_d1 = [](double t) { return std::cosh(t); };
            m.psi_d2 = [](double t) { return std::sinh(t); };
            m.psi_d3 = [](double t) { return std::cosh(t); };
            return m;
        case BuiltinManifold::counterexample:
            // psi = t + t^3 - t^5, positive up to t ~ 1.272.
            return make_poly_manifold({1.0, 0.0, 1.0, 0.0, -1.0}, n_dim, std::nullopt,
                                      "counterexample");
    }
    throw DimensionError("unreachable");
}

inline void require_in_validity(const ManifoldModel& m, double t) {
    if (t < 0.0 || t > m.validity_end)
        throw DomainError("radius " + std::to_string(t) + " outside validity interval of " +
                          m.label);
}

// Volume coordinate Phi(t) = N * int_0^t psi^{N-1}. Closed forms for the
// Euclidean warp, hyperbolic N <= 4 and polynomial warps; quadrature otherwise.
inline double phi(const ManifoldModel& m, double t) {
    require_in_validity(m, t);
    if (t == 0.0) return 0.0;
    const int n_dim = m.dim;
    switch (m.kind) {
        case WarpKind::euclidean:
            return std::pow(t, double(n_dim));
        case WarpKind::hyperbolic: {
            // cancellation-free closed forms
            const double sh = std::sinh(0.5 * t);
            if (n_dim == 2) return 4.0 * sh * sh;
            if (n_dim == 3) return 0.75 * detail::sinh_minus_id(2.0 * t);
            if (n_dim == 4) return (16.0 / 3.0) * sh * sh * sh * sh * (std::cosh(t) + 2.0);
            break;
        }
        case WarpKind::poly:
            return detail::poly_eval(m.phi_coeffs, t);
    }
    QuadratureConfig cfg;
    cfg.rel_tol = 1e-13;
    cfg.abs_tol = 1e-300;
    auto integrand = [&](double y) {
        return double(n_dim) * std::pow(m.psi(y), double(n_dim - 1));
    };
    return integrate_adaptive(integrand, 0.0, t, cfg).value;
}

inline double phi_inverse(const ManifoldModel& m, double s) {
    if (s < 0.0) throw DomainError("volume coordinate must be nonnegative");
    if (s == 0.0) return 0.0;
    double hi = std::min(1.0, m.validity_end);
    while (phi(m, hi) < s) {
        if (hi >= m.validity_end) {
            if (phi(m, m.validity_end) < s)
                throw DomainError("volume coordinate beyond validity interval of " + m.label);
            break;
        }
        hi = std::min(2.0 * hi, m.validity_end);
    }
    return invert_monotone([&](double t) { return phi(m, t); }, s, 0.0, hi);
}

inline double ball_volume(const ManifoldModel& m, double r) {
    return m.sigma_n * phi(m, r);
}

// Cubic Taylor coefficient of the warp: psi(t) = t + a3 t^3 + o(t^3).
inline double taylor_a3(const ManifoldModel& m) {
    const double d3 = m.psi_d3(0.0);
    if (!std::isfinite(d3)) throw NonFinite("taylor_a3: psi'''(0) not finite");
    return d3 / 6.0;
}

// lim_{t->inf} psi'(t)/psi(t), by Aitken extrapolation of samples at
// t = 10, 20, 40, 80 (exact for c + a/t and for geometric convergence).
inline double c1_limit(const ManifoldModel& m) {
    if (m.validity_end < 80.0)
        throw DomainError("c1_limit needs psi positive on [0, 80]; " + m.label +
                          " has a finite validity interval");
    auto ratio = [&](double t) { return m.psi_d1(t) / m.psi(t); };
    auto aitken = [](double x0, double x1, double x2) -> std::optional<double> {
        const double denom = x0 - 2.0 * x1 + x2;
        if (denom == 0.0) {
            if (std::abs(x2 - x1) <= 1e-12 * std::max(1.0, std::abs(x2))) return x2;
            return std::nullopt;
        }
        return x2 - (x2 - x1) * (x2 - x1) / denom;
    };
    const double f10 = ratio(10.0), f20 = ratio(20.0), f40 = ratio(40.0), f80 = ratio(80.0);
    const auto a1 = aitken(f10, f20, f40);
    const auto a2 = aitken(f20, f40, f80);
    if (!a1 || !a2) throw NotConvergent("c1_limit: extrapolation degenerate");
    if (std::abs(*a2 - *a1) > 1e-6 * std::max(1.0, std::abs(*a2)))
        throw NotConvergent("c1_limit: psi'/psi did not stabilize");
    return *a2;
}

// ---------------------------------------------------------------------------
// Sufficient-condition checkers.

enum class ConditionId {
    regularity,
    convexity,
    slope_ge_one,
    c1_limit,
    kernel_positive,
    attainment_zero,
};

inline const char* to_string(ConditionId id) {
    switch (id) {
        case ConditionId::regularity: return "regularity";
        case ConditionId::convexity: return "convexity";
        case ConditionId::slope_ge_one: return "slope_ge_one";
        case ConditionId::c1_limit: return "c1_limit";
        case ConditionId::kernel_positive: return "kernel_positive";
        case ConditionId::attainment_zero: return "attainment_zero";
    }
    return "?";
}

struct ConditionReport {
    ConditionId condition_id;
    bool passed = false;
    std::optional<std::pair<double, double>> witness; // (t, value) where violated
    double scan_min = 0.0, scan_max = 0.0;
    std::optional<double> c1_value;
};

struct ScanGrid {
    double t_min, t_max;
    int count;
};

namespace detail {

// k_{N,p}(Phi(t)) parameterized by the radius, no inversion needed.
inline double kernel_at_radius(const ManifoldModel& m, double p, double t) {
    const double a = double(p * (m.dim - 1));
    return std::pow(m.psi(t), a) - std::pow(phi(m, t), a / m.dim);
}

} // namespace detail

// A passed report is a grid certificate on [t_min, t_max], not a proof.
inline std::vector<ConditionReport> check_conditions(const ManifoldModel& m, double p,
                                                     const ScanGrid& scan) {
    const int n_dim = m.dim;
    if (n_dim < 2) throw DimensionError("check_conditions: dimension must be >= 2");
    if (p < double(n_dim) / double(n_dim - 1))
        throw RangeError("check_conditions: kernel positivity needs p >= N/(N-1)");
    if (scan.count < 2 || !(scan.t_min > 0.0) || !(scan.t_min < scan.t_max))
        throw RangeError("check_conditions: bad scan grid");
    require_in_validity(m, scan.t_max);

    std::vector<double> grid(scan.count);
    for (int i = 0; i < scan.count; ++i)
        grid[i] = scan.t_min + (scan.t_max - scan.t_min) * i / (scan.count - 1);

    std::vector<ConditionReport> reports;
    auto fresh = [&](ConditionId id) {
        ConditionReport r;
        r.condition_id = id;
        r.scan_min = scan.t_min;
        r.scan_max = scan.t_max;
        return r;
    };

    { // psi(0) = 0, psi'(0) = 1, psi''(0) = 0
        auto r = fresh(ConditionId::regularity);
        r.passed = true;
        const double v0 = m.psi(0.0), v1 = m.psi_d1(0.0), v2 = m.psi_d2(0.0);
        if (std::abs(v0) > 1e-9) { r.passed = false; r.witness = {0.0, v0}; }
        else if (std::abs(v1 - 1.0) > 1e-9) { r.passed = false; r.witness = {0.0, v1}; }
        else if (std::abs(v2) > 1e-9) { r.passed = false; r.witness = {0.0, v2}; }
        reports.push_back(r);
    }
    { // psi'' >= 0
        auto r = fresh(ConditionId::convexity);
        r.passed = true;
        for (double t : grid) {
            const double v = m.psi_d2(t);
            if (v < -1e-12 * std::max(1.0, std::abs(m.psi(t)))) {
                r.passed = false;
                r.witness = {t, v};
                break;
            }
        }
        reports.push_back(r);
    }
    { // psi' >= 1
        auto r = fresh(ConditionId::slope_ge_one);
        r.passed = true;
        for (double t : grid) {
            const double v = m.psi_d1(t);
            if (v < 1.0 - 1e-12) {
                r.passed = false;
                r.witness = {t, v};
                break;
            }
        }
        reports.push_back(r);
    }
    { // C1 = lim psi'/psi exists and is positive
        auto r = fresh(ConditionId::c1_limit);
        try {
            const double c1 = c1_limit(m);
            r.c1_value = c1;
            r.passed = c1 > 0.0;
        } catch (const Error&) {
            r.passed = false;
        }
        reports.push_back(r);
    }
    { // k_{N,p}(Phi(t)) > 0, strictly; witness at the worst violation
        auto r = fresh(ConditionId::kernel_positive);
        r.passed = true;
        double worst_k = std::numeric_limits<double>::infinity();
        for (double t : grid) {
            const double k = detail::kernel_at_radius(m, p, t);
            const double scale = std::pow(phi(m, t), p * (n_dim - 1) / double(n_dim));
            if (k <= 1e-12 * std::max(scale, 1e-300)) {
                r.passed = false;
                if (k < worst_k) {
                    worst_k = k;
                    r.witness = {t, k};
                }
            }
        }
        reports.push_back(r);
    }
    if (n_dim >= 3) { // psi^{N-1} + K'/(2 K^{(N+2)/2}) >= 0
        auto r = fresh(ConditionId::attainment_zero);
        r.passed = true;
        const double a3 = taylor_a3(m);
        auto big_k = [&](double t) {
            const double ps = m.psi(t);
            const double ratio = m.psi_d1(t) / ps;
            return ratio * ratio + m.psi_d2(t) / ((n_dim - 2) * ps) -
                   6.0 * n_dim * n_dim * a3 / (double(n_dim) * n_dim - 4.0);
        };
        for (double t : grid) {
            if (t >= m.validity_end) break;
            const double kv = big_k(t);
            if (!(kv > 0.0)) { // expression undefined; flag it
                r.passed = false;
                r.witness = {t, kv};
                break;
            }
            const double kd = differentiate(big_k, t, 1);
            const double lhs = std::pow(m.psi(t), double(n_dim - 1)) +
                               0.5 * kd / std::pow(kv, 0.5 * (n_dim + 2));
            if (lhs < -1e-9 * std::max(1.0, std::pow(m.psi(t), double(n_dim - 1)))) {
                r.passed = false;
                r.witness = {t, lhs};
                break;
            }
        }
        reports.push_back(r);
    }
    return reports;
}

// ---------------------------------------------------------------------------
// Warp mini-grammar.

inline ManifoldModel parse_manifold(const std::string& spec, int n_dim) {
    std::string body = spec;
    std::optional<std::pair<double, double>> interval;
    if (auto at = body.find("@interval:"); at != std::string::npos) {
        std::string iv = body.substr(at + 10);
        body = body.substr(0, at);
        std::istringstream in(iv);
        double a, b;
        char comma;
        if (!(in >> a >> comma >> b) || comma != ',' || !(a < b))
            throw ParseError("bad @interval in warp spec: " + spec);
        interval = {a, b};
    }
    if (body == "sinh") {
        auto m = builtin_manifold(BuiltinManifold::hyperbolic, n_dim);
        if (interval) m.validity_end = interval->second;
        return m;
    }
    if (body == "id") {
        auto m = builtin_manifold(BuiltinManifold::euclidean, n_dim);
        if (interval) m.validity_end = interval->second;
        return m;
    }
    if (body.rfind("poly:", 0) == 0) {
        std::vector<double> coeffs;
        std::istringstream in(body.substr(5));
        std::string tok;
        while (std::getline(in, tok, ',')) {
            try {
                coeffs.push_back(std::stod(tok));
            } catch (const std::exception&) {
                throw ParseError("bad coefficient '" + tok + "' in warp spec: " + spec);
            }
        }
        if (coeffs.empty() || coeffs.size() > 5)
            throw ParseError("poly warp takes 1..5 coefficients: " + spec);
        return make_poly_manifold(coeffs, n_dim, interval, spec);
    }
    throw ParseError("unknown warp spec: " + spec);
}

} // namespace ineq
