#pragma once

// Deterministic scalar numerics backbone: adaptive Gauss-Kronrod quadrature on
// finite and semi-infinite intervals, central-difference derivatives with
// Richardson extrapolation, monotone inversion by Brent's method, and
// grid-then-refine scalar minimization. Everything here is pure and
// re-entrant; results depend only on the arguments.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <queue>
#include <vector>

#include "ineq/errors.hpp"

namespace ineq {

struct QuadratureConfig {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    int max_subdivisions = 4000;
    double tail_cut = 30.0; // adaptive region is [0, tail_cut]; doubling panels beyond
};

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    long evaluations = 0;
};

namespace detail {

// 15-point Kronrod extension of 7-point Gauss (QUADPACK dqk15 constants).
inline constexpr double kGK15Nodes[8] = {
    0.9914553711208126, 0.9491079123427585, 0.8648644233597691,
    0.7415311855993944, 0.5860872354676911, 0.4058451513773972,
    0.2077849550078985, 0.0,
};
inline constexpr double kGK15KronrodW[8] = {
    0.0229353220105292, 0.0630920926299785, 0.1047900103222502,
    0.1406532597155259, 0.1690047266392679, 0.1903505780647854,
    0.2044329400752989, 0.2094821410847278,
};
inline constexpr double kGK15GaussW[4] = {
    0.1294849661688697, 0.2797053914892767, 0.3818300505051189,
    0.4179591836734694,
};

template <class F>
void gk15_panel(F&& f, double a, double b, double& value, double& error,
                long& evaluations) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(center);
    double result_kronrod = fc * kGK15KronrodW[7];
    double result_gauss = fc * kGK15GaussW[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kGK15Nodes[j];
        const double f1 = f(center - dx);
        const double f2 = f(center + dx);
        result_kronrod += kGK15KronrodW[j] * (f1 + f2);
        if (j % 2 == 1) result_gauss += kGK15GaussW[j / 2] * (f1 + f2);
    }
    value = result_kronrod * half;
    error = std::abs((result_kronrod - result_gauss) * half);
    evaluations += 15;
}

struct Segment {
    double a, b, value, error;
    long seq;
};

struct SegmentWorse {
    bool operator()(const Segment& x, const Segment& y) const {
        if (x.error != y.error) return x.error < y.error;
        return x.seq > y.seq; // ties: refine the older segment first
    }
};

} // namespace detail

// Adaptive Gauss-Kronrod on [a, b]. Splits the segment with the largest
// error estimate until the accumulated estimate meets the tolerance.
template <class F>
QuadratureResult integrate_adaptive(F&& f, double a, double b,
                                    const QuadratureConfig& cfg = {}) {
    QuadratureResult out;
    if (a == b) return out;
    auto fw = [&](double x) {
        const double v = f(x);
        if (!std::isfinite(v)) throw NonFinite("integrand not finite at x=" + std::to_string(x));
        return v;
    };

    std::priority_queue<detail::Segment, std::vector<detail::Segment>,
                        detail::SegmentWorse> queue;
    long seq = 0;
    detail::Segment s{a, b, 0.0, 0.0, seq++};
    detail::gk15_panel(fw, a, b, s.value, s.error, out.evaluations);
    double total = s.value;
    double total_err = s.error;
    queue.push(s);

    int splits = 0;
    while (true) {
        const double target = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total));
        if (total_err <= target) break;
        if (splits >= cfg.max_subdivisions) {
            if (total_err > 100.0 * target)
                throw NonConvergent("adaptive quadrature exhausted max_subdivisions");
            break;
        }
        detail::Segment worst = queue.top();
        queue.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) { // interval at rounding limit
            total_err -= worst.error;           // accept as-is
            continue;
        }
        detail::Segment left{worst.a, mid, 0.0, 0.0, seq++};
        detail::Segment right{mid, worst.b, 0.0, 0.0, seq++};
        detail::gk15_panel(fw, left.a, left.b, left.value, left.error, out.evaluations);
        detail::gk15_panel(fw, right.a, right.b, right.value, right.error, out.evaluations);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        queue.push(left);
        queue.push(right);
        ++splits;
    }
    out.value = total;
    out.error_estimate = total_err;
    return out;
}

// Integral of f over [0, inf). The head [0, tail_cut] is integrated
// adaptively; the tail in doubling panels [T, 2T], [2T, 4T], ... until two
// consecutive panels are negligible against the running total. Suitable for
// exponential, Gaussian and integrable algebraic tails.
template <class F>
QuadratureResult integrate_semi_infinite(F&& f, const QuadratureConfig& cfg = {}) {
    const double head_end = std::max(cfg.tail_cut, 1.0);
    QuadratureResult out = integrate_adaptive(f, 0.0, head_end, cfg);

    QuadratureConfig panel_cfg = cfg;
    panel_cfg.max_subdivisions = std::max(50, cfg.max_subdivisions / 16);
    double left = head_end;
    int quiet_panels = 0;
    for (int panel = 0; panel < 64 && quiet_panels < 2; ++panel) {
        const double right = 2.0 * left;
        QuadratureResult piece = integrate_adaptive(f, left, right, panel_cfg);
        out.value += piece.value;
        out.error_estimate += piece.error_estimate;
        out.evaluations += piece.evaluations;
        const double target = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(out.value));
        if (std::abs(piece.value) <= 0.25 * target)
            ++quiet_panels;
        else
            quiet_panels = 0;
        left = right;
    }
    if (quiet_panels < 2)
        throw NonConvergent("semi-infinite tail did not become negligible");
    return out;
}

// Central finite difference of order 1..3 with one Richardson step.
// Step size balances the O(h^4) extrapolated truncation error against the
// O(eps/h^order) rounding error.
template <class F>
double differentiate(F&& f, double x, int order) {
    if (order < 1 || order > 3) throw RangeError("differentiate: order must be 1, 2 or 3");
    const double eps = std::numeric_limits<double>::epsilon();
    const double h0 = std::pow(eps, 1.0 / (order + 4)) * std::max(1.0, std::abs(x));
    auto stencil = [&](double h) -> double {
        switch (order) {
            case 1: return (f(x + h) - f(x - h)) / (2.0 * h);
            case 2: return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
            default:
                return (f(x + 2.0 * h) - 2.0 * f(x + h) + 2.0 * f(x - h) - f(x - 2.0 * h)) /
                       (2.0 * h * h * h);
        }
    };
    const double coarse = stencil(h0);
    const double fine = stencil(0.5 * h0);
    const double value = (4.0 * fine - coarse) / 3.0;
    if (!std::isfinite(value)) throw NonFinite("differentiate: non-finite sample near x");
    return value;
}

// Solve f(x) = y for strictly increasing f on [a, b] (Brent's method).
template <class F>
double invert_monotone(F&& f, double y, double a, double b) {
    if (!(a <= b)) std::swap(a, b);
    const double slack = 1e-12 * std::max(1.0, std::abs(y));
    double fa = f(a) - y;
    double fb = f(b) - y;
    if (!std::isfinite(fa) || !std::isfinite(fb))
        throw NonFinite("invert_monotone: non-finite endpoint value");
    if (fa > slack || fb < -slack)
        throw BracketError("invert_monotone: target outside [f(a), f(b)]");
    if (fa >= 0.0) return a;
    if (fb <= 0.0) return b;

    double c = a, fc = fa, d = b - a, e = d;
    for (int iter = 0; iter < 200; ++iter) {
        if (std::abs(fc) < std::abs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        const double tol = 2.0 * std::numeric_limits<double>::epsilon() * std::abs(b) + 1e-300;
        const double m = 0.5 * (c - b);
        if (std::abs(m) <= tol || fb == 0.0) return b;
        if (std::abs(e) < tol || std::abs(fa) <= std::abs(fb)) {
            d = m; e = m; // bisection
        } else {
            double p, q;
            const double s = fb / fa;
            if (a == c) { // secant
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else { // inverse quadratic
                const double qq = fa / fc;
                const double r = fb / fc;
                p = s * (2.0 * m * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q; else p = -p;
            if (2.0 * p < std::min(3.0 * m * q - std::abs(tol * q), std::abs(e * q))) {
                e = d; d = p / q;
            } else {
                d = m; e = m;
            }
        }
        a = b; fa = fb;
        b += (std::abs(d) > tol) ? d : (m > 0.0 ? tol : -tol);
        fb = f(b) - y;
        if ((fb > 0.0) == (fc > 0.0)) { c = a; fc = fa; e = d = b - a; }
    }
    return b;
}

struct MinimizeResult {
    double argmin = 0.0;
    double min = 0.0;
};

// Coarse grid scan followed by golden-section refinement around the best
// grid point. Robust when the objective is flat near its infimum.
template <class F>
MinimizeResult minimize_scalar(F&& f, double t_min, double t_max, int count) {
    if (count < 3) throw RangeError("minimize_scalar: need at least 3 grid points");
    if (!(t_min < t_max)) throw RangeError("minimize_scalar: empty grid interval");
    auto fw = [&](double x) {
        const double v = f(x);
        if (!std::isfinite(v)) throw NonFinite("minimize_scalar: non-finite sample");
        return v;
    };
    const double step = (t_max - t_min) / (count - 1);
    int best = 0;
    double best_val = fw(t_min);
    for (int i = 1; i < count; ++i) {
        const double v = fw(t_min + step * i);
        if (v < best_val) { best_val = v; best = i; }
    }
    double lo = t_min + step * std::max(0, best - 1);
    double hi = t_min + step * std::min(count - 1, best + 1);

    const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = fw(x1), f2 = fw(x2);
    for (int iter = 0; iter < 120 && (hi - lo) > 1e-12 * std::max(1.0, std::abs(lo) + std::abs(hi)); ++iter) {
        if (f1 < f2) {
            hi = x2; x2 = x1; f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = fw(x1);
        } else {
            lo = x1; x1 = x2; f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = fw(x2);
        }
    }
    MinimizeResult out;
    out.argmin = (f1 < f2) ? x1 : x2;
    out.min = std::min(f1, f2);
    if (best_val < out.min) { // grid already optimal
        out.argmin = t_min + step * best;
        out.min = best_val;
    }
    return out;
}

inline double erf(double x) { return std::erf(x); }

} // namespace ineq
