#pragma once

// Closed-form and variationally defined constants: the correction kernel
// k_{N,p} and its optimal lower-bound constant C(N,p), the shifted
// log-Sobolev constant lambda(N,p), the Euclidean log-Sobolev constant
// L_{N,p}, the sharp Sobolev constant S(N,p) (cross-checked against the
// extremal-bubble Rayleigh quotient), the Gagliardo-Nirenberg constants,
// the Gaussian normalization G on the hyperbolic space, and C_2.

#include <cmath>
#include <optional>
#include <string>

#include "ineq/errors.hpp"
#include "ineq/manifold.hpp"
#include "ineq/numerics.hpp"

namespace ineq {

struct ExponentParams {
    int N = 3;
    double p = 2.0;
    std::optional<double> alpha; // interpolation exponent (not the semigroup scale)
    std::optional<double> q;
    std::optional<double> s;
    std::optional<double> lambda;
    std::optional<double> a, b, q0;  // affine exponent family
    std::optional<double> alpha_time; // semigroup time scale
    std::optional<double> offset;     // additive offset applied to the profile
};

inline double poincare_constant(int n_dim, double p) {
    if (n_dim < 2 || !(p > 1.0)) throw RangeError("poincare_constant: need N >= 2, p > 1");
    return std::pow(double(n_dim - 1) / p, p);
}

// Sharp constant in the Euclidean L^p log-Sobolev inequality. At p = 1 the
// factor (p-1)^{p-1} is taken as 1 by continuity.
inline double log_sobolev_constant(int n_dim, double p) {
    if (n_dim < 2 || !(p >= 1.0) || !(p < double(n_dim)))
        throw RangeError("log_sobolev_constant: need 1 <= p < N");
    const double pi = std::acos(-1.0);
    const double pm1 = (p == 1.0) ? 1.0 : std::pow(p - 1.0, p - 1.0);
    const double gamma_ratio =
        std::tgamma(0.5 * n_dim + 1.0) / std::tgamma(n_dim * (p - 1.0) / p + 1.0);
    return (p / n_dim) * std::pow(pi, -0.5 * p) * pm1 * std::exp(-(p - 1.0)) *
           std::pow(gamma_ratio, p / n_dim);
}

// ---------------------------------------------------------------------------
// Correction kernel k_{N,p}(s) = psi(Phi^{-1}(s))^{p(N-1)} - s^{p(N-1)/N}.

inline double correction_kernel(const ManifoldModel& m, double p, double s) {
    if (s < 0.0) throw DomainError("correction_kernel: s must be >= 0");
    if (s == 0.0) return 0.0;
    const double r = phi_inverse(m, s);
    const double a = p * (m.dim - 1);
    return std::pow(m.psi(r), a) - std::pow(s, a / m.dim);
}

struct CorrectionBound {
    double constant = 0.0;       // C(N,p) = min(grid infimum, endpoint limits)
    double limit_zero = 0.0;     // t -> 0 limit of the quotient (+inf for p > 2)
    double limit_infinity = 0.0; // ((N-1)/N)^p C1^p
    double grid_min = 0.0;
    double argmin = 0.0;
};

// Infimum over t of (psi^{p(N-1)} - Phi^{p(N-1)/N}) / Phi^p, combined with the
// analytic endpoint limits. Requires the kernel to be positive on the grid.
inline CorrectionBound correction_lower_constant(const ManifoldModel& m, double p,
                                                 const ScanGrid& scan) {
    const int n_dim = m.dim;
    if (p < double(n_dim) / double(n_dim - 1))
        throw RangeError("correction_lower_constant: need p >= N/(N-1)");
    require_in_validity(m, scan.t_max);

    auto quotient = [&](double t) {
        return detail::kernel_at_radius(m, p, t) / std::pow(phi(m, t), p);
    };
    // kernel positivity on the grid (zero kernel is allowed; it yields C = 0)
    double min_rel = 0.0;
    for (int i = 0; i < scan.count; ++i) {
        const double t = scan.t_min + (scan.t_max - scan.t_min) * i / (scan.count - 1);
        const double k = detail::kernel_at_radius(m, p, t);
        const double scale = std::pow(phi(m, t), p * (n_dim - 1) / double(n_dim));
        min_rel = std::min(min_rel, k / std::max(scale, 1e-300));
    }
    if (min_rel < -1e-9)
        throw ConditionViolated("correction kernel is negative on the scan grid of " + m.label);

    CorrectionBound out;
    const MinimizeResult grid = minimize_scalar(quotient, scan.t_min, scan.t_max, scan.count);
    out.grid_min = grid.min;
    out.argmin = grid.argmin;

    const double a3 = taylor_a3(m);
    if (p < 2.0) out.limit_zero = 0.0;
    else if (p == 2.0) out.limit_zero = 6.0 * (n_dim - 1) * a3 / (n_dim + 2);
    else if (a3 > 0.0) out.limit_zero = std::numeric_limits<double>::infinity();
    else if (a3 < 0.0) out.limit_zero = -std::numeric_limits<double>::infinity();
    else out.limit_zero = 0.0;

    double c1 = 0.0;
    if (std::isinf(m.validity_end)) c1 = c1_limit(m);
    out.limit_infinity = std::pow(double(n_dim - 1) / n_dim * c1, p);

    out.constant = std::min({out.grid_min, out.limit_zero, out.limit_infinity});
    return out;
}

// lambda(N,p) = C(N,p) * N^p * ((p-1)/p)^p, from the one-dimensional Hardy
// inequality applied to the correction term. At p = 2 on the hyperbolic warp
// this reduces to N^2 (N-1) / (4 (N+2)).
inline double lambda_log(int n_dim, double p, const ManifoldModel& m) {
    if (!(p >= 2.0) || !(p < double(n_dim)))
        throw RangeError("lambda_log: need 2 <= p < N");
    if (m.dim != n_dim) throw DimensionError("lambda_log: dimension mismatch");
    const ScanGrid scan{0.01, std::min(20.0, 0.9 * m.validity_end), 400};
    const CorrectionBound bound = correction_lower_constant(m, p, scan);
    return bound.constant * std::pow(double(n_dim), p) * std::pow((p - 1.0) / p, p);
}

// ---------------------------------------------------------------------------
// Sharp Euclidean Sobolev constant, with the extremal-bubble cross-check.

namespace detail {

// integral over [0, inf) of exp(log_f(r)); the substitution r = e^y - 1
// turns an algebraic tail into an exponential one, and assembling the
// integrand in log space keeps huge powers of r from overflowing.
template <class F>
double integrate_log_radial(F&& log_f, const QuadratureConfig& cfg = {}) {
    auto g = [&](double y) {
        const double r = std::expm1(y);
        const double l = log_f(r) + y;
        return l < -745.0 ? 0.0 : std::exp(l);
    };
    QuadratureConfig c = cfg;
    c.rel_tol = std::min(cfg.rel_tol, 1e-11);
    return integrate_semi_infinite(g, c).value;
}

inline double log1p_pow(double r, double e) { // log(1 + r^e) for r >= 0
    if (r <= 0.0) return 0.0;
    const double l = e * std::log(r);
    return l > 36.0 ? l : std::log1p(std::exp(l));
}

// Rayleigh quotient ||grad b||_p / ||b||_{Np/(N-p)} at the extremal bubble
// b = (1 + r^{p/(p-1)})^{-(N-p)/p}.
inline double bubble_rayleigh_quotient(int n_dim, double p) {
    const double conj = p / (p - 1.0);
    const double pstar = n_dim * p / (n_dim - p);
    const double omega = unit_sphere_area(n_dim);
    const double log_grad_coef = std::log((n_dim - p) / (p - 1.0));
    const double grad_p = omega * integrate_log_radial([&](double r) {
        if (r <= 0.0) return -std::numeric_limits<double>::infinity();
        const double lr = std::log(r);
        return p * (log_grad_coef + lr / (p - 1.0) -
                    ((n_dim - p) / p + 1.0) * log1p_pow(r, conj)) +
               (n_dim - 1) * lr;
    });
    const double lp_star = omega * integrate_log_radial([&](double r) {
        if (r <= 0.0) return -std::numeric_limits<double>::infinity();
        return -(n_dim - p) / p * pstar * log1p_pow(r, conj) + (n_dim - 1) * std::log(r);
    });
    return std::pow(grad_p, 1.0 / p) / std::pow(lp_star, 1.0 / pstar);
}

} // namespace detail

// S(N,p) with ||grad u||_p >= S ||u||_{Np/(N-p)}. The closed form is
// validated against the bubble Rayleigh quotient; construction fails if the
// two disagree beyond 1e-6 relative.
inline double sharp_sobolev_constant(int n_dim, double p) {
    if (!(p > 1.0) || !(p < double(n_dim)))
        throw RangeError("sharp_sobolev_constant: need 1 < p < N");
    const double pi = std::acos(-1.0);
    const double value =
        std::sqrt(pi) * std::pow(double(n_dim), 1.0 / p) *
        std::pow((n_dim - p) / (p - 1.0), (p - 1.0) / p) *
        std::pow(std::tgamma(double(n_dim) / p) * std::tgamma(1.0 + n_dim - double(n_dim) / p) /
                     (std::tgamma(1.0 + 0.5 * n_dim) * std::tgamma(double(n_dim))),
                 1.0 / n_dim);
    const double oracle = detail::bubble_rayleigh_quotient(n_dim, p);
    if (std::abs(value - oracle) > 1e-6 * std::abs(oracle))
        throw NonConvergent("sharp_sobolev_constant: closed form and bubble quotient disagree");
    return value;
}

// ---------------------------------------------------------------------------
// Sharp Gagliardo-Nirenberg constants.

enum class GNBranch { alpha_gt_1, alpha_lt_1 };

struct GNConstant {
    double constant = 0.0;
    double theta = 0.0;
    double q = 0.0;
    double delta = 0.0;
};

inline GNConstant gn_constant(const ExponentParams& params, GNBranch branch) {
    const int n_dim = params.N;
    const double p = params.p;
    if (!(p > 1.0) || !(p < double(n_dim))) throw RangeError("gn_constant: need 1 < p < N");
    if (!params.alpha) throw RangeError("gn_constant: alpha required");
    const double alpha = *params.alpha;
    if (alpha == 1.0 || !(alpha > 0.0) || !(alpha <= double(n_dim) / (n_dim - p)))
        throw RangeError("gn_constant: need alpha in (0, N/(N-p)], alpha != 1");
    if ((alpha > 1.0) != (branch == GNBranch::alpha_gt_1))
        throw BranchMismatch("gn_constant: branch does not match alpha");

    GNConstant out;
    out.q = alpha * (p - 1.0) + 1.0;
    out.delta = n_dim * p - (n_dim - p) * out.q;
    const double pi = std::acos(-1.0);
    const double q = out.q, delta = out.delta;
    const double gamma_top = std::tgamma(0.5 * n_dim + 1.0);
    const double gamma_bot = std::tgamma(n_dim * (p - 1.0) / p + 1.0);
    if (branch == GNBranch::alpha_gt_1) {
        const double theta = n_dim * (alpha - 1.0) /
                             (alpha * (n_dim * p - (alpha * p + 1.0 - alpha) * (n_dim - p)));
        out.theta = theta;
        out.constant =
            std::pow((q - p) / (p * std::sqrt(pi)), theta) *
            std::pow(p * q / (n_dim * (q - p)), theta / p) *
            std::pow(delta / (p * q), 1.0 / (alpha * p)) *
            std::pow(std::tgamma(q * (p - 1.0) / (q - p)) * gamma_top /
                         (std::tgamma((p - 1.0) / p * delta / (q - p)) * gamma_bot),
                     theta / n_dim);
    } else {
        const double theta =
            n_dim * (1.0 - alpha) / ((alpha * p + 1.0 - alpha) * (n_dim - alpha * (n_dim - p)));
        out.theta = theta;
        out.constant =
            std::pow((p - q) / (p * std::sqrt(pi)), theta) *
            std::pow(p * q / (n_dim * (p - q)), theta / p) *
            std::pow(p * q / delta, (1.0 - theta) / (alpha * p)) *
            std::pow(std::tgamma((p - 1.0) / p * delta / (p - q) + 1.0) * gamma_top /
                         (std::tgamma(q * (p - 1.0) / (p - q) + 1.0) * gamma_bot),
                     theta / n_dim);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Gaussian measure normalization G = int e^{-rho^2/2} dV on the hyperbolic
// space, as a finite binomial/erf series.

inline double gaussian_normalization(int n_dim) {
    if (n_dim < 2) throw DimensionError("gaussian_normalization: need N >= 2");
    const double omega = detail::unit_sphere_area(n_dim);
    double sum = 0.0;
    double binom = 1.0;
    for (int k = 0; k <= n_dim - 1; ++k) {
        const double alpha_k = double(n_dim - 1 - 2 * k);
        const double term = binom * std::exp(0.5 * alpha_k * alpha_k) *
                            (1.0 + std::erf(alpha_k / std::sqrt(2.0)));
        sum += (k % 2 == 0 ? term : -term);
        binom = binom * double(n_dim - 1 - k) / double(k + 1);
    }
    const double pi = std::acos(-1.0);
    return std::sqrt(0.5 * pi) * omega / std::pow(2.0, double(n_dim - 1)) * sum;
}

inline double gaussian_normalization_upper_bound(int n_dim) {
    const double pi = std::acos(-1.0);
    return std::sqrt(2.0 * pi) / std::pow(2.0, double(n_dim - 1)) *
           std::exp(0.5 * double(n_dim - 1) * (n_dim - 1)) * detail::unit_sphere_area(n_dim);
}

// C_2 = L_{N,2}^{N/2} * sqrt(2 pi) / 2^{N-1} * e^{(N-1)^2/2} * omega_{N-1} * (N e / 4)^{N/2}
inline double gaussian_c2(int n_dim) {
    if (n_dim < 3) throw RangeError("gaussian_c2: need N >= 3");
    const double pi = std::acos(-1.0);
    const double l2 = log_sobolev_constant(n_dim, 2.0);
    return std::pow(l2, 0.5 * n_dim) * std::sqrt(2.0 * pi) / std::pow(2.0, double(n_dim - 1)) *
           std::exp(0.5 * double(n_dim - 1) * (n_dim - 1)) * detail::unit_sphere_area(n_dim) *
           std::pow(0.25 * n_dim * std::exp(1.0), 0.5 * n_dim);
}

} // namespace ineq
