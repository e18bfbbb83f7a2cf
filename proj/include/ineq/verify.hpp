#pragma once

// Table-driven evaluation of both sides of every inequality in scope.
// Each handler computes (lhs, rhs) in the orientation lhs <= rhs and the
// deficit rhs - lhs is reported without clamping. Log-type inequalities
// normalize to ||u||_p = 1 internally via the scaling identity
//   int (u/c)^p ln(u/c) = c^{-p} (int u^p ln u  -  ln c * int u^p).

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "ineq/constants.hpp"
#include "ineq/errors.hpp"
#include "ineq/gaussmeasure.hpp"
#include "ineq/heat.hpp"
#include "ineq/manifold.hpp"
#include "ineq/profiles.hpp"
#include "ineq/rearrange.hpp"
#include "ineq/report.hpp"

namespace ineq {

namespace detail {

enum class WarpGate { hyperbolic_only, euclidean_only, any_model };

inline WarpGate warp_gate(InequalityId id) {
    switch (id) {
        case InequalityId::euclidean_log_sobolev: return WarpGate::euclidean_only;
        case InequalityId::model_log_sobolev_2:
        case InequalityId::model_log_sobolev_p:
        case InequalityId::holder_entropy: return WarpGate::any_model;
        default: return WarpGate::hyperbolic_only;
    }
}

struct EntropyData {
    double entropy = 0.0;   // int u^p ln u dV at unit p-norm
    double dirichlet = 0.0; // int |grad u|^p dV at unit p-norm
    double quad_error = 0.0;
};

inline EntropyData normalized_entropy(const RadialProfile& u, const ManifoldModel& m, double p,
                                      const QuadratureConfig& cfg) {
    const QuadratureResult lp = lp_power(u, m, p, cfg);
    const QuadratureResult gp = grad_lp_power(u, m, p, cfg);
    const QuadratureResult en = entropy_integral_result(u, m, p, cfg);
    const double cp = lp.value;
    const double log_c = std::log(cp) / p;
    EntropyData out;
    out.entropy = (en.value - log_c * cp) / cp;
    out.dirichlet = gp.value / cp;
    out.quad_error = (en.error_estimate + std::abs(log_c) * lp.error_estimate +
                      gp.error_estimate) / cp;
    return out;
}

inline double log_bracket_or_throw(double bracket) {
    if (!(bracket > 0.0))
        throw LogArgumentNonpositive(
            "Dirichlet bracket is not positive; the profile is outside the admitted family");
    return bracket;
}

} // namespace detail

inline InequalityReport verify(InequalityId id, const RadialProfile& u, const ManifoldModel& m,
                               const ExponentParams& params, const QuadratureConfig& cfg = {}) {
    const int n_dim = m.dim;
    if (params.N != n_dim) throw DimensionError("verify: params.N does not match the manifold");
    switch (detail::warp_gate(id)) {
        case detail::WarpGate::hyperbolic_only:
            if (m.kind != WarpKind::hyperbolic)
                throw DomainError(std::string(to_string(id)) + " is a hyperbolic-only inequality");
            break;
        case detail::WarpGate::euclidean_only:
            if (m.kind != WarpKind::euclidean)
                throw DomainError(std::string(to_string(id)) + " is a Euclidean-only inequality");
            break;
        case detail::WarpGate::any_model: break;
    }

    InequalityReport rep;
    rep.id = id;
    rep.params = params;
    rep.manifold_label = m.label;
    rep.profile_label = u.label;
    const double p = params.p;

    switch (id) {
        case InequalityId::poincare: {
            if (!(p > 1.0)) throw RangeError("poincare: need p > 1");
            const auto lp = lp_power(u, m, p, cfg);
            const auto gp = grad_lp_power(u, m, p, cfg);
            rep.lhs = poincare_constant(n_dim, p) * lp.value;
            rep.rhs = gp.value;
            rep.quad_error = poincare_constant(n_dim, p) * lp.error_estimate + gp.error_estimate;
            break;
        }
        case InequalityId::poincare_sobolev_lambda:
        case InequalityId::poincare_sobolev_sharp: {
            double shift;
            if (id == InequalityId::poincare_sobolev_sharp) {
                if (n_dim < 4 || !(p >= 2.0 * n_dim / (n_dim - 1)) || !(p < double(n_dim)))
                    throw RangeError(
                        "poincare_sobolev_sharp: stated for N >= 4 and 2N/(N-1) <= p < N");
                shift = poincare_constant(n_dim, p);
            } else {
                if (!(p >= 2.0) || !(p < double(n_dim)))
                    throw RangeError("poincare_sobolev_lambda: need 2 <= p < N");
                shift = lambda_log(n_dim, p, m);
            }
            const double p_star = n_dim * p / (n_dim - p);
            const double sharp = sharp_sobolev_constant(n_dim, p);
            const auto lp = lp_power(u, m, p, cfg);
            const auto gp = grad_lp_power(u, m, p, cfg);
            const auto lstar = lp_power(u, m, p_star, cfg);
            rep.lhs = std::pow(sharp, p) * std::pow(lstar.value, p / p_star);
            rep.rhs = gp.value - shift * lp.value;
            rep.quad_error = gp.error_estimate + shift * lp.error_estimate +
                             std::pow(sharp, p) * lstar.error_estimate;
            break;
        }
        case InequalityId::hebey_sobolev: {
            if (n_dim < 4) throw RangeError("hebey_sobolev: the shift N(N-2)/4 needs N >= 4");
            if (p != 2.0) throw RangeError("hebey_sobolev: stated for p = 2");
            const double p_star = 2.0 * n_dim / (n_dim - 2);
            const double sharp = sharp_sobolev_constant(n_dim, 2.0);
            const auto lp = lp_power(u, m, 2.0, cfg);
            const auto gp = grad_lp_power(u, m, 2.0, cfg);
            const auto lstar = lp_power(u, m, p_star, cfg);
            rep.lhs = sharp * sharp * std::pow(lstar.value, 2.0 / p_star);
            rep.rhs = gp.value - 0.25 * n_dim * (n_dim - 2) * lp.value;
            rep.quad_error = gp.error_estimate + 0.25 * n_dim * (n_dim - 2) * lp.error_estimate +
                             sharp * sharp * lstar.error_estimate;
            break;
        }
        case InequalityId::gn_poincare: {
            if (!params.alpha) throw RangeError("gn_poincare: alpha required");
            const double alpha = *params.alpha;
            if (!(p >= 2.0) || !(p < double(n_dim)))
                throw RangeError("gn_poincare: need 2 <= p < N");
            const GNBranch branch = alpha > 1.0 ? GNBranch::alpha_gt_1 : GNBranch::alpha_lt_1;
            const GNConstant gn = gn_constant(params, branch);
            const double lambda = lambda_log(n_dim, p, m);
            const auto lp = lp_power(u, m, p, cfg);
            const auto gp = grad_lp_power(u, m, p, cfg);
            const double bracket = detail::log_bracket_or_throw(gp.value - lambda * lp.value);
            const double norm_ap = lp_norm(u, m, alpha * p, cfg);
            const double norm_q = lp_norm(u, m, gn.q, cfg);
            if (branch == GNBranch::alpha_gt_1) {
                rep.lhs = norm_ap;
                rep.rhs = gn.constant * std::pow(bracket, gn.theta / p) *
                          std::pow(norm_q, 1.0 - gn.theta);
            } else {
                rep.lhs = norm_q;
                rep.rhs = gn.constant * std::pow(bracket, gn.theta / p) *
                          std::pow(norm_ap, 1.0 - gn.theta);
            }
            rep.quad_error = gp.error_estimate + lambda * lp.error_estimate;
            break;
        }
        case InequalityId::log_sobolev:
        case InequalityId::log_sobolev_2:
        case InequalityId::model_log_sobolev_2:
        case InequalityId::model_log_sobolev_p:
        case InequalityId::euclidean_log_sobolev: {
            double shift = 0.0;
            double pp = p;
            if (id == InequalityId::log_sobolev) {
                if (!(p >= 2.0) || !(p < double(n_dim)))
                    throw RangeError("log_sobolev: need 2 <= p < N");
                shift = lambda_log(n_dim, p, m);
            } else if (id == InequalityId::log_sobolev_2) {
                if (p != 2.0) throw RangeError("log_sobolev_2: stated for p = 2");
                pp = 2.0;
                shift = double(n_dim) * n_dim * (n_dim - 1) / (4.0 * (n_dim + 2));
            } else if (id == InequalityId::model_log_sobolev_2) {
                if (p != 2.0) throw RangeError("model_log_sobolev_2: stated for p = 2");
                if (n_dim < 3) throw RangeError("model_log_sobolev_2: need N >= 3");
                pp = 2.0;
                const double a3 = taylor_a3(m);
                if (!(a3 > 0.0))
                    throw ConditionViolated("model_log_sobolev_2: needs a3 = psi'''(0)/6 > 0");
                shift = 1.5 * double(n_dim) * n_dim * (n_dim - 1) / (n_dim + 2) * a3;
            } else if (id == InequalityId::model_log_sobolev_p) {
                if (!(p > 2.0) || !(p < double(n_dim)))
                    throw RangeError("model_log_sobolev_p: need 2 < p < N");
                const ScanGrid scan{0.01, std::min(20.0, 0.9 * m.validity_end), 400};
                shift = correction_lower_constant(m, p, scan).constant *
                        std::pow(double(n_dim) / p, p);
            } else { // euclidean_log_sobolev
                if (!(p >= 1.0) || !(p < double(n_dim)))
                    throw RangeError("euclidean_log_sobolev: need 1 <= p < N");
            }
            const auto data = detail::normalized_entropy(u, m, pp, cfg);
            const double bracket = detail::log_bracket_or_throw(data.dirichlet - shift);
            rep.lhs = data.entropy;
            rep.rhs = double(n_dim) / (pp * pp) *
                      std::log(log_sobolev_constant(n_dim, pp) * bracket);
            rep.quad_error = data.quad_error;
            rep.normalized = true;
            break;
        }
        case InequalityId::holder_entropy: {
            if (!params.s) throw RangeError("holder_entropy: s required");
            const double s = *params.s;
            if (!(p >= 1.0) || !(p < s)) throw RangeError("holder_entropy: need 1 <= p < s");
            const auto lp = lp_power(u, m, p, cfg);
            const auto en = entropy_integral_result(u, m, p, cfg);
            const double norm_p = std::pow(lp.value, 1.0 / p);
            const double norm_s = lp_norm(u, m, s, cfg);
            rep.lhs = en.value - std::log(norm_p) * lp.value;
            rep.rhs = s / (s - p) * lp.value * std::log(norm_s / norm_p);
            rep.quad_error = en.error_estimate + (1.0 + std::abs(std::log(norm_p))) *
                                                     lp.error_estimate;
            break;
        }
        case InequalityId::gaussian_log_sobolev:
        case InequalityId::gaussian_poincare_general:
        case InequalityId::gaussian_poincare: {
            const GaussianMeasure gm = gaussian_measure(n_dim);
            const auto mass = dm_integral_result(gm, [&](double rho) {
                const double v = u.value(rho);
                return v * v;
            }, cfg);
            const auto dirichlet = dirichlet_dm_result(gm, u, cfg);
            const auto potential = potential_term_result(gm, u, cfg);
            if (id == InequalityId::gaussian_log_sobolev) {
                const auto ent = dm_integral_result(gm, [&](double rho) {
                    const double v = u.value(rho) * u.value(rho);
                    return v > 0.0 ? v * std::log(v) : 0.0;
                }, cfg);
                rep.lhs = ent.value - std::log(mass.value) * mass.value;
                rep.rhs = 2.0 * dirichlet.value + potential.value;
                rep.quad_error = ent.error_estimate + mass.error_estimate +
                                 2.0 * dirichlet.error_estimate + potential.error_estimate;
            } else {
                const double pg = (id == InequalityId::gaussian_poincare) ? 1.0 : p;
                if (id == InequalityId::gaussian_poincare) rep.params.p = 1.0;
                if (!(pg > 0.0) || !(pg <= 2.0))
                    throw RangeError("gaussian_poincare_general: need 0 < p <= 2");
                const auto lower = dm_integral_result(gm, [&](double rho) {
                    return std::pow(std::abs(u.value(rho)), pg);
                }, cfg);
                const double factor = (2.0 - pg) / pg;
                rep.lhs = mass.value - std::pow(lower.value, 2.0 / pg);
                rep.rhs = factor * (2.0 * dirichlet.value + potential.value);
                rep.quad_error = mass.error_estimate + lower.error_estimate +
                                 factor * (2.0 * dirichlet.error_estimate +
                                           potential.error_estimate);
            }
            break;
        }
        case InequalityId::beckner_family:
        case InequalityId::beckner_lambda: {
            double a, growth; // exponent family slope and the gradient factor
            double exponent;  // the inner |u| power 2/(a q + b)
            if (id == InequalityId::beckner_family) {
                if (!params.a || !params.b || !params.q || !params.q0)
                    throw RangeError("beckner_family: needs a, b, q, q0");
                a = *params.a;
                const double b = *params.b, q = *params.q, q0 = *params.q0;
                if (!(a > 0.0) || !(q0 > 0.0) || !(q >= q0))
                    throw RangeError("beckner_family: need a > 0, q >= q0 > 0");
                if (std::abs(a * q0 + b - 1.0) > 1e-12)
                    throw RangeError("beckner_family: the constraint a*q0 + b = 1 is structural");
                exponent = 2.0 / (a * q + b);
                growth = 2.0 * a * (q - q0);
            } else {
                if (!params.lambda) throw RangeError("beckner_lambda: lambda required");
                const double lambda = *params.lambda;
                if (!(lambda > 0.0)) throw RangeError("beckner_lambda: need lambda > 0");
                exponent = 4.0 / (lambda + 2.0);
                growth = lambda;
            }
            const GaussianMeasure gm = gaussian_measure(n_dim);
            const auto mass = dm_integral_result(gm, [&](double rho) {
                const double v = u.value(rho);
                return v * v;
            }, cfg);
            const auto lower = dm_integral_result(gm, [&](double rho) {
                return std::pow(std::abs(u.value(rho)), exponent);
            }, cfg);
            const auto dirichlet = dirichlet_dm_result(gm, u, cfg);
            const auto potential = potential_term_result(gm, u, cfg);
            rep.lhs = mass.value - std::pow(lower.value, 2.0 / exponent);
            rep.rhs = growth * dirichlet.value + 0.5 * growth * potential.value;
            rep.quad_error = mass.error_estimate + lower.error_estimate +
                             growth * (dirichlet.error_estimate + 0.5 * potential.error_estimate);
            break;
        }
        case InequalityId::extended_beckner: {
            if (!params.q) throw RangeError("extended_beckner: q required");
            HeatKernelSpec spec{n_dim, params.alpha_time.value_or(1.0),
                                params.alpha_time.value_or(1.0)};
            const RadialProfile f =
                params.offset && *params.offset != 0.0 ? offset_profile(u, *params.offset) : u;
            rep = verify_extended_beckner(f, spec, p, *params.q, cfg);
            rep.params = params;
            rep.params.alpha_time = spec.alpha;
            return rep;
        }
        case InequalityId::gamma_log_sobolev: {
            HeatKernelSpec spec{n_dim, params.alpha_time.value_or(1.0),
                                params.alpha_time.value_or(1.0)};
            const RadialProfile f =
                params.offset && *params.offset != 0.0 ? offset_profile(u, *params.offset) : u;
            rep = verify_gamma_log_sobolev(f, spec, cfg);
            rep.params = params;
            rep.params.alpha_time = spec.alpha;
            return rep;
        }
    }
    rep.finish();
    return rep;
}

// Convenience wrapper with the spec's dedicated signature.
inline InequalityReport holder_entropy_bound(const RadialProfile& u, const ManifoldModel& m,
                                             double p, double s,
                                             const QuadratureConfig& cfg = {}) {
    ExponentParams params;
    params.N = m.dim;
    params.p = p;
    params.s = s;
    return verify(InequalityId::holder_entropy, u, m, params, cfg);
}

// ---------------------------------------------------------------------------
// Suites: deterministic cross product with per-item skip capture.

struct SuiteSkip {
    InequalityId id;
    std::string profile_label;
    ExponentParams params;
    std::string reason;
};

struct SuiteResult {
    std::vector<InequalityReport> reports;
    std::vector<SuiteSkip> skipped;
};

inline SuiteResult verify_suite(const std::vector<InequalityId>& ids,
                                const std::vector<RadialProfile>& profiles,
                                const ManifoldModel& m,
                                const std::vector<ExponentParams>& params_grid,
                                const QuadratureConfig& cfg = {}) {
    SuiteResult out;
    for (InequalityId id : ids)
        for (const RadialProfile& u : profiles)
            for (const ExponentParams& params : params_grid) {
                try {
                    out.reports.push_back(verify(id, u, m, params, cfg));
                } catch (const Error& e) {
                    out.skipped.push_back({id, u.label, params, e.what()});
                }
            }
    return out;
}

} // namespace ineq
